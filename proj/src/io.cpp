#include "radii/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "radii/error.hpp"

namespace radii {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::int64_t read_extent(const nlohmann::json& doc, const char* field) {
    if (!doc.contains(field)) throw ParseError(std::string("MatrixFile: missing field '") + field + "'");
    const auto& v = doc.at(field);
    if (!v.is_number_integer() && !v.is_number_unsigned()) {
        throw ParseError(std::string("MatrixFile: field '") + field + "' must be an integer");
    }
    const auto n = v.get<std::int64_t>();
    if (n < 0) throw ParseError(std::string("MatrixFile: field '") + field + "' must be non-negative");
    return n;
}

}  // namespace

std::string matrix_to_json(const ComplexMatrix& x) {
    std::string out = "{\"rows\": " + std::to_string(x.rows()) + ", \"cols\": " + std::to_string(x.cols()) +
                      ", \"data\": [";
    for (Index i = 0; i < x.rows(); ++i) {
        out += i ? ",\n  [" : "\n  [";
        for (Index j = 0; j < x.cols(); ++j) {
            const Complex z = x.mat()(i, j);
            if (j) out += ", ";
            out += "[" + fmt17(z.real()) + ", " + fmt17(z.imag()) + "]";
        }
        out += "]";
    }
    out += x.rows() ? "\n]}\n" : "]}\n";
    return out;
}

ComplexMatrix matrix_from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("MatrixFile: invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("MatrixFile: top level must be an object");
    const auto rows = read_extent(doc, "rows");
    const auto cols = read_extent(doc, "cols");
    if (!doc.contains("data") || !doc["data"].is_array()) throw ParseError("MatrixFile: field 'data' must be an array");
    const auto& data = doc["data"];
    if (static_cast<std::int64_t>(data.size()) != rows) {
        throw ParseError("MatrixFile: field 'data' has " + std::to_string(data.size()) + " rows, 'rows' says " +
                         std::to_string(rows));
    }
    Eigen::MatrixXcd m(rows, cols);
    for (std::int64_t i = 0; i < rows; ++i) {
        const auto& row = data[i];
        const std::string where = "data[" + std::to_string(i) + "]";
        if (!row.is_array() || static_cast<std::int64_t>(row.size()) != cols) {
            throw ParseError("MatrixFile: field '" + where + "' must hold " + std::to_string(cols) + " entries");
        }
        for (std::int64_t j = 0; j < cols; ++j) {
            const auto& e = row[j];
            const std::string at = where + "[" + std::to_string(j) + "]";
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
                throw ParseError("MatrixFile: field '" + at + "' must be [re, im]");
            }
            const double re = e[0].get<double>();
            const double im = e[1].get<double>();
            if (!std::isfinite(re) || !std::isfinite(im)) {
                throw ParseError("MatrixFile: field '" + at + "' is not finite");
            }
            m(i, j) = Complex(re, im);
        }
    }
    return ComplexMatrix(std::move(m));
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ComplexMatrix read_matrix_file(const std::string& path) { return matrix_from_json(read_text_file(path)); }

void write_text_atomic(const std::string& path, std::string_view content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ParseError("cannot write '" + tmp.string() + "'");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw ParseError("write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw ParseError("cannot rename into '" + path + "'");
    }
}

}  // namespace radii
