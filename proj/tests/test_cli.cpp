#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <map>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "oracles.hpp"
#include "radii/cli.hpp"
#include "radii/error.hpp"
#include "radii/io.hpp"
#include "radii/sweep.hpp"

using namespace radii;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    args.insert(args.begin(), "radii");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() / ("radii_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name, const std::string& content = "") const {
        const auto p = path / name;
        if (!content.empty()) std::ofstream(p) << content;
        return p.string();
    }
};

const char* kNilJson = R"({"rows": 2, "cols": 2, "data": [[[0, 0], [1, 0]], [[0, 0], [0, 0]]]})";

}  // namespace

TEST_CASE("matrix file round trip is bit-exact") {
    std::mt19937_64 g(3);
    for (int n : {1, 2, 5}) {
        Eigen::MatrixXcd m = oracle::ginibre(g, n);
        m(0, 0) = Complex(1.0 / 3.0, -0.0);
        m(n - 1, 0) = Complex(1e-300, 6.02214076e23);
        const ComplexMatrix x(m);
        const ComplexMatrix back = matrix_from_json(matrix_to_json(x));
        REQUIRE(back.rows() == n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                CHECK(back(i, j).real() == x(i, j).real());
                CHECK(back(i, j).imag() == x(i, j).imag());
            }
    }
}

TEST_CASE("matrix file errors name the field") {
    CHECK_THROWS_WITH_AS(matrix_from_json("{"), doctest::Contains("invalid JSON"), ParseError);
    CHECK_THROWS_WITH_AS(matrix_from_json(R"({"cols": 1, "data": [[[0,0]]]})"), doctest::Contains("'rows'"),
                         ParseError);
    CHECK_THROWS_WITH_AS(matrix_from_json(R"({"rows": 2, "cols": 1, "data": [[[0,0]]]})"),
                         doctest::Contains("'data'"), ParseError);
    CHECK_THROWS_WITH_AS(matrix_from_json(R"({"rows": 1, "cols": 1, "data": [[[0]]]})"),
                         doctest::Contains("data[0][0]"), ParseError);
    CHECK_THROWS_WITH_AS(matrix_from_json(R"({"rows": 1, "cols": 2, "data": [[[0,0]]]})"),
                         doctest::Contains("data[0]"), ParseError);
    CHECK_THROWS_WITH_AS(matrix_from_json(R"({"rows": 1.5, "cols": 1, "data": [[[0,0]]]})"),
                         doctest::Contains("'rows'"), ParseError);
    CHECK_THROWS_AS(matrix_from_json(R"({"rows": 1, "cols": 1, "data": [[["a",0]]]})"), ParseError);
}

TEST_CASE("range specs") {
    CHECK(parse_range("0.1:0.5:0.1", "--rho-grid") == std::vector<double>{0.1, 0.2, 0.3, 0.4, 0.5});
    CHECK(parse_range("0:1:0.25", "--nu-grid") == std::vector<double>{0, 0.25, 0.5, 0.75, 1});
    CHECK(parse_range("0.5", "--rho-grid") == std::vector<double>{0.5});
    CHECK(parse_range("1,0.5,2", "--rho-grid") == std::vector<double>{1, 0.5, 2});
    CHECK_THROWS_WITH_AS(parse_range("0.1:0.5", "--rho-grid"), doctest::Contains("--rho-grid"), ParseError);
    CHECK_THROWS_AS(parse_range("0.1:0.5:0", "--rho-grid"), ParseError);
    CHECK_THROWS_AS(parse_range("a:b:c", "--rho-grid"), ParseError);
    CHECK_THROWS_AS(parse_range("1,,2", "--rho-grid"), ParseError);
    CHECK_THROWS_AS(parse_range("", "--rho-grid"), ParseError);
}

TEST_CASE("compute") {
    TempDir dir;
    const std::string nil = dir.file("nil.json", kNilJson);
    auto r = cli({"compute", "--input", nil, "--functional", "w"});
    CHECK(r.code == 0);
    CHECK(r.out == "0.500000000000\n");
    r = cli({"compute", "--input", nil, "--functional", "wrho", "--rho", "0.5"});
    CHECK(r.out == "2.000000000000\n");
    r = cli({"compute", "--input", nil, "--functional", "delta", "--rho", "1", "--nu", "0"});
    CHECK(r.out == "2.000000000000\n");
    r = cli({"compute", "--input", nil, "--functional", "norm"});
    CHECK(r.out == "1.000000000000\n");
    r = cli({"compute", "--input", nil, "--functional", "crawford"});
    CHECK(r.out == "0.000000000000\n");
    r = cli({"compute", "--input", nil, "--functional", "spectral-radius"});
    CHECK(r.out == "0.000000000000\n");

    r = cli({"compute", "--input", nil, "--functional", "aluthge"});
    CHECK(r.code == 0);
    CHECK(matrix_from_json(r.out).frobenius_norm() == 0.0);
    const std::string out = dir.file("h.json");
    r = cli({"compute", "--input", nil, "--functional", "blocks", "--rho", "1", "--nu", "0", "--out", out});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    const ComplexMatrix h = read_matrix_file(out);
    CHECK(h.rows() == 4);
    CHECK(h(0, 3) == Complex(2.0, 0.0));  // alpha X at rho = 1
    CHECK(h(3, 0) == Complex(2.0, 0.0));  // alpha mu X*
    CHECK(h(2, 1) == Complex(0.0, 0.0));
}

TEST_CASE("compute input errors exit 2") {
    TempDir dir;
    const std::string nil = dir.file("nil.json", kNilJson);
    const std::string rect = dir.file("rect.json", R"({"rows": 1, "cols": 2, "data": [[[1,0],[2,0]]]})");
    const std::string bad = dir.file("bad.json", R"({"rows": 1, "cols": 1, "data": [[[1]]]})");
    auto r = cli({"compute", "--input", nil, "--functional", "delta", "--rho", "3", "--nu", "0"});
    CHECK(r.code == 2);
    CHECK(r.err.find("rho out of range (0,2]") != std::string::npos);
    r = cli({"compute", "--input", nil, "--functional", "delta", "--rho", "0.00001", "--nu", "0"});
    CHECK(r.code == 2);
    CHECK(r.err.find("1e-4") != std::string::npos);
    r = cli({"compute", "--input", nil, "--functional", "delta", "--rho", "1", "--nu", "2"});
    CHECK(r.code == 2);
    CHECK(r.err.find("nu out of range") != std::string::npos);
    r = cli({"compute", "--input", nil, "--functional", "delta"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--rho") != std::string::npos);
    r = cli({"compute", "--input", nil, "--functional", "bogus"});
    CHECK(r.code == 2);
    r = cli({"compute", "--input", rect, "--functional", "w"});
    CHECK(r.code == 2);
    CHECK(r.err.find("square") != std::string::npos);
    r = cli({"compute", "--input", bad, "--functional", "w"});
    CHECK(r.code == 2);
    CHECK(r.err.find("data[0][0]") != std::string::npos);
    r = cli({"compute", "--input", dir.file("missing.json"), "--functional", "w"});
    CHECK(r.code == 2);
    r = cli({"compute", "--input", nil, "--functional", "w", "--coarse-points", "2"});
    CHECK(r.code == 2);
    r = cli({"frobnicate"});
    CHECK(r.code == 2);
    r = cli({});
    CHECK(r.code == 2);
    r = cli({"compute", "--nonsense"});
    CHECK(r.code == 2);
    CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("check") {
    TempDir dir;
    const std::string nil = dir.file("nil.json", kNilJson);
    auto r = cli({"check", "--rho", "3"});
    CHECK(r.code == 2);
    CHECK(r.err.find("rho out of range (0,2]") != std::string::npos);
    CHECK(r.err.find('\n') == r.err.size() - 1);  // one line

    r = cli({"check", "--input", nil, "--only", "C2.7.b"});
    CHECK(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    const auto& rec = doc["checks"][10];
    CHECK(rec["id"] == "C2.7.b");
    CHECK(rec["count"] == 1);
    CHECK(std::abs(rec["min_slack"].get<double>()) <= 1e-12);

    r = cli({"check"});
    CHECK(r.code == 2);
    r = cli({"check", "--input", nil, "--ensemble"});
    CHECK(r.code == 2);
    r = cli({"check", "--input", nil, "--only", "T9"});
    CHECK(r.code == 2);
    r = cli({"check", "--ensemble", "--families", "unknown"});
    CHECK(r.code == 2);
    r = cli({"check", "--ensemble", "--dims", "1"});
    CHECK(r.code == 2);
    r = cli({"check", "--ensemble", "--seed", "-3"});
    CHECK(r.code == 2);
    r = cli({"check", "--ensemble", "--rho-grid", "0.00001,1"});
    CHECK(r.code == 2);

    // a violation: tolerances far below roundoff on an identity
    r = cli({"check", "--ensemble", "--families", "ginibre", "--dims", "3", "--samples", "2", "--only", "T2.5.iv",
             "--tol-ineq", "1e-300"});
    CHECK(r.code == 1);
    CHECK(nlohmann::json::parse(r.out)["overall_pass"] == false);
}

TEST_CASE("check writes the report atomically to --out") {
    TempDir dir;
    const std::string out = dir.file("report.json");
    const std::vector<std::string> args = {"check", "--ensemble", "--families", "normal,psd", "--dims", "2,3",
                                           "--samples", "2", "--rho-grid", "0.5,2", "--nu-grid", "0:1:0.5",
                                           "--seed", "7", "--out", out};
    auto r = cli(args);
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK_FALSE(fs::exists(out + ".tmp"));
    const std::string first = read_text_file(out);
    const auto doc = nlohmann::json::parse(first);
    CHECK(doc["config"]["nu_grid"].size() == 3);
    CHECK(doc["config"]["master_seed"] == 7);
    CHECK(cli(args).code == 0);
    CHECK(read_text_file(out) == first);
}

TEST_CASE("search") {
    auto r = cli({"search", "--families", "nilpotent2", "--only", "C2.7.b", "--samples", "5", "--worst", "4"});
    CHECK(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    const auto& rec = doc["checks"][10];
    REQUIRE(rec["worst_witnesses"].size() == 4);
    CHECK(std::abs(rec["worst_witnesses"][0]["slack"].get<double>()) <= 1e-7);
    const auto a = cli({"search", "--seed", "7", "--samples", "1", "--dims", "2", "--only", "T2.6,C2.9"});
    const auto b = cli({"search", "--seed", "7", "--samples", "1", "--dims", "2", "--only", "T2.6,C2.9"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(cli({"search", "--families", "unknown"}).code == 2);
    CHECK(cli({"search", "--worst", "-1"}).code == 2);
}

TEST_CASE("sweep") {
    TempDir dir;
    std::mt19937_64 g(11);
    const std::string in = dir.file("x.json", matrix_to_json(ComplexMatrix(oracle::ginibre(g, 3))));
    const std::string out = dir.file("sweep.csv");
    auto r = cli({"sweep", "--input", in, "--rho-grid", "0.25:1.75:0.25", "--nu-grid", "0:1:0.25", "--out", out});
    REQUIRE(r.code == 0);
    std::ifstream f(out);
    std::string line;
    std::getline(f, line);
    CHECK(line == "rho,nu,delta,spectral_norm,numerical_radius,w_rho");
    std::map<std::pair<double, double>, double> delta;
    std::vector<std::pair<double, double>> order;
    while (std::getline(f, line)) {
        std::stringstream ss(line);
        std::vector<double> v;
        std::string cell;
        while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
        REQUIRE(v.size() == 6);
        const double rho = v[0], nu = v[1], d = v[2], norm = v[3], wr = v[5];
        order.emplace_back(rho, nu);
        delta[{rho, nu}] = d;
        CHECK(d >= 0.0);
        if (nu == 0.5) CHECK(std::abs(d - wr) <= 1e-8 * (1.0 + wr));
        if (rho == 1.0) CHECK(std::abs(d - (1.0 + std::abs(1.0 - 2.0 * nu)) * norm) <= 1e-8 * (1.0 + norm));
    }
    CHECK(order.size() == 7 * 5);
    CHECK(std::is_sorted(order.begin(), order.end()));
    for (const auto& [key, d] : delta) {
        const auto mirror = delta.find({std::round((2.0 - key.first) * 1e12) / 1e12, key.second});
        REQUIRE(mirror != delta.end());
        // 12 printed digits bound the agreement
        CHECK(std::abs((2.0 - key.first) * mirror->second - key.first * d) <= 1e-9 * (1.0 + key.first * d));
    }

    r = cli({"sweep", "--input", in, "--rho-grid", "0.5:0.1:0.1", "--nu-grid", "0.5"});
    CHECK(r.code == 2);
    r = cli({"sweep", "--input", in, "--rho-grid", "0.00001:1:0.5", "--nu-grid", "0.5"});
    CHECK(r.code == 2);
    r = cli({"sweep", "--input", in, "--rho-grid", "1:3:1", "--nu-grid", "0.5"});
    CHECK(r.code == 2);
    r = cli({"sweep", "--input", in, "--rho-grid", "1", "--nu-grid", "x"});
    CHECK(r.code == 2);
    r = cli({"sweep", "--input", in, "--nu-grid", "0.5"});
    CHECK(r.code == 2);
}
