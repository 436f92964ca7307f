#include "radii/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "radii/delta.hpp"
#include "radii/error.hpp"
#include "radii/linalg.hpp"

namespace radii {

namespace {

double parse_number(std::string_view s, std::string_view field) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw ParseError(std::string(field) + ": malformed number '" + std::string(s) + "'");
    }
    return v;
}

// grid points like 0.1 + 2*0.1 print as 0.30000000000000004 otherwise
double snap(double v) { return std::round(v * 1e12) / 1e12; }

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

std::vector<double> parse_range(std::string_view spec, std::string_view field) {
    std::vector<double> out;
    if (spec.find(':') != std::string_view::npos) {
        const auto c1 = spec.find(':');
        const auto c2 = spec.find(':', c1 + 1);
        if (c2 == std::string_view::npos || spec.find(':', c2 + 1) != std::string_view::npos) {
            throw ParseError(std::string(field) + ": range must be start:stop:step, got '" + std::string(spec) + "'");
        }
        const double a = parse_number(spec.substr(0, c1), field);
        const double b = parse_number(spec.substr(c1 + 1, c2 - c1 - 1), field);
        const double step = parse_number(spec.substr(c2 + 1), field);
        if (!(step > 0.0) || b < a) {
            throw ParseError(std::string(field) + ": need step > 0 and stop >= start in '" + std::string(spec) + "'");
        }
        const double count = std::floor((b - a) / step + 1e-9) + 1.0;
        if (count > 1e6) throw ParseError(std::string(field) + ": range has too many points");
        for (int k = 0; k < static_cast<int>(count); ++k) out.push_back(snap(a + k * step));
        return out;
    }
    std::size_t pos = 0;
    while (true) {
        const auto comma = spec.find(',', pos);
        out.push_back(parse_number(spec.substr(pos, comma == std::string_view::npos ? spec.npos : comma - pos), field));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::vector<SweepRecord> sweep(const ComplexMatrix& x, const std::vector<double>& rhos,
                               const std::vector<double>& nus, const AngleSolverConfig& solver) {
    std::vector<double> rs(rhos), ns(nus);
    std::sort(rs.begin(), rs.end());
    std::sort(ns.begin(), ns.end());
    const double norm = spectral_norm(x);
    const double w = numerical_radius(x, solver);
    std::vector<SweepRecord> rows;
    for (double rho : rs) {
        const double wr = operator_radius_rho(x, rho, solver);
        for (double nu : ns) {
            rows.push_back({rho, nu, delta(x, make_params(rho, nu), solver), norm, w, wr});
        }
    }
    return rows;
}

std::string sweep_to_csv(const std::vector<SweepRecord>& rows) {
    std::string out = "rho,nu,delta,spectral_norm,numerical_radius,w_rho\n";
    for (const auto& r : rows) {
        out += fmt12(r.rho) + "," + fmt12(r.nu) + "," + fmt12(r.delta) + "," + fmt12(r.spectral_norm) + "," +
               fmt12(r.numerical_radius) + "," + fmt12(r.w_rho) + "\n";
    }
    return out;
}

}  // namespace radii
