#include "radii/cli.hpp"

#include <charconv>
#include <cstdio>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "radii/delta.hpp"
#include "radii/error.hpp"
#include "radii/io.hpp"
#include "radii/linalg.hpp"
#include "radii/numerical_range.hpp"
#include "radii/suite.hpp"
#include "radii/sweep.hpp"

namespace radii {

namespace {

constexpr double kRhoFloor = 1e-4;

enum Exit { kPass = 0, kViolation = 1, kInputError = 2 };

struct Options {
    std::string input, out, functional;
    std::optional<double> rho, nu;
    std::string rho_grid, nu_grid, families, dims, only, seed;
    std::optional<int> samples, worst, coarse_points;
    std::optional<double> tol_eq, tol_ineq;
    bool ensemble = false;
};

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) parts.push_back(item);
    }
    return parts;
}

void check_rho(double rho, const char* field) {
    if (!(rho > 0.0 && rho <= 2.0)) {
        std::ostringstream m;
        m << field << ": rho out of range (0,2]: got " << rho;
        throw DomainError(m.str());
    }
    if (rho < kRhoFloor) {
        std::ostringstream m;
        m << field << ": rho below the CLI floor 1e-4: got " << rho;
        throw DomainError(m.str());
    }
}

void check_nu(double nu, const char* field) {
    if (!(nu >= 0.0 && nu <= 1.0)) {
        std::ostringstream m;
        m << field << ": nu out of range [0,1]: got " << nu;
        throw DomainError(m.str());
    }
}

std::uint64_t parse_seed(const std::string& s) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        throw ParseError("--seed: expected an unsigned 64-bit integer, got '" + s + "'");
    }
    return v;
}

int parse_int(const std::string& s, const char* field) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        throw ParseError(std::string(field) + ": expected an integer, got '" + s + "'");
    }
    return v;
}

ToleranceConfig tolerances(const Options& o) {
    ToleranceConfig t;
    if (o.tol_eq) t.rel_eq = *o.tol_eq;
    if (o.tol_ineq) t.rel_ineq = *o.tol_ineq;
    t.validate();
    return t;
}

AngleSolverConfig solver(const Options& o) {
    AngleSolverConfig s;
    if (o.coarse_points) s.coarse_points = *o.coarse_points;
    s.validate();
    return s;
}

EnsembleConfig ensemble_config(const Options& o) {
    EnsembleConfig c;
    if (o.rho) {
        check_rho(*o.rho, "--rho");
        c.rho_grid = {*o.rho};
    }
    if (o.nu) {
        check_nu(*o.nu, "--nu");
        c.nu_grid = {*o.nu};
    }
    if (!o.rho_grid.empty()) {
        c.rho_grid = parse_range(o.rho_grid, "--rho-grid");
        for (double r : c.rho_grid) check_rho(r, "--rho-grid");
    }
    if (!o.nu_grid.empty()) {
        c.nu_grid = parse_range(o.nu_grid, "--nu-grid");
        for (double n : c.nu_grid) check_nu(n, "--nu-grid");
    }
    if (!o.families.empty()) {
        c.families.clear();
        for (const auto& f : split(o.families)) c.families.push_back(parse_family(f));
        if (c.families.empty()) throw ParseError("--families: empty list");
    }
    if (!o.dims.empty()) {
        c.dims.clear();
        for (const auto& d : split(o.dims)) c.dims.push_back(parse_int(d, "--dims"));
        if (c.dims.empty()) throw ParseError("--dims: empty list");
    }
    if (!o.only.empty()) {
        for (const auto& id : split(o.only)) c.only.push_back(parse_check_id(id));
    }
    if (o.samples) c.samples_per_cell = *o.samples;
    if (o.worst) c.worst_k = *o.worst;
    if (!o.seed.empty()) c.master_seed = parse_seed(o.seed);
    c.tol = tolerances(o);
    c.solver = solver(o);
    c.validate();
    return c;
}

std::string fixed12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12f", v);
    return buf;
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
    if (o.out.empty()) {
        out << text;
    } else {
        write_text_atomic(o.out, text);
    }
}

ComplexMatrix load_square(const Options& o, const char* cmd) {
    if (o.input.empty()) throw ParseError(std::string(cmd) + ": --input PATH is required");
    ComplexMatrix x = read_matrix_file(o.input);
    if (!x.is_square() || x.empty()) {
        throw DimensionError(std::string(cmd) + ": --input must hold a non-empty square matrix, got " +
                             std::to_string(x.rows()) + "x" + std::to_string(x.cols()));
    }
    return x;
}

int cmd_compute(const Options& o, std::ostream& out) {
    const std::string& f = o.functional;
    const bool needs_rho = f == "delta" || f == "wrho" || f == "blocks";
    const bool needs_nu = f == "delta" || f == "blocks";
    if (f.empty()) throw ParseError("compute: --functional is required");
    if (needs_rho && !o.rho) throw ParseError("compute: --rho is required for " + f);
    if (needs_nu && !o.nu) throw ParseError("compute: --nu is required for " + f);
    if (o.rho) check_rho(*o.rho, "--rho");
    if (o.nu) check_nu(*o.nu, "--nu");
    const ToleranceConfig tol = tolerances(o);
    const AngleSolverConfig sol = solver(o);
    const ComplexMatrix x = load_square(o, "compute");

    std::optional<double> value;
    if (f == "delta") {
        value = delta(x, make_params(*o.rho, *o.nu), sol);
    } else if (f == "wrho") {
        value = operator_radius_rho(x, *o.rho, sol);
    } else if (f == "w") {
        value = numerical_radius(x, sol);
    } else if (f == "norm") {
        value = spectral_norm(x);
    } else if (f == "crawford") {
        value = crawford_number(x, sol);
    } else if (f == "spectral-radius") {
        value = spectral_radius(x);
    } else if (f == "aluthge") {
        emit(o, matrix_to_json(aluthge(x, tol)), out);
        return kPass;
    } else if (f == "blocks") {
        emit(o, matrix_to_json(build_h(x, make_params(*o.rho, *o.nu))), out);
        return kPass;
    } else {
        throw ParseError("--functional: unknown functional '" + f +
                         "' (delta, wrho, w, norm, crawford, spectral-radius, aluthge, blocks)");
    }
    emit(o, fixed12(*value) + "\n", out);
    return kPass;
}

int report(const Options& o, const SuiteReport& r, std::ostream& out, std::ostream& err) {
    emit(o, report_to_json(r), out);
    std::size_t failing = 0;
    for (const auto& c : r.checks) failing += c.pass ? 0 : 1;
    err << std::fixed << std::setprecision(2) << "radii: " << r.checks.size() - failing << "/" << r.checks.size()
        << " checks pass in " << r.elapsed_seconds << " s\n";
    return r.pass ? kPass : kViolation;
}

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
    const EnsembleConfig cfg = ensemble_config(o);
    if (o.ensemble == !o.input.empty()) {
        throw ParseError("check: give exactly one of --input PATH or --ensemble");
    }
    if (o.ensemble) return report(o, run_suite(cfg), out, err);
    return report(o, run_on_matrix(load_square(o, "check"), cfg), out, err);
}

int cmd_search(const Options& o, std::ostream& out, std::ostream& err) {
    return report(o, search_counterexamples(ensemble_config(o)), out, err);
}

int cmd_sweep(const Options& o, std::ostream& out) {
    if (o.rho_grid.empty()) throw ParseError("sweep: --rho-grid SPEC is required");
    if (o.nu_grid.empty()) throw ParseError("sweep: --nu-grid SPEC is required");
    const auto rhos = parse_range(o.rho_grid, "--rho-grid");
    const auto nus = parse_range(o.nu_grid, "--nu-grid");
    for (double r : rhos) check_rho(r, "--rho-grid");
    for (double n : nus) check_nu(n, "--nu-grid");
    const AngleSolverConfig sol = solver(o);
    const ComplexMatrix x = load_square(o, "sweep");
    emit(o, sweep_to_csv(sweep(x, rhos, nus, sol)), out);
    return kPass;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Generalized operator radii and inequality checks for complex matrices", "radii"};
    app.require_subcommand(1);
    Options o;

    auto* compute = app.add_subcommand("compute", "Evaluate one functional on a matrix file");
    auto* check = app.add_subcommand("check", "Run the inequality suite on a matrix or on the random ensemble");
    auto* sweep_cmd = app.add_subcommand("sweep", "Tabulate Delta over a (rho, nu) grid as CSV");
    auto* search = app.add_subcommand("search", "Report the smallest-slack witnesses per check");

    for (auto* sub : {compute, check, sweep_cmd, search}) {
        sub->add_option("--input", o.input, "MatrixFile (JSON)");
        sub->add_option("--out", o.out, "Output path; stdout when omitted");
        sub->add_option("--coarse-points", o.coarse_points, "Coarse angle samples for the numerical radius");
        sub->add_option("--tol-eq", o.tol_eq, "Relative tolerance for identities");
        sub->add_option("--tol-ineq", o.tol_ineq, "Relative tolerance for inequalities");
    }
    compute->add_option("--functional", o.functional,
                        "delta | wrho | w | norm | crawford | spectral-radius | aluthge | blocks");
    for (auto* sub : {compute, check}) {
        sub->add_option("--rho", o.rho, "rho in (0,2]");
        sub->add_option("--nu", o.nu, "nu in [0,1]");
    }
    for (auto* sub : {check, sweep_cmd, search}) {
        sub->add_option("--rho-grid", o.rho_grid, "start:stop:step or comma list");
        sub->add_option("--nu-grid", o.nu_grid, "start:stop:step or comma list");
    }
    for (auto* sub : {check, search}) {
        sub->add_option("--families", o.families, "Comma list of ensemble families");
        sub->add_option("--dims", o.dims, "Comma list of dimensions");
        sub->add_option("--samples", o.samples, "Samples per (family, dim)");
        sub->add_option("--seed", o.seed, "Master seed (unsigned 64-bit)");
        sub->add_option("--only", o.only, "Comma list of check ids");
        sub->add_option("--worst", o.worst, "Witnesses kept per check");
    }
    check->add_flag("--ensemble", o.ensemble, "Use the random ensemble instead of --input");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kPass : kInputError;
    }

    try {
        if (*compute) return cmd_compute(o, out);
        if (*check) return cmd_check(o, out, err);
        if (*sweep_cmd) return cmd_sweep(o, out);
        return cmd_search(o, out, err);
    } catch (const std::exception& e) {
        err << "radii: error: " << e.what() << "\n";
        return kInputError;
    }
}

}  // namespace radii
