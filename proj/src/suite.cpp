#include "radii/suite.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>

#include <json.hpp>

#include "radii/checks.hpp"
#include "radii/error.hpp"

namespace radii {

namespace {

using json = nlohmann::ordered_json;

struct Unit {
    std::string family;
    std::optional<Family> tag;  // empty for a user-supplied matrix
    int dim = 0;
    std::uint64_t seed = 0;
    std::optional<ComplexMatrix> given;
};

struct Entry {
    WitnessRecord rec;
    double margin = 0.0;  // slack + tolerance
    std::uint64_t order = 0;
};

// Streaming per-check aggregate. Everything is ordered by (key, order), a
// total order, so merging partial aggregates in any grouping yields the same
// result; that is what makes the report independent of the thread count.
class Aggregator {
public:
    Aggregator(WitnessOrder ord, int k) : ord_(ord), k_(static_cast<std::size_t>(k)), slots_(kCheckCount) {}

    void add(CheckId id, WitnessRecord rec, std::uint64_t order) {
        Entry e{std::move(rec), 0.0, order};
        e.margin = e.rec.slack + e.rec.tolerance;
        if (!std::isfinite(e.margin)) {
            e.margin = -std::numeric_limits<double>::infinity();
        }
        auto& s = slots_[static_cast<std::size_t>(id)];
        ++s.count;
        s.pass = s.pass && e.rec.pass;
        if (!s.rep || before(e.margin, e.order, s.rep->margin, s.rep->order)) {
            s.rep = e;
        }
        keep(s.kept, std::move(e));
    }

    void merge(Aggregator&& other) {
        for (std::size_t i = 0; i < kCheckCount; ++i) {
            auto& a = slots_[i];
            auto& b = other.slots_[i];
            a.count += b.count;
            a.pass = a.pass && b.pass;
            if (b.rep && (!a.rep || before(b.rep->margin, b.rep->order, a.rep->margin, a.rep->order))) {
                a.rep = b.rep;
            }
            for (auto& e : b.kept) {
                keep(a.kept, std::move(e));
            }
        }
    }

    std::vector<CheckSummary> summarize() const {
        std::vector<CheckSummary> out;
        for (CheckId id : enumerate_checks()) {
            const auto& s = slots_[static_cast<std::size_t>(id)];
            CheckSummary c;
            c.id = id;
            c.count = s.count;
            c.pass = s.pass;
            if (s.rep) {
                c.min_slack = s.rep->rec.slack;
                c.tolerance = s.rep->rec.tolerance;
            }
            for (const auto& e : s.kept) {
                c.worst.push_back(e.rec);
            }
            out.push_back(std::move(c));
        }
        return out;
    }

private:
    struct Slot {
        std::size_t count = 0;
        bool pass = true;
        std::optional<Entry> rep;
        std::vector<Entry> kept;
    };

    static bool before(double k1, std::uint64_t o1, double k2, std::uint64_t o2) {
        return k1 < k2 || (k1 == k2 && o1 < o2);
    }

    double key(const Entry& e) const {
        if (ord_ == WitnessOrder::margin) return e.margin;
        return std::isnan(e.rec.slack) ? -std::numeric_limits<double>::infinity() : e.rec.slack;
    }

    void keep(std::vector<Entry>& kept, Entry e) {
        if (k_ == 0) return;
        const double ke = key(e);
        if (kept.size() == k_ && !before(ke, e.order, key(kept.back()), kept.back().order)) {
            return;
        }
        auto it = std::find_if(kept.begin(), kept.end(),
                               [&](const Entry& o) { return before(ke, e.order, key(o), o.order); });
        kept.insert(it, std::move(e));
        if (kept.size() > k_) kept.pop_back();
    }

    WitnessOrder ord_;
    std::size_t k_;
    std::vector<Slot> slots_;
};

bool applies(CheckId id, const Unit& u, const ComplexMatrix& x) {
    if (id == CheckId::O_nilpotent) {
        return u.tag ? *u.tag == Family::nilpotent2 : is_nilpotent2(x) && spectral_norm(x) > 0.0;
    }
    if (id == CheckId::O_normal) {
        if (!u.tag) return is_normal(x);
        switch (*u.tag) {
            case Family::normal:
            case Family::hermitian:
            case Family::unitary:
            case Family::psd:
                return true;
            default:
                return false;
        }
    }
    return true;
}

void evaluate_unit(const Unit& u, std::uint64_t unit_index, const EnsembleConfig& cfg, Aggregator& agg) {
    const ComplexMatrix x = u.given ? *u.given : generate_matrix(*u.tag, u.dim, u.seed);
    Witness base;
    base.family = u.family;
    base.dim = u.dim;
    base.seed = u.seed;
    CheckContext ctx(x, make_extras(u.dim, u.seed, cfg), cfg.tol, cfg.solver, base);

    std::uint64_t local = 0;
    std::vector<CheckResult> results;
    auto run = [&](CheckId id, double rho, double nu) {
        results.clear();
        try {
            ctx.evaluate(id, rho, nu, results);
        } catch (const std::exception& ex) {
            WitnessRecord rec;
            rec.witness = base;
            rec.witness.rho = rho;
            rec.witness.nu = nu;
            rec.lhs = rec.rhs = std::numeric_limits<double>::quiet_NaN();
            rec.slack = -std::numeric_limits<double>::infinity();
            rec.pass = false;
            rec.error = ex.what();
            agg.add(id, std::move(rec), (unit_index << 32) | local++);
            return;
        }
        for (auto& r : results) {
            WitnessRecord rec{std::move(r.witness), r.lhs, r.rhs, r.slack, r.tolerance, r.pass, {}};
            agg.add(id, std::move(rec), (unit_index << 32) | local++);
        }
    };

    for (CheckId id : enumerate_checks()) {
        if (!cfg.selected(id) || !applies(id, u, x)) continue;
        switch (scope_of(id)) {
            case CheckScope::cell:
                for (double rho : cfg.rho_grid) {
                    if (id == CheckId::T2_5_vii_sym && rho >= 2.0) continue;
                    for (double nu : cfg.nu_grid) run(id, rho, nu);
                }
                break;
            case CheckScope::nu:
                for (double nu : cfg.nu_grid) run(id, 2.0, nu);
                break;
            case CheckScope::rho:
                for (double rho : cfg.rho_grid) run(id, rho, 0.5);
                break;
            case CheckScope::sample:
                run(id, 2.0, 0.5);
                break;
        }
    }
}

SuiteReport execute(const std::vector<Unit>& units, const EnsembleConfig& cfg, WitnessOrder ord) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();

    const unsigned workers = std::max(1u, std::min<unsigned>(thread_count(), static_cast<unsigned>(units.size())));
    std::vector<Aggregator> partial(workers, Aggregator(ord, cfg.worst_k));
    std::atomic<std::size_t> next{0};
    auto work = [&](unsigned w) {
        for (std::size_t i = next++; i < units.size(); i = next++) {
            evaluate_unit(units[i], i, cfg, partial[w]);
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }

    Aggregator total(ord, cfg.worst_k);
    for (auto& p : partial) total.merge(std::move(p));

    SuiteReport report;
    report.config = cfg;
    report.checks = total.summarize();
    report.pass = std::all_of(report.checks.begin(), report.checks.end(), [](const CheckSummary& c) { return c.pass; });
    report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::vector<Unit> ensemble_units(const EnsembleConfig& cfg) {
    std::vector<Unit> units;
    for (Family f : cfg.families) {
        for (int d : cfg.dims) {
            for (int i = 0; i < cfg.samples_per_cell; ++i) {
                units.push_back({std::string(to_string(f)), f, d, sample_seed(cfg.master_seed, f, d, i), {}});
            }
        }
    }
    return units;
}

json number(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

json optional_number(const std::optional<double>& v) { return v ? number(*v) : json(nullptr); }

json complex_pair(const Complex& c) { return json::array({number(c.real()), number(c.imag())}); }

json config_json(const EnsembleConfig& c) {
    json j;
    json fams = json::array();
    for (Family f : c.families) fams.push_back(std::string(to_string(f)));
    j["families"] = fams;
    j["dims"] = c.dims;
    j["samples_per_cell"] = c.samples_per_cell;
    j["master_seed"] = c.master_seed;
    j["rho_grid"] = c.rho_grid;
    j["nu_grid"] = c.nu_grid;
    json lam = json::array();
    for (const auto& l : c.lambda_set) lam.push_back(complex_pair(l));
    j["lambda_set"] = lam;
    j["s_set"] = c.s_set;
    j["t_set"] = c.t_set;
    j["limit_rhos"] = c.limit_rhos;
    json only = json::array();
    for (CheckId id : c.only) only.push_back(std::string(to_string(id)));
    j["only"] = only;
    j["worst_k"] = c.worst_k;
    j["tolerance"] = {{"rel_eq", c.tol.rel_eq}, {"rel_ineq", c.tol.rel_ineq}, {"rank_cutoff", c.tol.rank_cutoff}};
    j["solver"] = {{"coarse_points", c.solver.coarse_points},
                   {"refine_iters", c.solver.refine_iters},
                   {"target_rel_err", c.solver.target_rel_err}};
    return j;
}

json witness_json(const WitnessRecord& r) {
    const Witness& w = r.witness;
    json j;
    j["family"] = w.family;
    j["dim"] = w.dim;
    j["seed"] = w.seed;
    j["rho"] = optional_number(w.rho);
    j["nu"] = optional_number(w.nu);
    j["lambda"] = w.lambda ? complex_pair(*w.lambda) : json(nullptr);
    j["s"] = optional_number(w.s);
    j["t"] = optional_number(w.t);
    j["slack"] = number(r.slack);
    j["lhs"] = number(r.lhs);
    j["rhs"] = number(r.rhs);
    j["tolerance"] = number(r.tolerance);
    j["pass"] = r.pass;
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

}  // namespace

unsigned thread_count() {
    if (const char* env = std::getenv("RADII_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) {
            return static_cast<unsigned>(std::min(v, 256L));
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

SuiteReport run_suite(const EnsembleConfig& config) {
    return execute(ensemble_units(config), config, WitnessOrder::margin);
}

SuiteReport search_counterexamples(const EnsembleConfig& config) {
    return execute(ensemble_units(config), config, WitnessOrder::slack);
}

SuiteReport run_on_matrix(const ComplexMatrix& x, const EnsembleConfig& config) {
    if (!x.is_square() || x.empty()) {
        throw DimensionError("check: input matrix must be square and non-empty");
    }
    Unit u;
    u.family = "input";
    u.dim = static_cast<int>(x.rows());
    u.seed = config.master_seed;
    u.given = x;
    return execute({u}, config, WitnessOrder::margin);
}

std::string report_to_json(const SuiteReport& report) {
    json j;
    j["overall_pass"] = report.pass;
    j["config"] = config_json(report.config);
    json checks = json::array();
    for (const auto& c : report.checks) {
        json r;
        r["id"] = std::string(to_string(c.id));
        r["count"] = c.count;
        r["min_slack"] = optional_number(c.min_slack);
        r["tolerance"] = number(c.tolerance);
        r["pass"] = c.pass;
        json ws = json::array();
        for (const auto& w : c.worst) ws.push_back(witness_json(w));
        r["worst_witnesses"] = ws;
        checks.push_back(r);
    }
    j["checks"] = checks;
    return j.dump(2) + "\n";
}

}  // namespace radii
