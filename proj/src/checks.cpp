#include "radii/checks.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "radii/error.hpp"

namespace radii {

namespace {

using Mat = Eigen::MatrixXcd;

ComplexMatrix wrap(Mat m) { return ComplexMatrix(std::move(m)); }

double coef(const RhoNuParams& p) { return 1.0 + p.alpha + std::abs(p.beta); }

// Parameters of the rho = 2 reduction used by the corollaries.
RhoNuParams at_two(double nu) { return make_params(2.0, nu); }

}  // namespace

CheckScope scope_of(CheckId id) {
    switch (id) {
        case CheckId::T2_5_vii_limit:
        case CheckId::C2_7_a:
        case CheckId::C2_12_a:
        case CheckId::C2_15_lower:
        case CheckId::C2_15_upper:
            return CheckScope::nu;
        case CheckId::O_sandwich:
        case CheckId::O_nilpotent:
        case CheckId::O_normal:
            return CheckScope::rho;
        case CheckId::C2_7_b:
        case CheckId::C2_12_b:
        case CheckId::L_heinz:
        case CheckId::L_buzano:
        case CheckId::L_mixed_schwarz:
        case CheckId::L_positive_square:
            return CheckScope::sample;
        default:
            return CheckScope::cell;
    }
}

CheckExtras make_extras(int dim, std::uint64_t seed, const EnsembleConfig& cfg) {
    // separate stream from the one that drew X
    SampleRng rng(seed ^ 0xa5a5a5a55a5a5a5aULL);
    const Index n = dim;
    CheckExtras ex;
    ex.t_values = cfg.t_set;
    ex.s_values = cfg.s_set;
    ex.lambdas = cfg.lambda_set;
    ex.limit_rhos = cfg.limit_rhos;
    ex.Y = rng.ginibre(n);
    ex.U = rng.haar_unitary(n);
    ex.Z = rng.positive(n);
    ex.heinz_B = rng.positive(n);
    ex.heinz_C = rng.positive(n);
    ex.P = rng.positive(n);
    for (int k = 0; k < 4; ++k) {
        ex.unit_vectors.push_back(rng.unit_vector(n));
    }
    ex.u = rng.gaussian_vector(n);
    ex.v = rng.gaussian_vector(n);
    ex.e = rng.unit_vector(n);
    return ex;
}

bool is_nilpotent2(const ComplexMatrix& x) {
    if (!x.is_square()) return false;
    const double n = spectral_norm(x);
    return (x.mat() * x.mat()).norm() <= 1e-10 * std::max(n * n, 1e-300);
}

bool is_normal(const ComplexMatrix& x) {
    if (!x.is_square()) return false;
    const Mat& m = x.mat();
    const double n = spectral_norm(x);
    return (m * m.adjoint() - m.adjoint() * m).norm() <= 1e-9 * std::max(n * n, 1e-300);
}

CheckContext::CheckContext(ComplexMatrix x, CheckExtras extras, ToleranceConfig tol, AngleSolverConfig solver,
                           Witness base)
    : x_(std::move(x)),
      extras_(std::move(extras)),
      tol_(tol),
      solver_(solver),
      base_(std::move(base)),
      norm_x_(0.0) {
    if (!x_.is_square()) {
        throw DimensionError("checks: X must be square");
    }
    tol_.validate();
    solver_.validate();
    norm_x_ = spectral_norm(x_);
}

double CheckContext::memo(Slot slot, double rho, double nu, const std::function<double()>& f) {
    const Key key{slot, rho, nu};
    if (auto it = cache_.find(key); it != cache_.end()) {
        return it->second;
    }
    const double v = f();
    cache_.emplace(key, v);
    return v;
}

double CheckContext::delta(double rho, double nu) {
    const auto p = make_params(rho, nu);
    return memo(kDelta, rho, nu, [&] { return radii::delta(x_, p, solver_); });
}

double CheckContext::wrho(double rho) {
    return memo(kWrho, rho, 0.0, [&] { return operator_radius_rho(x_, rho, solver_); });
}

double CheckContext::w_x() { return memo(kW, 0.0, 0.0, [&] { return numerical_radius(x_, solver_); }); }

double CheckContext::w_aluthge_x() {
    return memo(kWAluthge, 0.0, 0.0, [&] { return numerical_radius(aluthge(x_, tol_), solver_); });
}

double CheckContext::w_x_squared() {
    return memo(kWSq, 0.0, 0.0, [&] { return numerical_radius(x_ * x_, solver_); });
}

// || |X|^2 + |X*|^2 ||
double CheckContext::norm_abs_sum_x() {
    return memo(kNormAbsSum, 0.0, 0.0, [&] {
        const Mat& m = x_.mat();
        return spectral_norm(wrap(m.adjoint() * m + m * m.adjoint()));
    });
}

const ComplexMatrix& CheckContext::require(const std::optional<ComplexMatrix>& m, const char* what) const {
    if (!m) {
        throw DomainError(std::string("missing extras: ") + what);
    }
    if (m->rows() != x_.rows() || m->cols() != x_.cols()) {
        throw DimensionError(std::string("extras ") + what + " must match the shape of X");
    }
    return *m;
}

Witness CheckContext::witness(std::optional<double> rho, std::optional<double> nu) const {
    Witness w = base_;
    w.rho = rho;
    w.nu = nu;
    return w;
}

double CheckContext::ineq_tol(const RhoNuParams& p, double scale) const {
    const double c = coef(p);
    return tol_.rel_ineq * c * c * scale;
}

void CheckContext::evaluate(CheckId id, double rho, double nu, std::vector<CheckResult>& out) {
    switch (scope_of(id)) {
        case CheckScope::cell:
            cell_checks(id, make_params(rho, nu), out);
            break;
        case CheckScope::nu:
            nu_checks(id, make_params(2.0, nu).nu, out);
            break;
        case CheckScope::rho:
            rho_checks(id, make_params(rho, 0.5).rho, out);
            break;
        case CheckScope::sample:
            sample_checks(id, out);
            break;
    }
}

void CheckContext::cell_checks(CheckId id, const RhoNuParams& p, std::vector<CheckResult>& out) {
    const double rho = p.rho, nu = p.nu;
    const double nx = norm_x_;
    const double mu_abs = std::abs(p.mu);
    auto dlt = [&](const ComplexMatrix& m) { return radii::delta(m, p, solver_); };
    const double d = delta(rho, nu);

    switch (id) {
        case CheckId::T2_5_i: {
            const auto& y = require(extras_.Y, "Y");
            const double dy = memo(kDeltaY, rho, nu, [&] { return dlt(y); });
            const double tol = ineq_tol(p, 1.0 + nx + spectral_norm(y));
            out.push_back(make_inequality(id, dlt(x_ + y), d + dy, tol, witness(rho, nu)));
            break;
        }
        case CheckId::T2_5_ii: {
            if (extras_.t_values.empty()) throw DomainError("missing extras: t values");
            for (double t : extras_.t_values) {
                auto w = witness(rho, nu);
                w.t = t;
                const double tol = ineq_tol(p, 1.0 + std::max(1.0, std::abs(t)) * nx);
                out.push_back(make_equality(id, dlt(t * x_), std::abs(t) * d, tol, std::move(w)));
            }
            break;
        }
        case CheckId::T2_5_iii: {
            // Quantitative form: Delta >= ||H||/2 since w(T) >= ||T||/2. At
            // rho = 2, H reduces to X + mu X*, which vanishes for skew-Hermitian
            // X (nu = 0) or Hermitian X (nu = 1), so strict positivity there
            // holds only when X + mu X* != 0.
            const double floor = p.rho == 2.0
                                     ? 0.5 * spectral_norm(wrap(x_.mat() + p.mu * x_.mat().adjoint()))
                                     : 0.5 * spectral_norm(build_h(x_, p));
            out.push_back(make_inequality(id, floor, d, ineq_tol(p, 1.0 + nx), witness(rho, nu)));
            break;
        }
        case CheckId::T2_5_iv: {
            const auto& u = require(extras_.U, "U");
            out.push_back(
                make_equality(id, dlt(u.adjoint() * x_ * u), d, ineq_tol(p, 1.0 + nx), witness(rho, nu)));
            break;
        }
        case CheckId::T2_5_v: {
            const auto& y = require(extras_.Y, "Y");
            const double ny = spectral_norm(y);
            out.push_back(make_inequality(id, dlt(y.adjoint() * x_ * y), ny * ny * d,
                                          ineq_tol(p, 1.0 + nx * ny * ny), witness(rho, nu)));
            break;
        }
        case CheckId::T2_5_vi: {
            const auto& z = require(extras_.Z, "Z");
            if (extras_.s_values.empty()) throw DomainError("missing extras: s values");
            const ComplexMatrix zxz = z * x_ * z;
            const double dzxz = memo(kDeltaZXZ, rho, nu, [&] { return dlt(zxz); });
            const double nz = spectral_norm(z);
            const double tol = ineq_tol(p, 1.0 + nx * std::max(1.0, nz * nz));
            for (double s : extras_.s_values) {
                const ComplexMatrix zs = psd_power(z, s, tol_);
                const ComplexMatrix m = zs * x_ * zs;
                // Z^1 is returned as Z itself, so s = 1 is the same matrix as ZXZ
                const double lhs = (m == zxz) ? dzxz : dlt(m);
                auto w = witness(rho, nu);
                w.s = s;
                out.push_back(make_inequality(id, lhs, std::pow(dzxz, s) * std::pow(d, 1.0 - s), tol, std::move(w)));
            }
            break;
        }
        case CheckId::T2_5_vii_sym: {
            if (!(rho < 2.0)) throw DomainError("T2.5.vii-sym needs rho < 2");
            const double mirrored = 2.0 - rho;
            const auto q = make_params(mirrored, nu);
            const double c = std::max(coef(p), coef(q));
            const double tol = tol_.rel_ineq * c * c * (1.0 + nx);
            out.push_back(make_equality(id, mirrored * delta(mirrored, nu), rho * d, tol, witness(rho, nu)));
            break;
        }
        case CheckId::T2_6: {
            const auto blocks = build_blocks(x_, p);
            const double ng = spectral_norm(blocks.G);
            const double wg = memo(kAluthgeG, rho, 0.0,
                                   [&] { return numerical_radius(aluthge(blocks.G, tol_), solver_); });
            const double rhs = 0.5 * (1.0 + mu_abs) * (ng + wg);
            out.push_back(make_inequality(id, d, rhs, ineq_tol(p, 1.0 + nx), witness(rho, nu)));
            break;
        }
        case CheckId::C2_9: {
            const auto blocks = build_blocks(x_, p);
            const Mat sq = x_.mat() * x_.mat();
            const Mat zero = Mat::Zero(sq.rows(), sq.cols());
            Mat k(2 * sq.rows(), 2 * sq.cols());
            k << zero, p.alpha * sq, zero, p.beta * sq;
            const double rhs = 0.5 * (1.0 + mu_abs) *
                               (spectral_norm(blocks.G) + std::sqrt(std::abs(p.beta)) * std::sqrt(spectral_norm(wrap(k))));
            out.push_back(make_inequality(id, d, rhs, ineq_tol(p, 1.0 + nx), witness(rho, nu)));
            break;
        }
        case CheckId::T2_10:
        case CheckId::C2_11:
        case CheckId::C2_13: {
            const double wr = wrho(rho);
            const double wr_sq = memo(kWrhoSq, rho, 0.0, [&] { return operator_radius_rho(x_ * x_, rho, solver_); });
            const double n_abc = memo(kNormABC, rho, 0.0, [&] {
                const auto tb = build_theorem_blocks(x_, p);
                return spectral_norm(block2x2(tb.A, tb.B, tb.B, tb.C));
            });
            const double tol = ineq_tol(p, (1.0 + nx) * (1.0 + nx));
            const double lhs = d * d;
            const double base = p.mu * p.mu * wr * wr;
            if (id == CheckId::T2_10) {
                if (extras_.lambdas.empty()) throw DomainError("missing extras: lambda values");
                for (const Complex& lam : extras_.lambdas) {
                    const double mod = std::abs(lam);
                    if (mod == 0.0) throw DomainError("lambda must be nonzero");
                    const double rhs = base + 2.0 * std::abs(p.mu * p.beta) / mod * wr_sq +
                                       (2.0 * mu_abs * std::max(1.0, std::abs(lam - 1.0)) + mod) / (2.0 * mod) * n_abc;
                    auto w = witness(rho, nu);
                    w.lambda = lam;
                    out.push_back(make_inequality(id, lhs, rhs, tol, std::move(w)));
                }
            } else if (id == CheckId::C2_11) {
                const double rhs = base + std::abs(p.mu * p.beta) * wr_sq + 0.5 * (mu_abs + 1.0) * n_abc;
                out.push_back(make_inequality(id, lhs, rhs, tol, witness(rho, nu)));
            } else {
                const double rhs = base + 0.5 * (2.0 * mu_abs + 1.0) * n_abc;
                out.push_back(make_inequality(id, lhs, rhs, tol, witness(rho, nu)));
            }
            break;
        }
        case CheckId::T2_14_lower:
        case CheckId::T2_14_upper: {
            const auto tb = build_theorem_blocks(x_, p);
            const double n_mnp = spectral_norm(block2x2(tb.M, tb.N, tb.N.adjoint(), tb.P));
            const ComplexMatrix qrst = block2x2(tb.Q, tb.R, tb.T, tb.S);
            const double tol = ineq_tol(p, (1.0 + nx) * (1.0 + nx));
            if (id == CheckId::T2_14_lower) {
                const double lhs = 0.25 * n_mnp + 0.5 * crawford_number(qrst, solver_);
                out.push_back(make_inequality(id, lhs, d * d, tol, witness(rho, nu)));
            } else {
                const double rhs = 0.25 * n_mnp + 0.5 * numerical_radius(qrst, solver_);
                out.push_back(make_inequality(id, d * d, rhs, tol, witness(rho, nu)));
            }
            break;
        }
        case CheckId::O_block_identities: {
            for (auto& r : verify_block_identities(x_, p, witness(rho, nu))) {
                out.push_back(std::move(r));
            }
            break;
        }
        default:
            throw DomainError("check " + std::string(to_string(id)) + " is not evaluated per (rho, nu)");
    }
}

void CheckContext::nu_checks(CheckId id, double nu, std::vector<CheckResult>& out) {
    const auto p2 = at_two(nu);
    const double mu = p2.mu, mu_abs = std::abs(mu);
    const double nx = norm_x_;
    const double d2 = delta(2.0, nu);  // w(X + mu X*)
    const double tol1 = ineq_tol(p2, 1.0 + nx);
    const double tol2 = ineq_tol(p2, (1.0 + nx) * (1.0 + nx));

    switch (id) {
        case CheckId::T2_5_vii_limit: {
            if (extras_.limit_rhos.empty()) throw DomainError("missing extras: limit rho values");
            const ComplexMatrix h2 = build_h(x_, p2);
            for (double r : extras_.limit_rhos) {
                const auto p = make_params(r, nu);
                if (!(r < 2.0)) throw DomainError("limit rho must be < 2");
                const ComplexMatrix hm = build_h(x_, make_params(2.0 - r, nu));
                const double lhs = std::abs(r * delta(r, nu) - 2.0 * d2);
                const double rhs = (2.0 - r) * spectral_norm(hm - h2) + r * d2;
                const double c = 1.0 + r * p.alpha + r * std::abs(p.beta);
                out.push_back(make_inequality(id, lhs, rhs, tol_.rel_ineq * (1.0 + nx) * c * c, witness(r, nu)));
            }
            break;
        }
        case CheckId::C2_7_a: {
            const double rhs = 0.5 * (1.0 + mu_abs) * (nx + w_aluthge_x());
            out.push_back(make_inequality(id, d2, rhs, tol1, witness(2.0, nu)));
            break;
        }
        case CheckId::C2_12_a: {
            const double wx = w_x();
            const double rhs = mu * mu * wx * wx + mu_abs * w_x_squared() + 0.5 * (mu_abs + 1.0) * norm_abs_sum_x();
            out.push_back(make_inequality(id, d2 * d2, rhs, tol2, witness(2.0, nu)));
            break;
        }
        case CheckId::C2_15_lower:
        case CheckId::C2_15_upper: {
            const Mat y = x_.mat() + mu * x_.mat().adjoint();
            const double n_sum = spectral_norm(wrap(y.adjoint() * y + y * y.adjoint()));
            const ComplexMatrix y2 = wrap(y * y);
            if (id == CheckId::C2_15_lower) {
                const double lhs = 0.25 * n_sum + 0.5 * crawford_number(y2, solver_);
                out.push_back(make_inequality(id, lhs, d2 * d2, tol2, witness(2.0, nu)));
            } else {
                const double rhs = 0.25 * n_sum + 0.5 * numerical_radius(y2, solver_);
                out.push_back(make_inequality(id, d2 * d2, rhs, tol2, witness(2.0, nu)));
            }
            break;
        }
        default:
            throw DomainError("check " + std::string(to_string(id)) + " is not evaluated per nu");
    }
}

void CheckContext::rho_checks(CheckId id, double rho, std::vector<CheckResult>& out) {
    const auto p = make_params(rho, 0.5);
    const double nx = norm_x_;
    const double wr = wrho(rho);
    const double tol = ineq_tol(p, 1.0 + nx);
    // w_rho(X) <= max(1, 2/rho - 1) ||X||, attained by normal X
    const double upper = std::max(1.0, 2.0 / rho - 1.0) * nx;

    switch (id) {
        case CheckId::O_sandwich:
            out.push_back(make_inequality(id, nx / rho, wr, tol, witness(rho, std::nullopt)));
            out.push_back(make_inequality(id, wr, upper, tol, witness(rho, std::nullopt)));
            break;
        case CheckId::O_nilpotent:
            if (!is_nilpotent2(x_)) throw DomainError("O.nilpotent needs X^2 = 0");
            out.push_back(make_equality(id, wr, nx / rho, tol, witness(rho, std::nullopt)));
            break;
        case CheckId::O_normal:
            if (!is_normal(x_)) throw DomainError("O.normal needs a normal X");
            out.push_back(make_equality(id, wr, upper, tol, witness(rho, std::nullopt)));
            break;
        default:
            throw DomainError("check " + std::string(to_string(id)) + " is not evaluated per rho");
    }
}

void CheckContext::sample_checks(CheckId id, std::vector<CheckResult>& out) {
    const double nx = norm_x_;
    const Mat& m = x_.mat();
    const auto p2 = at_two(0.5);

    switch (id) {
        case CheckId::C2_7_b: {
            const double rhs = 0.5 * (nx + w_aluthge_x());
            out.push_back(make_inequality(id, w_x(), rhs, ineq_tol(p2, 1.0 + nx), witness(2.0, 0.5)));
            break;
        }
        case CheckId::C2_12_b: {
            const double wx = w_x();
            out.push_back(make_inequality(id, wx * wx, 0.5 * norm_abs_sum_x(), ineq_tol(p2, (1.0 + nx) * (1.0 + nx)),
                                          witness(2.0, 0.5)));
            break;
        }
        case CheckId::L_heinz: {
            const auto& b = require(extras_.heinz_B, "heinz_B");
            const auto& c = require(extras_.heinz_C, "heinz_C");
            if (extras_.s_values.empty()) throw DomainError("missing extras: s values");
            const double n_bac = spectral_norm(b * x_ * c);
            for (double s : extras_.s_values) {
                const double lhs = spectral_norm(psd_power(b, s, tol_) * x_ * psd_power(c, s, tol_));
                const double rhs = std::pow(n_bac, s) * std::pow(nx, 1.0 - s);
                Witness w = witness(std::nullopt, std::nullopt);
                w.s = s;
                out.push_back(make_inequality(id, lhs, rhs, tol_.rel_ineq * (1.0 + std::max(lhs, rhs)), std::move(w)));
            }
            break;
        }
        case CheckId::L_buzano: {
            if (!extras_.u || !extras_.v || !extras_.e) throw DomainError("missing extras: u, v, e");
            if (extras_.lambdas.empty()) throw DomainError("missing extras: lambda values");
            const Eigen::VectorXcd& u = *extras_.u;
            const Eigen::VectorXcd& v = *extras_.v;
            if (u.size() != v.size() || u.size() != extras_.e->size()) {
                throw DimensionError("L.buzano: u, v, e must have equal length");
            }
            if (std::abs(extras_.e->norm() - 1.0) > 1e-12) throw DomainError("L.buzano: e must be a unit vector");
            // the random e plus the bisector of u and v, which sits close to equality
            std::vector<Eigen::VectorXcd> es = {*extras_.e};
            Eigen::VectorXcd bis = u / u.norm() + v / v.norm();
            if (bis.norm() > 0.0) es.push_back(bis / bis.norm());
            const double nu_nv = u.norm() * v.norm();
            for (const Complex& lam : extras_.lambdas) {
                const double mod = std::abs(lam);
                if (mod == 0.0) throw DomainError("lambda must be nonzero");
                const double rhs = (std::max(1.0, std::abs(lam - 1.0)) * nu_nv + std::abs(inner(u, v))) / mod;
                for (const auto& e : es) {
                    const double lhs = std::abs(inner(u, e) * inner(e, v));
                    Witness w = witness(std::nullopt, std::nullopt);
                    w.lambda = lam;
                    out.push_back(make_inequality(id, lhs, rhs, tol_.rel_ineq * (1.0 + nu_nv), std::move(w)));
                }
            }
            break;
        }
        case CheckId::L_mixed_schwarz: {
            if (extras_.unit_vectors.empty()) throw DomainError("missing extras: unit vectors");
            const Mat abs_x = abs_matrix(x_).mat();
            const Mat abs_adj = abs_matrix(x_.adjoint()).mat();
            for (const auto& z : extras_.unit_vectors) {
                if (z.size() != m.rows()) throw DimensionError("unit vector length must match X");
                const double lhs = std::norm(inner(m * z, z));
                const double rhs = inner(abs_x * z, z).real() * inner(abs_adj * z, z).real();
                out.push_back(make_inequality(id, lhs, rhs, tol_.rel_ineq * (1.0 + nx * nx),
                                              witness(std::nullopt, std::nullopt)));
            }
            break;
        }
        case CheckId::L_positive_square: {
            const auto& pm = require(extras_.P, "P");
            if (extras_.unit_vectors.empty()) throw DomainError("missing extras: unit vectors");
            const Mat& pp = pm.mat();
            if ((pp - pp.adjoint()).norm() > tol_.rel_eq * std::max(pp.norm(), 1e-300)) {
                throw DomainError("L.positive-square: P must be Hermitian");
            }
            const double np = spectral_norm(pm);
            const Mat p_sq = pp * pp;
            for (const auto& z : extras_.unit_vectors) {
                if (z.size() != pp.rows()) throw DimensionError("unit vector length must match P");
                const double q = inner(pp * z, z).real();
                out.push_back(make_inequality(id, q * q, inner(p_sq * z, z).real(), tol_.rel_ineq * (1.0 + np * np),
                                              witness(std::nullopt, std::nullopt)));
            }
            break;
        }
        default:
            throw DomainError("check " + std::string(to_string(id)) + " is not evaluated per sample");
    }
}

std::vector<CheckResult> run_check(CheckId id, const ComplexMatrix& x, double rho, double nu,
                                   const CheckExtras& extras, const ToleranceConfig& tol,
                                   const AngleSolverConfig& solver) {
    CheckContext ctx(x, extras, tol, solver);
    std::vector<CheckResult> out;
    ctx.evaluate(id, rho, nu, out);
    return out;
}

}  // namespace radii
