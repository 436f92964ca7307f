#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "radii/check_result.hpp"
#include "radii/complex_matrix.hpp"
#include "radii/delta.hpp"
#include "radii/ensemble.hpp"
#include "radii/linalg.hpp"
#include "radii/numerical_range.hpp"

namespace radii {

/// What a check's result depends on besides X. Checks scoped to `nu` are
/// evaluated once per nu (they live at rho = 2 or sweep their own rho
/// values), `rho` once per rho, and `sample` once per matrix.
enum class CheckScope { cell, nu, rho, sample };

CheckScope scope_of(CheckId id);

/// Auxiliary inputs. Each check reads only what it needs and throws
/// DomainError naming the missing piece otherwise.
struct CheckExtras {
    std::vector<double> t_values;       ///< T2.5.ii
    std::vector<double> s_values;       ///< T2.5.vi, L.heinz
    std::vector<Complex> lambdas;       ///< T2.10, L.buzano
    std::vector<double> limit_rhos;     ///< T2.5.vii-limit
    std::optional<ComplexMatrix> Y;     ///< T2.5.i (second summand), T2.5.v (congruence)
    std::optional<ComplexMatrix> U;     ///< T2.5.iv, unitary
    std::optional<ComplexMatrix> Z;     ///< T2.5.vi, positive
    std::optional<ComplexMatrix> heinz_B;  ///< L.heinz, positive
    std::optional<ComplexMatrix> heinz_C;  ///< L.heinz, positive
    std::optional<ComplexMatrix> P;        ///< L.positive-square, positive
    std::vector<Eigen::VectorXcd> unit_vectors;  ///< L.mixed-schwarz, L.positive-square
    std::optional<Eigen::VectorXcd> u, v, e;     ///< L.buzano; e is a unit vector
};

/// Draws every auxiliary input for one sample from its own stream, with the
/// scalar grids copied from the config.
CheckExtras make_extras(int dim, std::uint64_t seed, const EnsembleConfig& cfg);

/// Evaluates checks against one matrix, memoizing the expensive functionals
/// (Delta per (rho, nu), w_rho per rho, ...) across calls. Not thread-safe;
/// use one context per thread.
class CheckContext {
public:
    CheckContext(ComplexMatrix x, CheckExtras extras, ToleranceConfig tol = {}, AngleSolverConfig solver = {},
                 Witness base = {});

    /// Appends every result of `id` at (rho, nu). Parameters outside the
    /// check's scope are ignored. Throws DomainError for missing extras,
    /// out-of-range parameters, or an X the check does not apply to
    /// (O.nilpotent needs X^2 = 0, O.normal needs X normal).
    void evaluate(CheckId id, double rho, double nu, std::vector<CheckResult>& out);

    double delta(double rho, double nu);
    double wrho(double rho);

    const ComplexMatrix& x() const { return x_; }
    double norm() const { return norm_x_; }

private:
    using Key = std::tuple<int, double, double>;
    enum Slot : int {
        kDelta, kDeltaY, kDeltaZXZ, kWrho, kWrhoSq, kNormABC, kAluthgeG,
        kW, kWSq, kWAluthge, kNormAbsSum,
    };

    double memo(Slot slot, double rho, double nu, const std::function<double()>& f);
    const ComplexMatrix& require(const std::optional<ComplexMatrix>& m, const char* what) const;
    Witness witness(std::optional<double> rho, std::optional<double> nu) const;
    double ineq_tol(const RhoNuParams& p, double scale) const;

    void cell_checks(CheckId id, const RhoNuParams& p, std::vector<CheckResult>& out);
    void nu_checks(CheckId id, double nu, std::vector<CheckResult>& out);
    void rho_checks(CheckId id, double rho, std::vector<CheckResult>& out);
    void sample_checks(CheckId id, std::vector<CheckResult>& out);

    double w_x();
    double w_aluthge_x();
    double w_x_squared();
    double norm_abs_sum_x();

    ComplexMatrix x_;
    CheckExtras extras_;
    ToleranceConfig tol_;
    AngleSolverConfig solver_;
    Witness base_;
    double norm_x_;
    std::map<Key, double> cache_;
};

/// One-shot wrapper: a fresh context for X. Two-sided checks and checks that
/// sweep an auxiliary set (lambda, s, t, ...) return several results.
std::vector<CheckResult> run_check(CheckId id, const ComplexMatrix& x, double rho, double nu,
                                   const CheckExtras& extras, const ToleranceConfig& tol = {},
                                   const AngleSolverConfig& solver = {});

bool is_nilpotent2(const ComplexMatrix& x);
bool is_normal(const ComplexMatrix& x);

}  // namespace radii
