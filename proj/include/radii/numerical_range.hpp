#pragma once

#include "radii/complex_matrix.hpp"
#include "radii/linalg.hpp"

namespace radii {

/// Controls the support-function search behind numerical_radius and
/// crawford_number.
///
/// The search samples f(theta) = lambda_max(Re(e^{i theta} X)) on
/// `coarse_points` uniformly spaced angles, then adds support lines where the
/// circumscribed polygon of the numerical range still leaves a gap between
/// the best attained value and the certified bound. `refine_iters` is the
/// eigensolve budget per local maximizer of f still open (crawford_number:
/// per call).
struct AngleSolverConfig {
    int coarse_points = 8;
    int refine_iters = 60;
    double target_rel_err = 1e-10;

    /// Throws DomainError when coarse_points < 8, refine_iters < 1 or the
    /// target error is not a positive finite number.
    void validate() const;
};

/// w(X) = sup_theta lambda_max(Re(e^{i theta} X)).
double numerical_radius(const ComplexMatrix& x, const AngleSolverConfig& cfg = {});

/// c(X) = inf_{|z|=1} |<Xz, z>|, the distance from the origin to the
/// numerical range.
double crawford_number(const ComplexMatrix& x, const AngleSolverConfig& cfg = {});

/// Operator radius w_rho for rho in (0, 2], evaluated through the 2x2 block
/// representation (2/rho) w([[0, sqrt(rho(2-rho)) X], [0, (1-rho) X]]).
double operator_radius_rho(const ComplexMatrix& x, double rho, const AngleSolverConfig& cfg = {});

/// Aluthge transform |X|^(1/2) V |X|^(1/2).
ComplexMatrix aluthge(const ComplexMatrix& x, const ToleranceConfig& tol = {});

}  // namespace radii
