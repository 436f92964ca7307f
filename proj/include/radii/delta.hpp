#pragma once

#include <vector>

#include "radii/check_result.hpp"
#include "radii/complex_matrix.hpp"
#include "radii/numerical_range.hpp"

namespace radii {

/// Validated (rho, nu) with the derived block coefficients
///   alpha = sqrt(8/rho - 4), beta = 2/rho - 2, mu = 1 - 2 nu.
/// beta is negative for rho > 1 and equals -1 at rho = 2, where alpha = 0.
struct RhoNuParams {
    double rho = 1.0;
    double nu = 0.5;
    double alpha = 2.0;
    double beta = 0.0;
    double mu = 0.0;
};

/// Throws DomainError naming the offending parameter unless 0 < rho <= 2
/// and 0 <= nu <= 1.
RhoNuParams make_params(double rho, double nu);

/// H = [[0, aX], [a mu X*, b(X + mu X*)]] and G = [[0, aX], [0, bX]], so that
/// H = G + mu G*.
struct DeltaBlocks {
    ComplexMatrix H;
    ComplexMatrix G;
};

DeltaBlocks build_blocks(const ComplexMatrix& x, const RhoNuParams& p);

/// Just the H block, without assembling G.
ComplexMatrix build_h(const ComplexMatrix& x, const RhoNuParams& p);

/// Delta_(rho,nu)(X) = w(H). At rho = 2 this is evaluated directly as
/// w(X + mu X*), which is what H reduces to there.
double delta(const ComplexMatrix& x, const RhoNuParams& p, const AngleSolverConfig& cfg = {});
double delta(const ComplexMatrix& x, double rho, double nu, const AngleSolverConfig& cfg = {});

/// n x n blocks of the bounds built on |G|^2 + |G*|^2, H^2 and |H|^2 + |H*|^2.
struct TheoremBlockBundle {
    ComplexMatrix A, B, C;
    ComplexMatrix Q, R, S, T;
    ComplexMatrix M, N, P;
};

TheoremBlockBundle build_theorem_blocks(const ComplexMatrix& x, const RhoNuParams& p);

/// Residual threshold used by verify_block_identities:
/// 1e-10 (1 + ||X||^2)(1 + alpha + |beta|)^2.
double block_identity_threshold(double norm_x, const RhoNuParams& p);

/// Four residuals, in this order:
///   ||G^2 - b[[0, aX^2], [0, bX^2]]||, || |G|^2 + |G*|^2 - [[A, B], [B, C]] ||,
///   ||H^2 - [[Q, R], [T, S]]||,        || |H|^2 + |H*|^2 - [[M, N], [N*, P]] ||.
/// Each result has lhs = residual, rhs = 0, id = O.block-identities.
std::vector<CheckResult> verify_block_identities(const ComplexMatrix& x, const RhoNuParams& p,
                                                 const Witness& witness = {});

}  // namespace radii
