#pragma once

#include <vector>

#include "radii/complex_matrix.hpp"

namespace radii {

/// Relative tolerances shared by the kernel, the functionals and the checks.
struct ToleranceConfig {
    double rel_eq = 1e-9;        ///< relative equality tolerance
    double rel_ineq = 1e-8;      ///< relative slack tolerance for inequality checks
    double rank_cutoff = 1e-12;  ///< singular values below rank_cutoff * sigma_max count as zero

    /// Throws DomainError unless every field is strictly positive and finite.
    void validate() const;
};

struct HermitianEigenResult {
    std::vector<double> eigenvalues;  ///< ascending
    ComplexMatrix eigenvectors;       ///< column k pairs with eigenvalues[k]
};

struct SvdResult {
    ComplexMatrix left;                  ///< m x r, orthonormal columns
    std::vector<double> singular_values; ///< r = min(m, n), descending
    ComplexMatrix right;                 ///< n x r, orthonormal columns
};

/// X = V|X| with V a partial isometry whose initial space is range(|X|).
struct PolarDecomposition {
    ComplexMatrix isometry;
    ComplexMatrix modulus;
};

ComplexMatrix adjoint(const ComplexMatrix& x);

/// (X + X*) / 2. Throws DimensionError for non-square input.
ComplexMatrix re_part(const ComplexMatrix& x);

/// (X - X*) / 2i. Throws DimensionError for non-square input.
ComplexMatrix im_part(const ComplexMatrix& x);

/// Full spectral decomposition of a Hermitian matrix. The input is
/// symmetrized as (M + M*)/2 first; a Hermitian defect larger than
/// tol.rel_eq * ||M||_F is rejected with DomainError.
HermitianEigenResult hermitian_eigen(const ComplexMatrix& m, const ToleranceConfig& tol = {});

/// Thin SVD.
SvdResult svd(const ComplexMatrix& x);

/// |X| = (X*X)^(1/2).
ComplexMatrix abs_matrix(const ComplexMatrix& x);

PolarDecomposition polar(const ComplexMatrix& x, const ToleranceConfig& tol = {});

/// P^s for positive semidefinite P and s in [0, 1]. Eigenvalues in
/// [-tol.rel_eq * ||P||, 0) are clipped to zero; P^0 is the projection onto
/// range(P).
ComplexMatrix psd_power(const ComplexMatrix& p, double s, const ToleranceConfig& tol = {});

double spectral_norm(const ComplexMatrix& x);

/// Largest eigenvalue modulus.
double spectral_radius(const ComplexMatrix& x);

/// [[S, X], [Y, T]] for four n x n blocks.
ComplexMatrix block2x2(const ComplexMatrix& s, const ComplexMatrix& x, const ComplexMatrix& y,
                       const ComplexMatrix& t);

/// Inner product <a, b> = b* a, linear in the first argument.
Complex inner(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

}  // namespace radii
