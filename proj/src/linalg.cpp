#include "radii/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "radii/error.hpp"

namespace radii {

namespace {

using Mat = Eigen::MatrixXcd;

void require_square(const ComplexMatrix& x, const char* what) {
    if (!x.is_square()) {
        throw DimensionError(std::string(what) + ": expected a square matrix, got " + std::to_string(x.rows()) +
                             "x" + std::to_string(x.cols()));
    }
}

Eigen::JacobiSVD<Mat> thin_svd(const Mat& m) { return Eigen::JacobiSVD<Mat>(m, Eigen::ComputeThinU | Eigen::ComputeThinV); }

}  // namespace

void ToleranceConfig::validate() const {
    auto ok = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!ok(rel_eq)) throw DomainError("rel_eq must be > 0");
    if (!ok(rel_ineq)) throw DomainError("rel_ineq must be > 0");
    if (!ok(rank_cutoff)) throw DomainError("rank_cutoff must be > 0");
}

ComplexMatrix adjoint(const ComplexMatrix& x) { return x.adjoint(); }

ComplexMatrix re_part(const ComplexMatrix& x) {
    require_square(x, "re_part");
    return ComplexMatrix(Mat(0.5 * (x.mat() + x.mat().adjoint())));
}

ComplexMatrix im_part(const ComplexMatrix& x) {
    require_square(x, "im_part");
    return ComplexMatrix(Mat(Complex(0.0, -0.5) * (x.mat() - x.mat().adjoint())));
}

HermitianEigenResult hermitian_eigen(const ComplexMatrix& m, const ToleranceConfig& tol) {
    require_square(m, "hermitian_eigen");
    const Mat& a = m.mat();
    const double scale = a.norm();
    if ((a - a.adjoint()).norm() > tol.rel_eq * scale) {
        throw DomainError("hermitian_eigen: input is not Hermitian within tolerance");
    }
    const Mat sym = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw Error("hermitian_eigen: eigensolver did not converge");
    }
    HermitianEigenResult out;
    out.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
    out.eigenvectors = ComplexMatrix(solver.eigenvectors());
    return out;
}

SvdResult svd(const ComplexMatrix& x) {
    const auto dec = thin_svd(x.mat());
    SvdResult out;
    out.left = ComplexMatrix(dec.matrixU());
    out.right = ComplexMatrix(dec.matrixV());
    const auto& sv = dec.singularValues();
    out.singular_values.assign(sv.data(), sv.data() + sv.size());
    return out;
}

ComplexMatrix abs_matrix(const ComplexMatrix& x) {
    const auto dec = thin_svd(x.mat());
    const Mat& v = dec.matrixV();
    return ComplexMatrix(Mat(v * dec.singularValues().cast<Complex>().asDiagonal() * v.adjoint()));
}

PolarDecomposition polar(const ComplexMatrix& x, const ToleranceConfig& tol) {
    require_square(x, "polar");
    const Index n = x.rows();
    const auto dec = thin_svd(x.mat());
    const auto& sv = dec.singularValues();
    const double cutoff = tol.rank_cutoff * (sv.size() > 0 ? sv(0) : 0.0);

    Index rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff) {
        ++rank;
    }

    PolarDecomposition out;
    const Mat& u = dec.matrixU();
    const Mat& v = dec.matrixV();
    if (rank == 0) {
        out.isometry = ComplexMatrix::zero(n, n);
        out.modulus = ComplexMatrix::zero(n, n);
        return out;
    }
    out.isometry = ComplexMatrix(Mat(u.leftCols(rank) * v.leftCols(rank).adjoint()));
    out.modulus = ComplexMatrix(Mat(v * sv.cast<Complex>().asDiagonal() * v.adjoint()));
    return out;
}

ComplexMatrix psd_power(const ComplexMatrix& p, double s, const ToleranceConfig& tol) {
    if (!(s >= 0.0 && s <= 1.0)) {
        throw DomainError("psd_power: exponent s must lie in [0, 1]");
    }
    require_square(p, "psd_power");
    const auto eig = hermitian_eigen(p, tol);
    const double lmax = eig.eigenvalues.empty() ? 0.0 : std::max(std::abs(eig.eigenvalues.front()), eig.eigenvalues.back());
    const double floor = -tol.rel_eq * lmax;
    if (!eig.eigenvalues.empty() && eig.eigenvalues.front() < floor) {
        throw DomainError("psd_power: matrix is not positive semidefinite (min eigenvalue " +
                          std::to_string(eig.eigenvalues.front()) + ")");
    }

    const Index n = p.rows();
    Eigen::VectorXcd mapped(n);
    for (Index k = 0; k < n; ++k) {
        const double lam = std::max(0.0, eig.eigenvalues[static_cast<std::size_t>(k)]);
        if (s == 0.0) {
            mapped(k) = lam > tol.rank_cutoff * lmax ? 1.0 : 0.0;
        } else {
            mapped(k) = std::pow(lam, s);
        }
    }
    if (s == 1.0) {
        return p;
    }
    const Mat& q = eig.eigenvectors.mat();
    return ComplexMatrix(Mat(q * mapped.asDiagonal() * q.adjoint()));
}

double spectral_norm(const ComplexMatrix& x) {
    if (x.empty()) {
        return 0.0;
    }
    // sigma_max^2 = lambda_max(X*X); a Hermitian eigensolve is several times
    // cheaper than a Jacobi SVD and loses nothing at the top of the spectrum.
    const Mat& m = x.mat();
    const Mat gram = m.rows() >= m.cols() ? Mat(m.adjoint() * m) : Mat(m * m.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(gram, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw Error("spectral_norm: eigensolver did not converge");
    }
    return std::sqrt(std::max(0.0, es.eigenvalues()(es.eigenvalues().size() - 1)));
}

double spectral_radius(const ComplexMatrix& x) {
    require_square(x, "spectral_radius");
    if (x.empty()) {
        return 0.0;
    }
    Eigen::ComplexEigenSolver<Mat> solver(x.mat(), false);
    if (solver.info() != Eigen::Success) {
        throw Error("spectral_radius: eigensolver did not converge");
    }
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

ComplexMatrix block2x2(const ComplexMatrix& s, const ComplexMatrix& x, const ComplexMatrix& y,
                       const ComplexMatrix& t) {
    const Index n = s.rows();
    for (const ComplexMatrix* b : {&s, &x, &y, &t}) {
        if (b->rows() != n || b->cols() != n) {
            throw DimensionError("block2x2: all blocks must be " + std::to_string(n) + "x" + std::to_string(n));
        }
    }
    Mat out(2 * n, 2 * n);
    out << s.mat(), x.mat(), y.mat(), t.mat();
    return ComplexMatrix(std::move(out));
}

Complex inner(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    if (a.size() != b.size()) {
        throw DimensionError("inner: vector lengths differ");
    }
    return b.dot(a);
}

}  // namespace radii
