#pragma once

#include <complex>
#include <initializer_list>

#include <Eigen/Dense>

namespace radii {

using Complex = std::complex<double>;
using Index = Eigen::Index;

/// Dense complex matrix with finite entries.
///
/// Immutable value type: every constructor rejects NaN/Inf entries with a
/// DomainError, and no mutating accessors are exposed. Arithmetic goes through
/// the free operators below or, for numerical kernels, through `mat()`.
class ComplexMatrix {
public:
    using Storage = Eigen::MatrixXcd;

    ComplexMatrix() = default;

    /// rows x cols zero matrix.
    ComplexMatrix(Index rows, Index cols);

    explicit ComplexMatrix(Storage m);

    template <typename Derived>
    explicit ComplexMatrix(const Eigen::MatrixBase<Derived>& expr) : ComplexMatrix(Storage(expr)) {}

    static ComplexMatrix identity(Index n);
    static ComplexMatrix zero(Index rows, Index cols);
    static ComplexMatrix diagonal(std::initializer_list<Complex> entries);

    /// Row-wise literal, e.g. `from_rows({{0, 1}, {0, 0}})`.
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

    Index rows() const noexcept { return m_.rows(); }
    Index cols() const noexcept { return m_.cols(); }
    bool is_square() const noexcept { return m_.rows() == m_.cols(); }
    bool empty() const noexcept { return m_.size() == 0; }

    Complex operator()(Index i, Index j) const { return m_(i, j); }

    const Storage& mat() const noexcept { return m_; }

    /// Conjugate transpose.
    ComplexMatrix adjoint() const;

    double frobenius_norm() const { return m_.norm(); }

private:
    Storage m_;
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex c, const ComplexMatrix& a);
ComplexMatrix operator*(double c, const ComplexMatrix& a);

bool operator==(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest entrywise modulus of a - b; both must have equal shape.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace radii
