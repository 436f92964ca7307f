#include "radii/complex_matrix.hpp"

#include <cmath>
#include <string>

#include "radii/error.hpp"

namespace radii {

namespace {

void require_finite(const ComplexMatrix::Storage& m) {
    if (!m.allFinite()) {
        throw DomainError("matrix has non-finite entries");
    }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                             std::to_string(b.cols()));
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(Index rows, Index cols) : m_(Storage::Zero(rows, cols)) {
    if (rows < 0 || cols < 0) {
        throw DimensionError("negative matrix dimension");
    }
}

ComplexMatrix::ComplexMatrix(Storage m) : m_(std::move(m)) { require_finite(m_); }

ComplexMatrix ComplexMatrix::identity(Index n) { return ComplexMatrix(Storage::Identity(n, n)); }

ComplexMatrix ComplexMatrix::zero(Index rows, Index cols) { return ComplexMatrix(rows, cols); }

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<Complex> entries) {
    const auto n = static_cast<Index>(entries.size());
    Storage m = Storage::Zero(n, n);
    Index k = 0;
    for (const auto& e : entries) {
        m(k, k) = e;
        ++k;
    }
    return ComplexMatrix(std::move(m));
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    const auto r = static_cast<Index>(rows.size());
    const auto c = r == 0 ? Index{0} : static_cast<Index>(rows.begin()->size());
    Storage m(r, c);
    Index i = 0;
    for (const auto& row : rows) {
        if (static_cast<Index>(row.size()) != c) {
            throw DimensionError("from_rows: ragged row " + std::to_string(i));
        }
        Index j = 0;
        for (const auto& e : row) {
            m(i, j++) = e;
        }
        ++i;
    }
    return ComplexMatrix(std::move(m));
}

ComplexMatrix ComplexMatrix::adjoint() const { return ComplexMatrix(Storage(m_.adjoint())); }

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "operator+");
    return ComplexMatrix(a.mat() + b.mat());
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "operator-");
    return ComplexMatrix(a.mat() - b.mat());
}

ComplexMatrix operator-(const ComplexMatrix& a) { return ComplexMatrix(-a.mat()); }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("operator*: inner dimensions " + std::to_string(a.cols()) + " and " +
                             std::to_string(b.rows()) + " differ");
    }
    return ComplexMatrix(a.mat() * b.mat());
}

ComplexMatrix operator*(Complex c, const ComplexMatrix& a) { return ComplexMatrix(c * a.mat()); }

ComplexMatrix operator*(double c, const ComplexMatrix& a) { return ComplexMatrix(c * a.mat()); }

bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && a.mat() == b.mat();
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    if (a.empty()) {
        return 0.0;
    }
    return (a.mat() - b.mat()).cwiseAbs().maxCoeff();
}

}  // namespace radii
