#include "radii/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "radii/error.hpp"

namespace radii {

namespace {

using Mat = Eigen::MatrixXcd;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

constexpr std::string_view kFamilyNames[] = {"ginibre",    "hermitian",      "normal", "unitary",
                                             "nilpotent2", "rank_deficient", "psd"};

}  // namespace

const std::vector<Family>& all_families() {
    static const std::vector<Family> fams = {Family::ginibre,    Family::hermitian,      Family::normal,
                                             Family::unitary,    Family::nilpotent2,     Family::rank_deficient,
                                             Family::psd};
    return fams;
}

std::string_view to_string(Family f) { return kFamilyNames[static_cast<int>(f)]; }

Family parse_family(std::string_view name) {
    for (Family f : all_families()) {
        if (to_string(f) == name) {
            return f;
        }
    }
    throw ParseError("unknown family '" + std::string(name) + "'");
}

std::uint64_t sample_seed(std::uint64_t master, Family family, int dim, int index) {
    std::uint64_t h = splitmix64(master);
    h = splitmix64(h ^ fnv1a(to_string(family)));
    h = splitmix64(h ^ static_cast<std::uint64_t>(dim));
    return splitmix64(h ^ static_cast<std::uint64_t>(index));
}

Complex SampleRng::complex_gaussian() {
    const double re = normal_(engine_);
    const double im = normal_(engine_);
    return Complex(re, im) / std::numbers::sqrt2;
}

Eigen::VectorXcd SampleRng::gaussian_vector(Index n) {
    Eigen::VectorXcd v(n);
    for (Index i = 0; i < n; ++i) {
        v(i) = complex_gaussian();
    }
    return v;
}

Eigen::VectorXcd SampleRng::unit_vector(Index n) {
    Eigen::VectorXcd v = gaussian_vector(n);
    // a zero draw has probability zero, but don't divide by it
    while (v.norm() == 0.0) {
        v = gaussian_vector(n);
    }
    return v / v.norm();
}

ComplexMatrix SampleRng::ginibre(Index n) {
    Mat m(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            m(i, j) = complex_gaussian();
        }
    }
    return ComplexMatrix(std::move(m));
}

ComplexMatrix SampleRng::haar_unitary(Index n) {
    const Mat g = ginibre(n).mat();
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ() * Mat::Identity(n, n);
    const Mat& r = qr.matrixQR();
    for (Index k = 0; k < n; ++k) {
        const double mag = std::abs(r(k, k));
        if (mag > 0.0) {
            q.col(k) *= r(k, k) / mag;
        }
    }
    return ComplexMatrix(std::move(q));
}

ComplexMatrix SampleRng::positive(Index n) {
    const Mat a = ginibre(n).mat();
    return ComplexMatrix(Mat(a.adjoint() * a));
}

double SampleRng::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

ComplexMatrix generate_matrix(Family family, int dim, std::uint64_t seed) {
    if (dim < 2) {
        throw DimensionError("generate_matrix: dim must be >= 2, got " + std::to_string(dim));
    }
    SampleRng rng(seed);
    const Index n = dim;
    switch (family) {
        case Family::ginibre:
            return rng.ginibre(n);
        case Family::hermitian: {
            const Mat g = rng.ginibre(n).mat();
            return ComplexMatrix(Mat(0.5 * (g + g.adjoint())));
        }
        case Family::normal: {
            const Mat u = rng.haar_unitary(n).mat();
            const Eigen::VectorXcd d = rng.gaussian_vector(n);
            return ComplexMatrix(Mat(u * d.asDiagonal() * u.adjoint()));
        }
        case Family::unitary:
            return rng.haar_unitary(n);
        case Family::nilpotent2: {
            const Eigen::VectorXcd u = rng.gaussian_vector(n);
            Eigen::VectorXcd v = rng.gaussian_vector(n);
            v -= (u.dot(v) / u.squaredNorm()) * u;
            // one more pass keeps <v, u> at roundoff level
            v -= (u.dot(v) / u.squaredNorm()) * u;
            return ComplexMatrix(Mat(u * v.adjoint()));
        }
        case Family::rank_deficient: {
            const Mat g = rng.ginibre(n).mat();
            Eigen::JacobiSVD<Mat> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
            Eigen::VectorXd sv = svd.singularValues();
            sv(n - 1) = 0.0;
            return ComplexMatrix(Mat(svd.matrixU() * sv.cast<Complex>().asDiagonal() * svd.matrixV().adjoint()));
        }
        case Family::psd:
            return rng.positive(n);
    }
    throw ParseError("unknown family");
}

void EnsembleConfig::validate() const {
    for (int d : dims) {
        if (d < 2 || d > 64) {
            throw DimensionError("dims: each dimension must lie in [2, 64], got " + std::to_string(d));
        }
    }
    if (samples_per_cell < 0) throw DomainError("samples must be >= 0");
    for (double r : rho_grid) {
        if (!(r > 0.0 && r <= 2.0)) throw DomainError("rho out of range (0,2]: got " + std::to_string(r));
    }
    for (double n : nu_grid) {
        if (!(n >= 0.0 && n <= 1.0)) throw DomainError("nu out of range [0,1]: got " + std::to_string(n));
    }
    for (const Complex& l : lambda_set) {
        if (!std::isfinite(l.real()) || !std::isfinite(l.imag()) || l == Complex(0.0, 0.0)) {
            throw DomainError("lambda must be finite and nonzero");
        }
    }
    for (double s : s_set) {
        if (!(s >= 0.0 && s <= 1.0)) throw DomainError("s out of range [0,1]");
    }
    for (double t : t_set) {
        if (!std::isfinite(t)) throw DomainError("t must be finite");
    }
    for (double r : limit_rhos) {
        if (!(r > 0.0 && r < 2.0)) throw DomainError("limit rho out of range (0,2)");
    }
    if (worst_k < 0) throw DomainError("worst must be >= 0");
    tol.validate();
    solver.validate();
}

bool EnsembleConfig::selected(CheckId id) const {
    return only.empty() || std::find(only.begin(), only.end(), id) != only.end();
}

}  // namespace radii
