#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "radii/check_result.hpp"
#include "radii/complex_matrix.hpp"
#include "radii/linalg.hpp"
#include "radii/numerical_range.hpp"

namespace radii {

enum class Family { ginibre, hermitian, normal, unitary, nilpotent2, rank_deficient, psd };

const std::vector<Family>& all_families();
std::string_view to_string(Family f);

/// Throws ParseError for unknown names.
Family parse_family(std::string_view name);

/// Stable per-sample seed: splitmix64 chained over the master seed, an
/// FNV-1a hash of the family name, the dimension and the sample index.
std::uint64_t sample_seed(std::uint64_t master, Family family, int dim, int index);

/// Seeded source of the Gaussian objects everything else is built from.
/// Standard complex Gaussian entries are (N(0,1) + i N(0,1)) / sqrt(2).
class SampleRng {
public:
    explicit SampleRng(std::uint64_t seed) : engine_(seed) {}

    Complex complex_gaussian();
    Eigen::VectorXcd gaussian_vector(Index n);
    Eigen::VectorXcd unit_vector(Index n);
    ComplexMatrix ginibre(Index n);
    /// Haar-distributed unitary: QR of a Ginibre matrix with the phases of
    /// diag(R) pushed into Q.
    ComplexMatrix haar_unitary(Index n);
    /// A*A for Ginibre A.
    ComplexMatrix positive(Index n);
    double uniform(double lo, double hi);

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Deterministic matrix for (family, dim, seed). dim must be >= 2.
ComplexMatrix generate_matrix(Family family, int dim, std::uint64_t seed);

struct EnsembleConfig {
    std::vector<Family> families = all_families();
    std::vector<int> dims = {2, 3, 4, 5, 6};
    int samples_per_cell = 50;
    std::uint64_t master_seed = 0;
    std::vector<double> rho_grid = {0.1, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0};
    std::vector<double> nu_grid = {0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0};
    std::vector<Complex> lambda_set = {{1.0, 0.0}, {2.0, 0.0}, {-1.0, 0.0}, {1.0, 1.0}, {5.0, 0.0}};
    std::vector<double> s_set = {0.0, 0.25, 0.5, 0.75, 1.0};
    std::vector<double> t_set = {-2.5, -1.0, 0.5, 3.0};
    /// rho values at which rho * Delta is compared with its rho -> 0 limit.
    std::vector<double> limit_rhos = {0.1, 0.01, 0.001};
    /// Checks to evaluate; empty means all of them.
    std::vector<CheckId> only;
    /// Witnesses kept per check.
    int worst_k = 10;
    ToleranceConfig tol;
    AngleSolverConfig solver;

    /// Throws DomainError (or DimensionError for bad dims) on any value
    /// outside its documented range.
    void validate() const;

    bool selected(CheckId id) const;
};

}  // namespace radii
