#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "radii/complex_matrix.hpp"
#include "radii/numerical_range.hpp"

namespace radii {

struct SweepRecord {
    double rho = 0.0;
    double nu = 0.0;
    double delta = 0.0;
    double spectral_norm = 0.0;
    double numerical_radius = 0.0;
    double w_rho = 0.0;
};

// "start:stop:step" (both ends inclusive, up to roundoff), a comma list, or a
// single number. Throws ParseError on malformed input; `field` names the flag.
std::vector<double> parse_range(std::string_view spec, std::string_view field);

// Rows in lexicographic (rho, nu) order.
std::vector<SweepRecord> sweep(const ComplexMatrix& x, const std::vector<double>& rhos,
                               const std::vector<double>& nus, const AngleSolverConfig& solver = {});

std::string sweep_to_csv(const std::vector<SweepRecord>& rows);

}  // namespace radii
