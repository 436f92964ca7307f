#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace radii {

enum class CheckId {
    T2_5_i,
    T2_5_ii,
    T2_5_iii,
    T2_5_iv,
    T2_5_v,
    T2_5_vi,
    T2_5_vii_sym,
    T2_5_vii_limit,
    T2_6,
    C2_7_a,
    C2_7_b,
    C2_9,
    T2_10,
    C2_11,
    C2_12_a,
    C2_12_b,
    C2_13,
    T2_14_lower,
    T2_14_upper,
    C2_15_lower,
    C2_15_upper,
    L_heinz,
    L_buzano,
    L_mixed_schwarz,
    L_positive_square,
    O_sandwich,
    O_nilpotent,
    O_normal,
    O_block_identities,
};

inline constexpr std::size_t kCheckCount = 29;

/// Every check, in declaration order.
const std::array<CheckId, kCheckCount>& enumerate_checks();

std::string_view to_string(CheckId id);

/// Throws ParseError for anything outside the closed set.
CheckId parse_check_id(std::string_view name);

/// Enough to regenerate the inputs of one evaluation.
struct Witness {
    std::string family;
    int dim = 0;
    std::uint64_t seed = 0;
    std::optional<double> rho;  ///< empty for checks that do not depend on rho
    std::optional<double> nu;
    std::optional<std::complex<double>> lambda;
    std::optional<double> s;
    std::optional<double> t;
};

struct CheckResult {
    CheckId id = CheckId::T2_5_i;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  ///< rhs - lhs, or -|lhs - rhs| for equalities
    double tolerance = 0.0;
    bool pass = true;
    Witness witness;
};

/// Inequality lhs <= rhs.
CheckResult make_inequality(CheckId id, double lhs, double rhs, double tolerance, Witness w);

/// Equality lhs == rhs; slack = -|lhs - rhs|.
CheckResult make_equality(CheckId id, double lhs, double rhs, double tolerance, Witness w);

}  // namespace radii
