#include "radii/check_result.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "radii/error.hpp"

namespace radii {

namespace {

constexpr std::array<std::string_view, kCheckCount> kNames = {
    "T2.5.i",      "T2.5.ii",     "T2.5.iii",    "T2.5.iv",        "T2.5.v",          "T2.5.vi",
    "T2.5.vii-sym", "T2.5.vii-limit", "T2.6",    "C2.7.a",         "C2.7.b",          "C2.9",
    "T2.10",       "C2.11",       "C2.12.a",     "C2.12.b",        "C2.13",           "T2.14.lower",
    "T2.14.upper", "C2.15.lower", "C2.15.upper", "L.heinz",        "L.buzano",        "L.mixed-schwarz",
    "L.positive-square", "O.sandwich", "O.nilpotent", "O.normal", "O.block-identities",
};

std::array<CheckId, kCheckCount> all_ids() {
    std::array<CheckId, kCheckCount> out{};
    for (std::size_t k = 0; k < kCheckCount; ++k) {
        out[k] = static_cast<CheckId>(k);
    }
    return out;
}

}  // namespace

const std::array<CheckId, kCheckCount>& enumerate_checks() {
    static const auto ids = all_ids();
    return ids;
}

std::string_view to_string(CheckId id) { return kNames[static_cast<std::size_t>(id)]; }

CheckId parse_check_id(std::string_view name) {
    for (std::size_t k = 0; k < kCheckCount; ++k) {
        if (kNames[k] == name) {
            return static_cast<CheckId>(k);
        }
    }
    throw ParseError("unknown check id '" + std::string(name) + "'");
}

CheckResult make_inequality(CheckId id, double lhs, double rhs, double tolerance, Witness w) {
    CheckResult r;
    r.id = id;
    r.lhs = lhs;
    r.rhs = rhs;
    r.slack = rhs - lhs;
    r.tolerance = tolerance;
    // NaN slack must fail
    r.pass = r.slack >= -tolerance;
    r.witness = std::move(w);
    return r;
}

CheckResult make_equality(CheckId id, double lhs, double rhs, double tolerance, Witness w) {
    CheckResult r = make_inequality(id, lhs, rhs, tolerance, std::move(w));
    r.slack = -std::abs(lhs - rhs);
    r.pass = r.slack >= -tolerance;
    return r;
}

}  // namespace radii
