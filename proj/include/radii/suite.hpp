#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "radii/check_result.hpp"
#include "radii/complex_matrix.hpp"
#include "radii/ensemble.hpp"

namespace radii {

struct WitnessRecord {
    Witness witness;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    double tolerance = 0.0;
    bool pass = true;
    std::string error;  ///< set when the evaluation itself threw
};

/// Aggregate over every evaluation of one check.
///
/// The representative (min_slack, tolerance) is the evaluation closest to
/// failing relative to its own tolerance, i.e. with the smallest
/// slack + tolerance, so `pass == (min_slack >= -tolerance)` always holds.
struct CheckSummary {
    CheckId id = CheckId::T2_5_i;
    std::size_t count = 0;
    std::optional<double> min_slack;  ///< empty when count == 0
    double tolerance = 0.0;
    bool pass = true;
    std::vector<WitnessRecord> worst;
};

struct SuiteReport {
    EnsembleConfig config;
    std::vector<CheckSummary> checks;  ///< one per CheckId, in enumerate_checks() order
    bool pass = true;
    double elapsed_seconds = 0.0;  ///< not serialized; reports must be reproducible byte for byte
};

enum class WitnessOrder {
    margin,  ///< run_suite: closest to failing first
    slack,   ///< search_counterexamples: smallest raw slack first
};

/// Every selected check over families x dims x samples x grids. Worker count
/// comes from RADII_THREADS (default: hardware concurrency); the result does
/// not depend on it.
SuiteReport run_suite(const EnsembleConfig& config);

/// As run_suite, but keeps the config.worst_k smallest-slack witnesses per
/// check for sharpness studies.
SuiteReport search_counterexamples(const EnsembleConfig& config);

/// The suite applied to a single user-supplied matrix. Auxiliary inputs are
/// drawn from config.master_seed; O.nilpotent and O.normal run only when X
/// has the matching structure.
SuiteReport run_on_matrix(const ComplexMatrix& x, const EnsembleConfig& config);

/// Deterministic JSON document.
std::string report_to_json(const SuiteReport& report);

/// Number of worker threads requested through RADII_THREADS.
unsigned thread_count();

}  // namespace radii
