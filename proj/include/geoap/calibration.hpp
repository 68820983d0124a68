#pragma once

#include <cstddef>

#include "geoap/engine.hpp"

namespace geoap {

struct CalibrationOptions {
    std::size_t max_bisection_steps = 50;
    std::size_t linear_scan_probes = 64;
    std::size_t max_bracket_expansions = 16;
    std::size_t neighbour_windows = 2;
};

struct CalibrationOutcome {
    double preference = 0.0;
    ClusteringResult result;
    std::size_t probes = 0;
    bool used_linear_scan = false;
};

/// Searches the shared preference for a converged run with exactly
/// target_k exemplars. Bisection starts on [min - range, max] of the
/// off-diagonal similarities (widened if the ends miss the target) and falls
/// back to an evenly spaced scan of the last bracket when the cluster count
/// turns out non-monotone, then to the windows of equal width on either
/// side. Throws CalibrationError carrying the closest
/// count reached.
CalibrationOutcome calibrate_preference(const SimilarityMatrix& s, const EngineConfig& config,
                                        const NeighborhoodMask* mask, std::size_t target_k,
                                        const Graph* graph = nullptr, const CalibrationOptions& options = {});

}  // namespace geoap
