#include "geoap/calibration.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "geoap/errors.hpp"

namespace geoap {

namespace {

struct Probe {
    double preference;
    std::optional<ClusteringResult> result;

    bool ok() const { return result.has_value(); }
    std::size_t k() const { return result ? result->cluster_count() : 0; }
};

class Search {
public:
    Search(const SimilarityMatrix& s, const EngineConfig& config, const NeighborhoodMask* mask,
           const Graph* graph, std::size_t target)
        : s_(s), config_(config), mask_(mask), graph_(graph), target_(target) {}

    Probe probe(double p) {
        ++probes_;
        Probe out{p, std::nullopt};
        try {
            out.result = run(s_.with_preference(p), mask_, config_, graph_);
        } catch (const ConvergenceError&) {
            return out;
        }
        const std::size_t k = out.k();
        const std::size_t gap = k > target_ ? k - target_ : target_ - k;
        if (!closest_ || gap < closest_gap_) {
            closest_ = k;
            closest_gap_ = gap;
        }
        return out;
    }

    bool hit(const Probe& p) const { return p.ok() && p.result->converged && p.k() == target_; }

    CalibrationOutcome accept(Probe p, bool scanned) const {
        return CalibrationOutcome{p.preference, std::move(*p.result), probes_, scanned};
    }

    std::size_t probes() const { return probes_; }
    std::size_t closest() const { return closest_.value_or(0); }

private:
    const SimilarityMatrix& s_;
    const EngineConfig& config_;
    const NeighborhoodMask* mask_;
    const Graph* graph_;
    std::size_t target_;
    std::size_t probes_ = 0;
    std::optional<std::size_t> closest_;
    std::size_t closest_gap_ = 0;
};

}  // namespace

CalibrationOutcome calibrate_preference(const SimilarityMatrix& s, const EngineConfig& config,
                                        const NeighborhoodMask* mask, std::size_t target_k, const Graph* graph,
                                        const CalibrationOptions& options) {
    config.validate();
    const std::size_t n = s.size();
    if (target_k < 1 || target_k > n) {
        throw ArgumentError("target cluster count must lie in [1, " + std::to_string(n) + "], got " +
                            std::to_string(target_k));
    }
    Search search(s, config, mask, graph, target_k);
    if (n == 1) {
        Probe p = search.probe(s.preference_set() ? s.preference() : 0.0);
        if (search.hit(p)) return search.accept(std::move(p), false);
        throw CalibrationError("single-point run failed", 0);
    }

    const double smin = s.min_offdiagonal();
    const double smax = s.max_offdiagonal();
    double range = smax - smin;
    if (!(range > 0.0)) range = std::max(1.0, std::abs(smax));

    double lo = smin - range;
    double hi = smax;
    Probe plo = search.probe(lo);
    for (std::size_t e = 0; e < options.max_bracket_expansions && plo.ok() && plo.k() > target_k; ++e) {
        lo -= range * std::ldexp(1.0, static_cast<int>(e));
        plo = search.probe(lo);
    }
    if (search.hit(plo)) return search.accept(std::move(plo), false);

    Probe phi = search.probe(hi);
    for (std::size_t e = 0; e < options.max_bracket_expansions && phi.ok() && phi.k() < target_k; ++e) {
        hi += range * std::ldexp(1.0, static_cast<int>(e));
        phi = search.probe(hi);
    }
    if (search.hit(phi)) return search.accept(std::move(phi), false);

    // Bisection on the cluster count; any failed, ambiguous or
    // order-violating probe hands over to the scan.
    if (plo.ok() && phi.ok() && plo.k() <= target_k && phi.k() >= target_k) {
        std::size_t klo = plo.k(), khi = phi.k();
        for (std::size_t step = 0; step < options.max_bisection_steps; ++step) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            Probe pm = search.probe(mid);
            if (search.hit(pm)) return search.accept(std::move(pm), false);
            if (!pm.ok() || pm.k() == target_k || pm.k() < klo || pm.k() > khi) break;
            if (pm.k() < target_k) {
                lo = mid;
                klo = pm.k();
            } else {
                hi = mid;
                khi = pm.k();
            }
        }
    }

    const std::size_t m = options.linear_scan_probes;
    for (std::size_t j = 1; j <= m; ++j) {
        const double p = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(m + 1);
        Probe pj = search.probe(p);
        if (search.hit(pj)) return search.accept(std::move(pj), true);
    }
    // Cluster count is not monotone in the preference on tie-heavy data;
    // try the neighbouring windows before giving up.
    const double width = hi - lo;
    for (std::size_t w = 1; w <= options.neighbour_windows; ++w) {
        for (const double base : {hi + width * static_cast<double>(w - 1), lo - width * static_cast<double>(w)}) {
            for (std::size_t j = 1; j <= m; ++j) {
                const double p = base + width * static_cast<double>(j) / static_cast<double>(m + 1);
                Probe pj = search.probe(p);
                if (search.hit(pj)) return search.accept(std::move(pj), true);
            }
        }
    }
    throw CalibrationError("no preference in [" + std::to_string(lo) + ", " + std::to_string(hi) +
                               "] yields a converged run with " + std::to_string(target_k) + " clusters (closest: " +
                               std::to_string(search.closest()) + ", " + std::to_string(search.probes()) +
                               " probes)",
                           search.closest());
}

}  // namespace geoap
