#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geoap/affinity.hpp"
#include "geoap/graph.hpp"
#include "geoap/matrix.hpp"

namespace geoap {

enum class Mode { Standard, Geometric };

struct EngineConfig {
    double damping = 0.9;
    std::size_t max_iter = 1000;
    std::size_t conv_iter = 100;
    Mode mode = Mode::Standard;
    bool smoothing = true;  // geometric runs only
    /// When set, messages run on similarities perturbed by jitter_similarities
    /// with this seed. Off by default: ties then resolve to the lowest index.
    std::optional<std::uint64_t> jitter_seed;

    void validate() const;
};

struct MessageState {
    DenseMatrix<double> r;  // responsibilities
    DenseMatrix<double> a;  // availabilities
    std::size_t iteration = 0;

    static MessageState zeros(std::size_t n);
    std::size_t size() const noexcept { return r.rows(); }
};

using Labels = std::vector<VertexId>;

struct ClusteringResult {
    Labels labels;           // final labels (smoothed when smoothing ran)
    Labels assigned_labels;  // labels before smoothing
    std::vector<VertexId> exemplars;  // ascending
    std::size_t iterations_run = 0;
    bool converged = false;
    std::optional<double> net_similarity;  // nullopt: configuration violates a constraint
    bool smoothed = false;

    std::size_t cluster_count() const noexcept { return exemplars.size(); }
};

struct IterationTrace {
    std::size_t iteration;
    std::size_t exemplar_count;
    double max_delta;
};
using TraceCallback = std::function<void(const IterationTrace&)>;

/// Undamped responsibility update; availabilities are copied through.
MessageState update_responsibilities(const SimilarityMatrix& s, const MessageState& state);

/// Undamped availability updates; responsibilities are copied through.
MessageState update_availabilities_standard(const MessageState& state);
MessageState update_availabilities_geometric(const MessageState& state, const NeighborhoodMask& mask);

/// Availability for k outside the neighborhood of i, where
/// x = r(k,k) + sum_{i' not in {i,k}} max(0, r(i',k)).
inline double outside_availability(double x) { return -std::max(0.0, x); }
/// Same quantity written as the in-neighborhood value minus the penalty x.
inline double outside_availability_penalty_form(double x) { return std::min(0.0, x) - x; }

DenseMatrix<double> damp(const DenseMatrix<double>& old_values, const DenseMatrix<double>& new_values,
                         double damping);

/// argmax_j a(i,j) + s(i,j) per point, lowest index on ties.
Labels estimate_exemplars(const SimilarityMatrix& s, const MessageState& state);

/// Points that label themselves, ascending.
std::vector<VertexId> exemplar_set(const Labels& labels);

/// Assigns each point to its best exemplar inside its neighborhood, falling
/// back to the best exemplar overall. A null mask restricts to exemplars only.
Labels assign_geometric(const SimilarityMatrix& s, const MessageState& state, const NeighborhoodMask* mask,
                        std::span<const VertexId> exemplars);

/// One synchronous plurality vote over graph neighbors plus the vertex
/// itself. Ties keep the vertex's own label when it is among the leaders,
/// otherwise the smallest label wins.
Labels smooth_labels(const Labels& labels, const Graph& g);

/// Adds seeded noise of relative size ~1e-16 (plus a denormal floor) to
/// every entry, including the preferences. Exactly mirrored points, such as
/// the two members of an isolated pair, otherwise keep identical messages
/// and never settle on one exemplar. Portable: mt19937_64 mapped to
/// uniform [-1, 1).
SimilarityMatrix jitter_similarities(const SimilarityMatrix& s, std::uint64_t seed);

/// Full message-passing run. mask must be given iff config.mode is
/// Geometric; graph is required when geometric smoothing is on.
ClusteringResult run(const SimilarityMatrix& s, const NeighborhoodMask* mask, const EngineConfig& config,
                     const Graph* graph = nullptr, const TraceCallback& trace = {});

/// Net similarity sum_i s(i, c_i), or nullopt when the configuration breaks
/// exemplar self-reference or (geometric) the neighborhood constraint.
std::optional<double> net_similarity(const SimilarityMatrix& s, const Labels& labels,
                                     const NeighborhoodMask* mask, Mode mode);

struct OptimumConfiguration {
    Labels labels;
    double value;
};

inline constexpr std::size_t kBruteForceMaxPoints = 15;

/// Exhaustive maximization of the net similarity over all exemplar subsets.
/// nullopt when no subset is feasible under the mask.
std::optional<OptimumConfiguration> brute_force_optimum(const SimilarityMatrix& s, const NeighborhoodMask* mask,
                                                        Mode mode);

const char* to_string(Mode mode);
Mode parse_mode(const std::string& name);

}  // namespace geoap
