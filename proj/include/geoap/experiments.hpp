#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "geoap/affinity.hpp"
#include "geoap/calibration.hpp"
#include "geoap/data_io.hpp"
#include "geoap/engine.hpp"
#include "geoap/evaluation.hpp"
#include "geoap/graph.hpp"

namespace geoap {

/// Everything a single clustering run needs besides the data.
struct RunSpec {
    FeatureMetricKind feature_metric = FeatureMetricKind::Euclidean;
    TopoDistanceKind topo = TopoDistanceKind::ShortestPath;
    double tau = 1.0;
    EngineConfig engine;
    std::optional<double> preference;    // explicit shared preference
    std::optional<std::size_t> target_k;  // calibrate instead
};

struct RunOutcome {
    ClusteringResult result;
    double preference = 0.0;
    std::size_t calibration_probes = 0;
};

/// Runs the engine on prepared inputs. Preference precedence: target_k
/// (calibrated), then an explicit value, then the median similarity.
RunOutcome cluster_with(const SimilarityMatrix& similarity, const Graph* graph, const RunSpec& spec);

/// Loads nothing; builds similarity from dataset features and clusters.
RunOutcome cluster_dataset(const Dataset& dataset, const RunSpec& spec);

struct SweepRow {
    double axis = 0.0;
    std::optional<Metrics> metrics;
    std::optional<double> preference;
    std::size_t clusters = 0;
    std::string error;  // non-empty for failed cells
};

struct SweepReport {
    std::string axis_name;
    std::vector<SweepRow> rows;
    std::optional<std::size_t> optimum;  // row index
};

/// Highest NMI wins; exact ties go to the smallest axis value.
std::optional<std::size_t> select_optimum(std::span<const SweepRow> rows);

/// Geometric runs over a grid of thresholds, each calibrated to target_k.
SweepReport sweep_tau(const Dataset& dataset, const SimilarityMatrix& similarity, TopoDistanceKind topo,
                      std::span<const double> grid, std::size_t target_k, const EngineConfig& engine);

/// One calibrated run per requested cluster count.
SweepReport sweep_k(const Dataset& dataset, const SimilarityMatrix& similarity, const RunSpec& spec,
                    std::span<const std::size_t> ks);

/// Portable permutation source: std::mt19937_64 (its output sequence is
/// fixed by the C++ standard), unbiased bounded draws by rejection, and a
/// descending Fisher-Yates shuffle. Identical seeds give identical
/// permutations on every platform.
class PermutationGenerator {
public:
    explicit PermutationGenerator(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bounded(std::uint64_t n);  // uniform in [0, n)
    std::vector<VertexId> next(std::size_t n);

private:
    std::mt19937_64 engine_;
};

struct AblationRun {
    std::size_t index = 0;
    std::optional<Metrics> metrics;
    std::string error;
};

struct AblationReport {
    std::uint64_t seed = 0;
    std::size_t repetitions = 0;  // completed runs
    std::size_t failures = 0;
    std::vector<AblationRun> runs;
    std::optional<Metrics> mean;
    std::optional<Metrics> stddev;  // sample standard deviation
};

struct AblationOptions {
    std::size_t repetitions = 100;
    std::uint64_t seed = 0;
    bool identity_permutation = false;  // control run on the true network
};

/// Relabels the graph vertices at random (features and truth stay put),
/// rebuilds the neighborhood, calibrates to target_k and records metrics.
AblationReport ablation(const Dataset& dataset, const SimilarityMatrix& similarity, const RunSpec& spec,
                        const AblationOptions& options);

nlohmann::ordered_json to_json(const SweepReport& report);
nlohmann::ordered_json to_json(const AblationReport& report);

}  // namespace geoap
