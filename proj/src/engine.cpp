#include "geoap/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "geoap/errors.hpp"
#include "geoap/kernels.hpp"

namespace geoap {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_preference(const SimilarityMatrix& s) {
    if (!s.preference_set()) throw ArgumentError("similarity matrix has no preference set");
}

void require_mask_size(const NeighborhoodMask& mask, std::size_t n) {
    if (mask.size() != n) {
        throw ArgumentError("neighborhood mask covers " + std::to_string(mask.size()) + " vertices, expected " +
                            std::to_string(n));
    }
}

}  // namespace

void EngineConfig::validate() const {
    if (!(damping >= 0.0 && damping < 1.0)) {
        throw ArgumentError("damping must lie in [0, 1), got " + std::to_string(damping));
    }
    if (max_iter == 0) throw ArgumentError("max_iter must be positive");
    if (conv_iter == 0) throw ArgumentError("conv_iter must be positive");
    if (conv_iter > max_iter) throw ArgumentError("conv_iter must not exceed max_iter");
}

MessageState MessageState::zeros(std::size_t n) {
    return MessageState{DenseMatrix<double>(n, n, 0.0), DenseMatrix<double>(n, n, 0.0), 0};
}

MessageState update_responsibilities(const SimilarityMatrix& s, const MessageState& state) {
    require_preference(s);
    MessageState out = state;
    out.r.fill(0.0);
    kernels::serial::update_responsibilities(s.values(), state.a, out.r, 0.0);
    return out;
}

MessageState update_availabilities_standard(const MessageState& state) {
    MessageState out = state;
    out.a.fill(0.0);
    std::vector<double> support;
    kernels::serial::update_availabilities(state.r, nullptr, out.a, 0.0, support);
    return out;
}

MessageState update_availabilities_geometric(const MessageState& state, const NeighborhoodMask& mask) {
    require_mask_size(mask, state.size());
    MessageState out = state;
    out.a.fill(0.0);
    std::vector<double> support;
    kernels::serial::update_availabilities(state.r, &mask, out.a, 0.0, support);
    return out;
}

DenseMatrix<double> damp(const DenseMatrix<double>& old_values, const DenseMatrix<double>& new_values,
                         double damping) {
    if (!(damping >= 0.0 && damping < 1.0)) {
        throw ArgumentError("damping must lie in [0, 1), got " + std::to_string(damping));
    }
    if (old_values.rows() != new_values.rows() || old_values.cols() != new_values.cols()) {
        throw ArgumentError("damping operands differ in shape");
    }
    DenseMatrix<double> out(old_values.rows(), old_values.cols());
    for (std::size_t i = 0; i < out.rows(); ++i)
        for (std::size_t j = 0; j < out.cols(); ++j)
            out(i, j) = damping * old_values(i, j) + (1.0 - damping) * new_values(i, j);
    return out;
}

Labels estimate_exemplars(const SimilarityMatrix& s, const MessageState& state) {
    require_preference(s);
    Labels labels(s.size());
    kernels::serial::row_argmax(s.values(), state.a, labels);
    return labels;
}

std::vector<VertexId> exemplar_set(const Labels& labels) {
    std::vector<VertexId> e;
    for (VertexId i = 0; i < labels.size(); ++i)
        if (labels[i] == i) e.push_back(i);
    return e;
}

Labels assign_geometric(const SimilarityMatrix& s, const MessageState& state, const NeighborhoodMask* mask,
                        std::span<const VertexId> exemplars) {
    if (exemplars.empty()) throw ConvergenceError("no exemplars to assign points to");
    const std::size_t n = s.size();
    if (mask != nullptr) require_mask_size(*mask, n);
    Labels labels(n);
    for (VertexId i = 0; i < n; ++i) {
        double best_near = kNegInf, best_any = kNegInf;
        std::optional<VertexId> near, any;
        for (VertexId e : exemplars) {
            const double v = state.a(i, e) + s(i, e);
            if (!any || v > best_any) {
                best_any = v;
                any = e;
            }
            if ((mask == nullptr || mask->contains(i, e)) && (!near || v > best_near)) {
                best_near = v;
                near = e;
            }
        }
        labels[i] = near ? *near : *any;
    }
    return labels;
}

Labels smooth_labels(const Labels& labels, const Graph& g) {
    if (labels.size() != g.size()) {
        throw ArgumentError("label vector has " + std::to_string(labels.size()) + " entries for a graph of " +
                            std::to_string(g.size()) + " vertices");
    }
    Labels out(labels.size());
    std::vector<VertexId> votes;
    for (VertexId v = 0; v < labels.size(); ++v) {
        votes.clear();
        votes.push_back(labels[v]);
        for (VertexId w : g.neighbors(v)) votes.push_back(labels[w]);
        std::sort(votes.begin(), votes.end());

        std::size_t best_count = 0, own_count = 0;
        VertexId best_label = labels[v];
        for (std::size_t i = 0; i < votes.size();) {
            std::size_t j = i;
            while (j < votes.size() && votes[j] == votes[i]) ++j;
            const std::size_t c = j - i;
            if (votes[i] == labels[v]) own_count = c;
            if (c > best_count) {  // ascending scan: first leader is the smallest label
                best_count = c;
                best_label = votes[i];
            }
            i = j;
        }
        out[v] = own_count == best_count ? labels[v] : best_label;
    }
    return out;
}

SimilarityMatrix jitter_similarities(const SimilarityMatrix& s, std::uint64_t seed) {
    std::mt19937_64 engine(seed);
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr double floor = std::numeric_limits<double>::min() * 100.0;
    DenseMatrix<double> v = s.values();
    for (double& x : v.values()) {
        const double u = static_cast<double>(engine() >> 11) * 0x1.0p-52 - 1.0;
        x += (eps * std::abs(x) + floor) * u;
    }
    return SimilarityMatrix(std::move(v), s.preference_set());
}

ClusteringResult run(const SimilarityMatrix& original, const NeighborhoodMask* mask, const EngineConfig& config,
                     const Graph* graph, const TraceCallback& trace) {
    config.validate();
    require_preference(original);
    const std::size_t n = original.size();
    if (n == 0) throw ArgumentError("cannot cluster an empty dataset");
    const bool geometric = config.mode == Mode::Geometric;
    if (geometric && mask == nullptr) throw ArgumentError("geometric mode requires a neighborhood mask");
    if (!geometric && mask != nullptr) throw ArgumentError("standard mode takes no neighborhood mask");
    if (geometric) require_mask_size(*mask, n);
    const bool smooth = geometric && config.smoothing;
    if (smooth) {
        if (graph == nullptr) throw ArgumentError("label smoothing requires the graph");
        if (graph->size() != n) throw ArgumentError("graph size does not match the similarity matrix");
    }

    ClusteringResult result;
    if (n == 1) {
        result.labels = result.assigned_labels = {0};
        result.exemplars = {0};
        result.converged = true;
        result.net_similarity = original(0, 0);
        return result;
    }

    std::optional<SimilarityMatrix> jittered;
    if (config.jitter_seed) jittered = jitter_similarities(original, *config.jitter_seed);
    const SimilarityMatrix& s = jittered ? *jittered : original;

    MessageState state = MessageState::zeros(n);
    std::vector<double> support(n);
    Labels labels(n);
    std::vector<VertexId> exemplars, previous;
    std::size_t stable = 0;

    for (std::size_t it = 1; it <= config.max_iter; ++it) {
        const auto rs = kernels::update_responsibilities(s.values(), state.a, state.r, config.damping);
        const auto as = kernels::update_availabilities(state.r, mask, state.a, config.damping, support);
        state.iteration = it;
        if (!rs.finite || !as.finite) {
            throw ConvergenceError("messages diverged (non-finite value) at iteration " + std::to_string(it));
        }
        kernels::row_argmax(s.values(), state.a, labels);
        exemplars = exemplar_set(labels);
        stable = (it > 1 && exemplars == previous) ? stable + 1 : 1;
        previous = exemplars;
        if (trace) trace({it, exemplars.size(), std::max(rs.max_delta, as.max_delta)});
        if (!exemplars.empty() && stable >= config.conv_iter) {
            result.converged = true;
            break;
        }
    }
    result.iterations_run = state.iteration;
    if (exemplars.empty()) {
        throw ConvergenceError("no exemplars emerged after " + std::to_string(state.iteration) + " iterations");
    }

    result.exemplars = exemplars;
    result.assigned_labels = assign_geometric(s, state, geometric ? mask : nullptr, exemplars);
    result.net_similarity = net_similarity(original, result.assigned_labels, mask, config.mode);
    if (smooth) {
        result.labels = smooth_labels(result.assigned_labels, *graph);
        result.smoothed = true;
    } else {
        result.labels = result.assigned_labels;
    }
    return result;
}

std::optional<double> net_similarity(const SimilarityMatrix& s, const Labels& labels, const NeighborhoodMask* mask,
                                     Mode mode) {
    require_preference(s);
    const std::size_t n = s.size();
    if (labels.size() != n) throw ArgumentError("label vector length does not match the similarity matrix");
    const bool geometric = mode == Mode::Geometric;
    if (geometric) {
        if (mask == nullptr) throw ArgumentError("geometric net similarity requires a neighborhood mask");
        require_mask_size(*mask, n);
    }
    double total = 0.0;
    for (VertexId i = 0; i < n; ++i) {
        const VertexId c = labels[i];
        if (c >= n) throw ArgumentError("label " + std::to_string(c) + " out of range");
        if (labels[c] != c) return std::nullopt;
        if (geometric && !mask->contains(i, c)) return std::nullopt;
        total += s(i, c);
    }
    return total;
}

std::optional<OptimumConfiguration> brute_force_optimum(const SimilarityMatrix& s, const NeighborhoodMask* mask,
                                                        Mode mode) {
    require_preference(s);
    const std::size_t n = s.size();
    if (n == 0 || n > kBruteForceMaxPoints) {
        throw ArgumentError("exhaustive search supports 1.." + std::to_string(kBruteForceMaxPoints) +
                            " points, got " + std::to_string(n));
    }
    const bool geometric = mode == Mode::Geometric;
    if (geometric) {
        if (mask == nullptr) throw ArgumentError("geometric search requires a neighborhood mask");
        require_mask_size(*mask, n);
    }

    std::optional<OptimumConfiguration> best;
    Labels labels(n);
    for (std::uint32_t subset = 1; subset < (1u << n); ++subset) {
        double total = 0.0;
        bool feasible = true;
        for (VertexId i = 0; i < n && feasible; ++i) {
            if (subset & (1u << i)) {
                labels[i] = i;
                total += s(i, i);
                continue;
            }
            std::optional<VertexId> pick;
            for (VertexId e = 0; e < n; ++e) {
                if (!(subset & (1u << e))) continue;
                if (geometric && !mask->contains(i, e)) continue;
                if (!pick || s(i, e) > s(i, *pick)) pick = e;
            }
            if (!pick) {
                feasible = false;
            } else {
                labels[i] = *pick;
                total += s(i, *pick);
            }
        }
        if (feasible && (!best || total > best->value)) best = OptimumConfiguration{labels, total};
    }
    return best;
}

const char* to_string(Mode mode) {
    return mode == Mode::Standard ? "standard" : "geometric";
}

Mode parse_mode(const std::string& name) {
    if (name == "standard") return Mode::Standard;
    if (name == "geometric") return Mode::Geometric;
    throw ArgumentError("unknown mode '" + name + "'");
}

}  // namespace geoap
