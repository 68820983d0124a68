#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace geoap {

/// Arbitrary integer ids; only equality between entries matters.
using LabelVector = std::vector<std::int64_t>;

/// counts[l][h] = number of points in predicted cluster l with true class h.
/// Rows and columns follow the ascending order of the distinct ids.
struct MatchingMatrix {
    std::vector<std::int64_t> clusters;
    std::vector<std::int64_t> classes;
    std::vector<std::vector<std::size_t>> counts;
    std::size_t n = 0;

    std::vector<std::size_t> cluster_sizes() const;
    std::vector<std::size_t> class_sizes() const;
};

MatchingMatrix matching_matrix(std::span<const std::int64_t> pred, std::span<const std::int64_t> truth);

/// Normalized mutual information 2 I / (H(pred) + H(truth)) in [0, 1].
double nmi(std::span<const std::int64_t> pred, std::span<const std::int64_t> truth);

/// Percentage of points whose cluster's plurality class matches their own.
double classification_rate(std::span<const std::int64_t> pred, std::span<const std::int64_t> truth);

/// Unweighted mean of per-class F1 under the plurality cluster-to-class map.
double macro_f1(std::span<const std::int64_t> pred, std::span<const std::int64_t> truth);

struct Metrics {
    double nmi;  // [0, 1]
    double cr;   // percent
    double f1;   // [0, 1]

    friend bool operator==(const Metrics&, const Metrics&) = default;
};

Metrics evaluate(std::span<const std::int64_t> pred, std::span<const std::int64_t> truth);

}  // namespace geoap
