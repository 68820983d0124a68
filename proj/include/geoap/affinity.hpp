#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "geoap/matrix.hpp"

namespace geoap {

/// One row per data point.
using FeatureMatrix = DenseMatrix<double>;

enum class FeatureMetricKind { Euclidean, Manhattan, Cosine };

/// Euclidean is the conventional sqrt(sum (p_i - q_i)^2); cosine of a zero
/// vector is taken as 1.
double feature_distance(std::span<const double> p, std::span<const double> q, FeatureMetricKind kind);

/// Square similarity matrix: negated feature distances off the diagonal and
/// one shared preference on it.
class SimilarityMatrix {
public:
    SimilarityMatrix() = default;
    explicit SimilarityMatrix(DenseMatrix<double> values, bool preference_set = false);

    std::size_t size() const noexcept { return s_.rows(); }
    double operator()(std::size_t i, std::size_t j) const noexcept { return s_(i, j); }
    const DenseMatrix<double>& values() const noexcept { return s_; }
    bool preference_set() const noexcept { return preference_set_; }
    /// Shared diagonal value; meaningful only once preference_set().
    double preference() const noexcept { return s_.empty() ? 0.0 : s_(0, 0); }

    double min_offdiagonal() const;
    double max_offdiagonal() const;
    double median_offdiagonal() const;

    SimilarityMatrix with_preference(double p) const;

private:
    DenseMatrix<double> s_;
    bool preference_set_ = false;
};

SimilarityMatrix build_similarity(const FeatureMatrix& features, FeatureMetricKind kind);

SimilarityMatrix set_shared_preference(SimilarityMatrix s, double p);

const char* to_string(FeatureMetricKind kind);
FeatureMetricKind parse_feature_metric(const std::string& name);

}  // namespace geoap
