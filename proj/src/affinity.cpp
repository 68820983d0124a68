#include "geoap/affinity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "geoap/errors.hpp"

namespace geoap {

double feature_distance(std::span<const double> p, std::span<const double> q, FeatureMetricKind kind) {
    if (p.size() != q.size()) {
        throw ArgumentError("feature vectors differ in dimension (" + std::to_string(p.size()) + " vs " +
                            std::to_string(q.size()) + ")");
    }
    switch (kind) {
        case FeatureMetricKind::Euclidean: {
            double acc = 0.0;
            for (std::size_t i = 0; i < p.size(); ++i) {
                const double d = p[i] - q[i];
                acc += d * d;
            }
            return std::sqrt(acc);
        }
        case FeatureMetricKind::Manhattan: {
            double acc = 0.0;
            for (std::size_t i = 0; i < p.size(); ++i) acc += std::abs(p[i] - q[i]);
            return acc;
        }
        case FeatureMetricKind::Cosine: {
            double dot = 0.0, np = 0.0, nq = 0.0;
            for (std::size_t i = 0; i < p.size(); ++i) {
                dot += p[i] * q[i];
                np += p[i] * p[i];
                nq += q[i] * q[i];
            }
            if (np == 0.0 || nq == 0.0) return 1.0;
            // clamp: rounding can push identical directions slightly negative
            return std::max(0.0, 1.0 - dot / (std::sqrt(np) * std::sqrt(nq)));
        }
    }
    return 0.0;
}

SimilarityMatrix::SimilarityMatrix(DenseMatrix<double> values, bool preference_set)
    : s_(std::move(values)), preference_set_(preference_set) {
    if (s_.rows() != s_.cols()) throw ArgumentError("similarity matrix must be square");
}

double SimilarityMatrix::min_offdiagonal() const {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j)
            if (i != j) m = std::min(m, s_(i, j));
    return m;
}

double SimilarityMatrix::max_offdiagonal() const {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j)
            if (i != j) m = std::max(m, s_(i, j));
    return m;
}

double SimilarityMatrix::median_offdiagonal() const {
    const std::size_t n = size();
    if (n < 2) throw ArgumentError("median of off-diagonal similarities needs n >= 2");
    std::vector<double> v;
    v.reserve(n * (n - 1));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) v.push_back(s_(i, j));
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    const double upper = v[mid];
    if (v.size() % 2 == 1) return upper;
    const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

SimilarityMatrix SimilarityMatrix::with_preference(double p) const {
    SimilarityMatrix out = *this;
    for (std::size_t k = 0; k < size(); ++k) out.s_(k, k) = p;
    out.preference_set_ = true;
    return out;
}

SimilarityMatrix build_similarity(const FeatureMatrix& features, FeatureMetricKind kind) {
    const std::size_t n = features.rows();
    if (n < 2) throw ArgumentError("similarity needs at least two points, got " + std::to_string(n));
    DenseMatrix<double> s(n, n, 0.0);
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t si = 0; si < static_cast<std::ptrdiff_t>(n); ++si) {
        const auto i = static_cast<std::size_t>(si);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = feature_distance(features.row(i), features.row(j), kind);
            s(i, j) = -d;
            s(j, i) = -d;
        }
    }
    return SimilarityMatrix(std::move(s), false);
}

SimilarityMatrix set_shared_preference(SimilarityMatrix s, double p) {
    return s.with_preference(p);
}

const char* to_string(FeatureMetricKind kind) {
    switch (kind) {
        case FeatureMetricKind::Euclidean: return "euclidean";
        case FeatureMetricKind::Manhattan: return "manhattan";
        case FeatureMetricKind::Cosine: return "cosine";
    }
    return "?";
}

FeatureMetricKind parse_feature_metric(const std::string& name) {
    if (name == "euclidean") return FeatureMetricKind::Euclidean;
    if (name == "manhattan") return FeatureMetricKind::Manhattan;
    if (name == "cosine") return FeatureMetricKind::Cosine;
    throw ArgumentError("unknown feature metric '" + name + "'");
}

}  // namespace geoap
