#pragma once

// Random instance builders shared by the unit, property and acceptance tests.

#include <cstddef>
#include <random>
#include <vector>

#include "geoap/affinity.hpp"
#include "geoap/graph.hpp"

namespace geoap::testing {

inline Graph random_graph(std::mt19937_64& rng, std::size_t n, double edge_prob) {
    std::bernoulli_distribution coin(edge_prob);
    std::vector<Edge> edges;
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v)
            if (coin(rng)) edges.emplace_back(u, v);
    return Graph(n, edges);
}

inline FeatureMatrix random_features(std::mt19937_64& rng, std::size_t n, std::size_t dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    FeatureMatrix f(n, dim);
    for (double& x : f.values()) x = gauss(rng);
    return f;
}

/// Euclidean similarities of random points with a preference drawn between
/// the smallest and the largest off-diagonal value.
inline SimilarityMatrix random_similarity(std::mt19937_64& rng, std::size_t n) {
    SimilarityMatrix s = build_similarity(random_features(rng, n, 3), FeatureMetricKind::Euclidean);
    std::uniform_real_distribution<double> pick(s.min_offdiagonal(), s.max_offdiagonal());
    return s.with_preference(pick(rng));
}

/// Symmetric reflexive mask with each off-diagonal pair kept with probability p.
inline NeighborhoodMask random_mask(std::mt19937_64& rng, std::size_t n, double p) {
    std::bernoulli_distribution coin(p);
    NeighborhoodMask m(n, TopoDistanceKind::ShortestPath, 1.0);
    for (VertexId i = 0; i < n; ++i) {
        m.set(i, i, true);
        for (VertexId k = i + 1; k < n; ++k) {
            const bool in = coin(rng);
            m.set(i, k, in);
            m.set(k, i, in);
        }
    }
    return m;
}

inline DenseMatrix<double> random_matrix(std::mt19937_64& rng, std::size_t n, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    DenseMatrix<double> m(n, n);
    for (double& x : m.values()) x = u(rng);
    return m;
}

}  // namespace geoap::testing
