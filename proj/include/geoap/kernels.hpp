#pragma once

// Dense O(N^2) message sweeps. The top-level functions are OpenMP-parallel;
// geoap::kernels::serial holds plain-loop versions of the same arithmetic,
// kept as the reference the parallel kernels are tested against bit for bit.

#include <cstddef>
#include <span>
#include <vector>

#include "geoap/graph.hpp"
#include "geoap/matrix.hpp"

namespace geoap::kernels {

struct SweepStats {
    double max_delta = 0.0;  // max |new - old| over the damped entries
    bool finite = true;
};

/// r <- damping * r + (1 - damping) * (s(i,k) - max_{j != k} [s(i,j) + a(i,j)])
SweepStats update_responsibilities(const DenseMatrix<double>& s, const DenseMatrix<double>& a,
                                   DenseMatrix<double>& r, double damping);

/// Availability sweep, damped in place. A null mask gives standard AP;
/// otherwise entries with k outside the neighborhood of i take the
/// penalized value -max(0, x). column_support is scratch of length n.
SweepStats update_availabilities(const DenseMatrix<double>& r, const NeighborhoodMask* mask,
                                 DenseMatrix<double>& a, double damping,
                                 std::vector<double>& column_support);

/// labels[i] = argmax_j a(i,j) + s(i,j), lowest index on ties.
void row_argmax(const DenseMatrix<double>& s, const DenseMatrix<double>& a, std::span<std::size_t> labels);

namespace serial {

SweepStats update_responsibilities(const DenseMatrix<double>& s, const DenseMatrix<double>& a,
                                   DenseMatrix<double>& r, double damping);
SweepStats update_availabilities(const DenseMatrix<double>& r, const NeighborhoodMask* mask,
                                 DenseMatrix<double>& a, double damping,
                                 std::vector<double>& column_support);
void row_argmax(const DenseMatrix<double>& s, const DenseMatrix<double>& a, std::span<std::size_t> labels);

}  // namespace serial

/// Number of OpenMP threads the parallel kernels will use (1 without OpenMP).
int thread_count();

}  // namespace geoap::kernels
