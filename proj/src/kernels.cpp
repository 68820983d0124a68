#include "geoap/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace geoap::kernels {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::size_t kColumnBlock = 256;

inline double damped(double old_value, double new_value, double damping) {
    return damping * old_value + (1.0 - damping) * new_value;
}

// Returns {max delta, finite} for row i after writing it.
inline SweepStats responsibility_row(std::span<const double> s, std::span<const double> a, std::span<double> r,
                                     double damping) {
    const std::size_t n = s.size();
    double best = kNegInf;
    double second = kNegInf;
    std::size_t best_j = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const double v = a[j] + s[j];
        if (v > best) {
            second = best;
            best = v;
            best_j = j;
        } else if (v > second) {
            second = v;
        }
    }
    SweepStats st;
    for (std::size_t k = 0; k < n; ++k) {
        const double fresh = s[k] - (k == best_j ? second : best);
        const double next = damped(r[k], fresh, damping);
        st.max_delta = std::max(st.max_delta, std::abs(next - r[k]));
        st.finite = st.finite && std::isfinite(next);
        r[k] = next;
    }
    return st;
}

inline void accumulate_support(std::span<const double> r_row, std::size_t i, std::size_t k0, std::size_t k1,
                               std::vector<double>& support) {
    for (std::size_t k = k0; k < k1; ++k) {
        if (k != i) support[k] += std::max(0.0, r_row[k]);
    }
}

inline SweepStats availability_row(const DenseMatrix<double>& r, std::size_t i, const NeighborhoodMask* mask,
                                   std::span<double> a, double damping, const std::vector<double>& support) {
    const std::size_t n = a.size();
    const auto r_row = r.row(i);
    SweepStats st;
    for (std::size_t k = 0; k < n; ++k) {
        double fresh;
        if (k == i) {
            fresh = support[k];
        } else {
            const double x = r(k, k) + (support[k] - std::max(0.0, r_row[k]));
            if (mask == nullptr || mask->contains(i, k)) {
                fresh = std::min(0.0, x);
            } else {
                fresh = -std::max(0.0, x);
            }
        }
        const double next = damped(a[k], fresh, damping);
        st.max_delta = std::max(st.max_delta, std::abs(next - a[k]));
        st.finite = st.finite && std::isfinite(next);
        a[k] = next;
    }
    return st;
}

inline std::size_t argmax_row(std::span<const double> s, std::span<const double> a) {
    std::size_t best_j = 0;
    double best = kNegInf;
    for (std::size_t j = 0; j < s.size(); ++j) {
        const double v = a[j] + s[j];
        if (v > best) {
            best = v;
            best_j = j;
        }
    }
    return best_j;
}

}  // namespace

SweepStats update_responsibilities(const DenseMatrix<double>& s, const DenseMatrix<double>& a,
                                   DenseMatrix<double>& r, double damping) {
    const auto n = static_cast<std::ptrdiff_t>(s.rows());
    double max_delta = 0.0;
    bool finite = true;
#pragma omp parallel for schedule(static) reduction(max : max_delta) reduction(&& : finite)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto row = static_cast<std::size_t>(i);
        const SweepStats st = responsibility_row(s.row(row), a.row(row), r.row(row), damping);
        max_delta = std::max(max_delta, st.max_delta);
        finite = finite && st.finite;
    }
    return {max_delta, finite};
}

SweepStats update_availabilities(const DenseMatrix<double>& r, const NeighborhoodMask* mask,
                                 DenseMatrix<double>& a, double damping, std::vector<double>& column_support) {
    const std::size_t n = r.rows();
    column_support.assign(n, 0.0);
    const auto blocks = static_cast<std::ptrdiff_t>((n + kColumnBlock - 1) / kColumnBlock);
    // Each column block is summed over rows in ascending order, matching the
    // serial reference exactly.
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < blocks; ++b) {
        const std::size_t k0 = static_cast<std::size_t>(b) * kColumnBlock;
        const std::size_t k1 = std::min(n, k0 + kColumnBlock);
        for (std::size_t i = 0; i < n; ++i) accumulate_support(r.row(i), i, k0, k1, column_support);
    }

    double max_delta = 0.0;
    bool finite = true;
#pragma omp parallel for schedule(static) reduction(max : max_delta) reduction(&& : finite)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        const auto row = static_cast<std::size_t>(i);
        const SweepStats st = availability_row(r, row, mask, a.row(row), damping, column_support);
        max_delta = std::max(max_delta, st.max_delta);
        finite = finite && st.finite;
    }
    return {max_delta, finite};
}

void row_argmax(const DenseMatrix<double>& s, const DenseMatrix<double>& a, std::span<std::size_t> labels) {
    const auto n = static_cast<std::ptrdiff_t>(s.rows());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto row = static_cast<std::size_t>(i);
        labels[row] = argmax_row(s.row(row), a.row(row));
    }
}

namespace serial {

SweepStats update_responsibilities(const DenseMatrix<double>& s, const DenseMatrix<double>& a,
                                   DenseMatrix<double>& r, double damping) {
    SweepStats total;
    for (std::size_t i = 0; i < s.rows(); ++i) {
        const SweepStats st = responsibility_row(s.row(i), a.row(i), r.row(i), damping);
        total.max_delta = std::max(total.max_delta, st.max_delta);
        total.finite = total.finite && st.finite;
    }
    return total;
}

SweepStats update_availabilities(const DenseMatrix<double>& r, const NeighborhoodMask* mask,
                                 DenseMatrix<double>& a, double damping, std::vector<double>& column_support) {
    const std::size_t n = r.rows();
    column_support.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (i != k) acc += std::max(0.0, r(i, k));
        }
        column_support[k] = acc;
    }
    SweepStats total;
    for (std::size_t i = 0; i < n; ++i) {
        const SweepStats st = availability_row(r, i, mask, a.row(i), damping, column_support);
        total.max_delta = std::max(total.max_delta, st.max_delta);
        total.finite = total.finite && st.finite;
    }
    return total;
}

void row_argmax(const DenseMatrix<double>& s, const DenseMatrix<double>& a, std::span<std::size_t> labels) {
    for (std::size_t i = 0; i < s.rows(); ++i) labels[i] = argmax_row(s.row(i), a.row(i));
}

}  // namespace serial

int thread_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace geoap::kernels
