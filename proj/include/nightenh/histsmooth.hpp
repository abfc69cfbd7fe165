#pragma once

#include <array>
#include <span>

#include "nightenh/image.hpp"

namespace nightenh {

inline constexpr int kHistBins = 256;

struct Histogram256 {
    std::array<double, kHistBins> counts{};

    double total() const;
};

/// Piecewise-linear map on [0,1]; knot k sits at k/256.
struct CumulativeMap {
    std::array<double, kHistBins + 1> knots{};

    double operator()(double v) const;
    static CumulativeMap identity();
};

struct SmoothParams {
    double lambda = 1.0;
    double gamma = 1.0;

    void validate() const;
};

// Bin index min(255, floor(v * 256)) with v clamped to [0,1].
int histogram_bin(float v);

Histogram256 build_histogram(const Channel& luma);

/// Solves ((1 + lambda) I + gamma D^T D) h = h_in + lambda u with u uniform
/// and D the first-difference operator, then clamps negatives and restores
/// the input mass.
Histogram256 smooth_histogram(const Histogram256& hist, const SmoothParams& p);

/// Thomas algorithm for a tridiagonal system. `lower[0]` and `upper[n-1]`
/// are ignored. Exposed for testing.
void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<double> rhs_inout);

CumulativeMap cumulative_map(const Histogram256& hist);

Channel apply_map(const Channel& luma, const CumulativeMap& map);

}  // namespace nightenh
