#include "nightenh/histsmooth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "nightenh/error.hpp"

namespace nightenh {

double Histogram256::total() const { return std::accumulate(counts.begin(), counts.end(), 0.0); }

double CumulativeMap::operator()(double v) const {
    const double pos = std::clamp(v, 0.0, 1.0) * kHistBins;
    const int k = std::min(static_cast<int>(pos), kHistBins - 1);
    const double frac = pos - k;
    return knots[k] + frac * (knots[k + 1] - knots[k]);
}

CumulativeMap CumulativeMap::identity() {
    CumulativeMap m;
    for (int k = 0; k <= kHistBins; ++k) m.knots[k] = static_cast<double>(k) / kHistBins;
    return m;
}

void SmoothParams::validate() const {
    if (!(lambda >= 0.0) || !(gamma >= 0.0)) {
        throw ArgumentError("histogram smoothing weights must be >= 0");
    }
}

int histogram_bin(float v) {
    const double c = std::clamp(static_cast<double>(v), 0.0, 1.0);
    return std::min(kHistBins - 1, static_cast<int>(c * kHistBins));
}

Histogram256 build_histogram(const Channel& luma) {
    Histogram256 h;
    for (const float v : luma.samples()) h.counts[histogram_bin(v)] += 1.0;
    return h;
}

void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<double> rhs) {
    const std::size_t n = diag.size();
    if (lower.size() != n || upper.size() != n || rhs.size() != n) {
        throw ArgumentError("tridiagonal system sizes differ");
    }
    if (n == 0) return;
    std::vector<double> c(n);
    double denom = diag[0];
    if (denom == 0.0) throw ArgumentError("singular tridiagonal system");
    c[0] = upper[0] / denom;
    rhs[0] /= denom;
    for (std::size_t i = 1; i < n; ++i) {
        denom = diag[i] - lower[i] * c[i - 1];
        if (denom == 0.0) throw ArgumentError("singular tridiagonal system");
        c[i] = i + 1 < n ? upper[i] / denom : 0.0;
        rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / denom;
    }
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
}

Histogram256 smooth_histogram(const Histogram256& hist, const SmoothParams& p) {
    p.validate();
    const double total = hist.total();
    if (!(total > 0.0)) throw ArgumentError("cannot smooth an empty histogram");

    constexpr int n = kHistBins;
    // (1 + lambda) I + gamma D^T D; D^T D has diagonal [1, 2, ..., 2, 1] and
    // off-diagonals -1.
    std::array<double, n> lower{}, diag{}, upper{}, rhs{};
    const double uniform = total / n;
    for (int i = 0; i < n; ++i) {
        const double dtd = (i == 0 || i == n - 1) ? 1.0 : 2.0;
        diag[i] = 1.0 + p.lambda + p.gamma * dtd;
        lower[i] = i > 0 ? -p.gamma : 0.0;
        upper[i] = i + 1 < n ? -p.gamma : 0.0;
        rhs[i] = hist.counts[i] + p.lambda * uniform;
    }
    solve_tridiagonal(lower, diag, upper, rhs);

    Histogram256 out;
    double mass = 0.0;
    for (int i = 0; i < n; ++i) {
        out.counts[i] = std::max(rhs[i], 0.0);
        mass += out.counts[i];
    }
    if (mass > 0.0) {
        const double scale = total / mass;
        for (double& c : out.counts) c *= scale;
    }
    return out;
}

CumulativeMap cumulative_map(const Histogram256& hist) {
    const double total = hist.total();
    if (!(total > 0.0)) throw ArgumentError("cumulative map of an empty histogram");
    CumulativeMap m;
    double prefix = 0.0;
    m.knots[0] = 0.0;
    for (int i = 0; i < kHistBins; ++i) {
        prefix += hist.counts[i];
        m.knots[i + 1] = std::min(1.0, prefix / total);
    }
    m.knots[kHistBins] = 1.0;
    return m;
}

Channel apply_map(const Channel& luma, const CumulativeMap& map) {
    Channel out = luma;
    for (float& v : out.samples()) v = static_cast<float>(map(v));
    return out;
}

}  // namespace nightenh
