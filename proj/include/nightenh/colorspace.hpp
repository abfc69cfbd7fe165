#pragma once

#include <array>

#include "nightenh/image.hpp"

namespace nightenh {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

// Floor applied to RGB samples before taking logs.
inline constexpr double kColorLogFloor = 1.0 / 512.0;

/// Orthonormal transform between mean-centred log-RGB and (L, C1, C2).
/// Rows of `rows` are the principal directions; row 0 is luminance.
struct ColorBasis {
    enum class Source { fitted, fixed_opponent };

    Mat3 rows{};
    Vec3 mean{};
    Source source = Source::fixed_opponent;

    Vec3 forward(const Vec3& log_rgb) const;   // W * (v - mean)
    Vec3 inverse(const Vec3& lcc) const;       // W^T * v + mean

    /// (1,1,1)/sqrt3, (1,0,-1)/sqrt2, (1,-2,1)/sqrt6 with the given mean.
    static ColorBasis fixed_opponent(const Vec3& mean = {0.0, 0.0, 0.0});
};

/// Luminance/chroma planes of one image.
///
/// `luma` is the first principal coordinate min-max normalized into [0,1]
/// using the recorded [lmin, lmax] window. C1 and C2 stay in the log domain
/// and are zero-mean.
struct LccPlanes {
    Channel luma;
    Channel c1;
    Channel c2;
    ColorBasis basis;
    double lmin = 0.0;
    double lmax = 1.0;
    bool degenerate_window = false;
};

/// PCA of log-RGB. Falls back to the fixed opponent basis when the covariance
/// has rank < 2 or the leading direction is not all non-negative.
ColorBasis fit_basis(const ImageF& img);

LccPlanes to_lcc(const ImageF& img, const ColorBasis& basis);

/// Exact inverse of to_lcc, with chroma scaled by `alpha` before the inverse
/// transform. Output is clamped to [0,1].
ImageF from_lcc(const LccPlanes& planes, double alpha);

/// Recombination for an enhanced luminance plane. `planes.luma` is read as
/// linear display luminance in [0,1] instead of a position in the log window:
/// a pixel with zero chroma reconstructs to (L, L, L) when row 0 is the gray
/// axis. Chroma is scaled by `alpha` around the image's mean colour cast.
ImageF from_lcc_display(const LccPlanes& planes, double alpha);

}  // namespace nightenh
