#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "nightenh/image.hpp"

namespace nightenh {

struct RbafParams {
    double sigma0 = 16.0;
    double sigma1 = 5.0;
    double edge_threshold = 0.15;
    std::optional<int> r_max;  // ceil(3 * sigma0) when unset
    double sigmoid_gain = 10.0;
    double log_floor = 1.0 / 512.0;

    int radius() const;
    void validate() const;
};

inline constexpr int kDirections = 8;

// Direction d points at angle d * 45 degrees, x to the right, y down.
struct DirectionStep {
    int dx;
    int dy;
};

/// One pixel's edge scan: bit d set means direction d crossed an edge and
/// takes sigma1; clear bits take sigma0.
struct SigmaField {
    std::uint8_t edge_bits = 0;

    bool crossed(int dir) const { return (edge_bits >> dir) & 1u; }
    double sigma_sq(int dir, const RbafParams& p) const {
        return crossed(dir) ? p.sigma1 * p.sigma1 : p.sigma0 * p.sigma0;
    }
};

/// Walks r = 1..r_max from (x, y) along each of the eight directions and
/// flags a direction once two consecutive samples differ by more than the
/// edge threshold. Walks stop at the image border.
SigmaField scan_directions(const Channel& luma, const RbafParams& p, int x, int y);

/// Nearest of the eight scan directions for a neighbour offset.
int direction_of(int dx, int dy);

/// Edge-aware surround: normalized disk average with weight exp(-r^2/sigma^2),
/// sigma chosen per pixel per direction from scan_directions. Neighbours
/// outside the image are dropped and the weights renormalized.
Channel adaptive_mask(const Channel& luma, const RbafParams& p);

// 1 - sigmoid(gain * (L - 0.5)).
Channel beta_map(const Channel& luma, const RbafParams& p);

// Plain Retinex log-ratio log(L) - log(mask), both floored.
Channel log_ratio(const Channel& luma, const Channel& mask, const RbafParams& p);

// log(max(L, floor)) - beta * log(max(mask, floor)).
Channel reflectance(const Channel& luma, const Channel& mask, const Channel& beta,
                    const RbafParams& p);

struct StretchResult {
    Channel plane;
    double min = 0.0;
    double max = 0.0;
    bool degenerate = false;
};

// (R - min) / (max - min); all 0.5 when the range is below 1e-9.
StretchResult normalize_stretch(const Channel& refl);

}  // namespace nightenh
