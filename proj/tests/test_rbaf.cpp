#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "fixtures.hpp"
#include "nightenh/error.hpp"
#include "nightenh/rbaf.hpp"

using namespace nightenh;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Straightforward re-statement of the edge scan.
std::uint8_t oracle_scan(const Channel& L, double tau, int radius, int x, int y) {
    std::uint8_t bits = 0;
    for (int d = 0; d < 8; ++d) {
        const double th = d * std::numbers::pi / 4.0;
        int px = x, py = y;
        for (int r = 1; r <= radius; ++r) {
            const int nx = static_cast<int>(std::lround(x + r * std::cos(th)));
            const int ny = static_cast<int>(std::lround(y + r * std::sin(th)));
            if (nx < 0 || ny < 0 || nx >= L.width() || ny >= L.height()) break;
            if (std::abs(double(L.at(nx, ny)) - L.at(px, py)) > tau) {
                bits |= 1u << d;
                break;
            }
            px = nx;
            py = ny;
        }
    }
    return bits;
}

// Brute-force surround: every in-image neighbour on the disk, sigma picked by
// the neighbour's angular sector.
Channel oracle_mask(const Channel& L, const RbafParams& p) {
    const int R = p.radius();
    Channel out(L.width(), L.height());
    for (int y = 0; y < L.height(); ++y) {
        for (int x = 0; x < L.width(); ++x) {
            const std::uint8_t bits = oracle_scan(L, p.edge_threshold, R, x, y);
            double num = 0.0, den = 0.0;
            for (int dy = -R; dy <= R; ++dy) {
                for (int dx = -R; dx <= R; ++dx) {
                    if (dx * dx + dy * dy > R * R) continue;
                    const int qx = x + dx, qy = y + dy;
                    if (qx < 0 || qy < 0 || qx >= L.width() || qy >= L.height()) continue;
                    double ang = std::atan2(double(dy), double(dx)) * 180.0 / std::numbers::pi;
                    if (ang < 0) ang += 360.0;
                    const int sector = (dx == 0 && dy == 0) ? 0 : int(std::floor(ang / 45.0 + 0.5)) % 8;
                    const double s = (bits >> sector) & 1 ? p.sigma1 : p.sigma0;
                    const double w = std::exp(-double(dx * dx + dy * dy) / (s * s));
                    num += w * L.at(qx, qy);
                    den += w;
                }
            }
            out.at(x, y) = static_cast<float>(num / den);
        }
    }
    return out;
}

// Isotropic exp(-r^2/sigma^2) over the clipped disk.
Channel oracle_gaussian_disk(const Channel& L, double sigma, int R) {
    Channel out(L.width(), L.height());
    for (int y = 0; y < L.height(); ++y) {
        for (int x = 0; x < L.width(); ++x) {
            double num = 0.0, den = 0.0;
            for (int qy = std::max(0, y - R); qy <= std::min(L.height() - 1, y + R); ++qy) {
                for (int qx = std::max(0, x - R); qx <= std::min(L.width() - 1, x + R); ++qx) {
                    const double r2 = double(qx - x) * (qx - x) + double(qy - y) * (qy - y);
                    if (r2 > double(R) * R) continue;
                    const double w = std::exp(-r2 / (sigma * sigma));
                    num += w * L.at(qx, qy);
                    den += w;
                }
            }
            out.at(x, y) = static_cast<float>(num / den);
        }
    }
    return out;
}

double max_abs_diff(const Channel& a, const Channel& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(double(a[i]) - b[i]));
    return worst;
}

}  // namespace

TEST_CASE("direction_of picks the nearest 45-degree direction") {
    CHECK(direction_of(5, 0) == 0);
    CHECK(direction_of(3, 3) == 1);
    CHECK(direction_of(0, 4) == 2);
    CHECK(direction_of(-2, 2) == 3);
    CHECK(direction_of(-7, 1) == 4);
    CHECK(direction_of(-3, -3) == 5);
    CHECK(direction_of(0, -1) == 6);
    CHECK(direction_of(4, -4) == 7);
    CHECK(direction_of(5, -1) == 0);
    CHECK(direction_of(5, 2) == 0);
    CHECK(direction_of(5, 3) == 1);
}

TEST_CASE("edge scan on a constant image marks nothing") {
    const Channel flat(20, 20, 0.4f);
    RbafParams p;
    for (int y : {0, 10, 19}) {
        for (int x : {0, 7, 19}) CHECK(scan_directions(flat, p, x, y).edge_bits == 0);
    }
    const SigmaField f = scan_directions(flat, p, 3, 3);
    for (int d = 0; d < 8; ++d) CHECK(f.sigma_sq(d, p) == 256.0);
}

TEST_CASE("edge scan next to a vertical step") {
    const Channel step = testing::vertical_step(32, 32, 16, 0.2f, 0.7f);
    RbafParams p;
    const SigmaField f = scan_directions(step, p, 12, 16);
    // East-pointing: 0, 45 (down-right), 315 (up-right).
    CHECK(f.crossed(0));
    CHECK(f.crossed(1));
    CHECK(f.crossed(7));
    for (int d : {2, 3, 4, 5, 6}) CHECK_FALSE(f.crossed(d));
    CHECK(f.sigma_sq(0, p) == doctest::Approx(25.0));

    for (int y = 0; y < 32; y += 3) {
        for (int x = 0; x < 32; x += 2) {
            CHECK(scan_directions(step, p, x, y).edge_bits == oracle_scan(step, p.edge_threshold, p.radius(), x, y));
        }
    }

    RbafParams never;
    never.edge_threshold = kInf;
    CHECK(scan_directions(step, never, 12, 16).edge_bits == 0);
    CHECK_THROWS_AS(scan_directions(step, p, 32, 0), ArgumentError);
}

TEST_CASE("adaptive mask of a constant image is the constant") {
    const Channel flat(24, 20, 0.37f);
    const Channel m = adaptive_mask(flat, RbafParams{});
    for (float v : m.samples()) CHECK(v == doctest::Approx(0.37f).epsilon(1e-6));
}

TEST_CASE("adaptive mask without edges equals the Gaussian surround") {
    RbafParams p;
    p.sigma0 = 6.0;
    p.sigma1 = 2.0;
    const Channel smooth = testing::smooth_gradient(64, 48);
    const Channel oracle = oracle_gaussian_disk(smooth, p.sigma0, p.radius());
    CHECK(max_abs_diff(adaptive_mask(smooth, p), oracle) <= 1e-3);

    p.edge_threshold = kInf;
    const Channel rough = testing::random_channel(48, 48, 8);
    CHECK(max_abs_diff(adaptive_mask(rough, p), oracle_gaussian_disk(rough, p.sigma0, p.radius())) <= 1e-3);
}

TEST_CASE("adaptive mask matches the brute-force oracle with edges") {
    RbafParams p;
    p.sigma0 = 4.0;
    p.sigma1 = 2.0;
    Channel img = testing::bright_disk(40, 10.0, 0.1f, 0.8f);
    const Channel noise = testing::random_channel(40, 40, 3, -0.05f, 0.05f);
    for (std::size_t i = 0; i < img.size(); ++i) img[i] += noise[i];
    CHECK(max_abs_diff(adaptive_mask(img, p), oracle_mask(img, p)) <= 1e-5);
}

TEST_CASE("adaptive sigma narrows the leakage band at a step") {
    const Channel step = testing::vertical_step(96, 16, 48, 0.1f, 0.9f);
    RbafParams adaptive;
    RbafParams fixed;
    fixed.edge_threshold = kInf;
    const Channel ma = adaptive_mask(step, adaptive);
    const Channel mf = adaptive_mask(step, fixed);
    // Leakage |mask - L| summed over the row band next to the edge.
    double leak_a = 0.0, leak_f = 0.0;
    for (int x = 38; x < 58; ++x) {
        leak_a += std::abs(double(ma.at(x, 8)) - step.at(x, 8));
        leak_f += std::abs(double(mf.at(x, 8)) - step.at(x, 8));
    }
    CHECK(leak_a < leak_f);
    for (int x = 40; x < 48; ++x) {
        CHECK(std::abs(double(ma.at(x, 8)) - step.at(x, 8)) <
              std::abs(double(mf.at(x, 8)) - step.at(x, 8)));
    }
}

TEST_CASE("beta map") {
    RbafParams p;
    Channel c(3, 1);
    c[0] = 0.5f;
    c[1] = 1.0f;
    c[2] = 0.0f;
    const Channel b = beta_map(c, p);
    CHECK(b[0] == 0.5f);
    CHECK(b[1] == doctest::Approx(1.0 - 1.0 / (1.0 + std::exp(-5.0))).epsilon(1e-6));
    CHECK(b[1] == doctest::Approx(0.00669).epsilon(1e-3));
    CHECK(b[2] == doctest::Approx(0.99331).epsilon(1e-5));

    const Channel ramp = testing::ramp256(1, 1);
    const Channel rb = beta_map(ramp, p);
    for (std::size_t i = 1; i < rb.size(); ++i) CHECK(rb[i] < rb[i - 1]);
}

TEST_CASE("reflectance special cases") {
    RbafParams p;
    const Channel L = testing::random_channel(12, 12, 1, 0.01f, 1.0f);
    const Channel mask = testing::random_channel(12, 12, 2, 0.01f, 1.0f);

    const Channel ones(12, 12, 1.0f);
    const Channel r1 = reflectance(L, mask, ones, p);
    const Channel plain = log_ratio(L, mask, p);
    for (std::size_t i = 0; i < L.size(); ++i) {
        CHECK(r1[i] == plain[i]);
        CHECK(r1[i] == static_cast<float>(std::log(double(L[i])) - std::log(double(mask[i]))));
    }

    const Channel r0 = reflectance(L, mask, Channel(12, 12, 0.0f), p);
    for (std::size_t i = 0; i < L.size(); ++i) CHECK(r0[i] == static_cast<float>(std::log(double(L[i]))));

    for (float c : {0.1f, 0.5f, 0.9f}) {
        const Channel flat(6, 6, c);
        const Channel beta = beta_map(flat, p);
        const Channel r = reflectance(flat, adaptive_mask(flat, p), beta, p);
        const double expect = (1.0 - beta[0]) * std::log(double(c));
        for (float v : r.samples()) CHECK(v == doctest::Approx(expect).epsilon(1e-5));
    }

    CHECK_THROWS_AS(reflectance(L, Channel(3, 3), ones, p), ArgumentError);
}

TEST_CASE("normalize_stretch") {
    Channel r(3, 1);
    r[0] = -2.0f;
    r[1] = -1.0f;
    r[2] = 0.0f;
    const StretchResult s = normalize_stretch(r);
    CHECK(s.plane[0] == 0.0f);
    CHECK(s.plane[1] == 0.5f);
    CHECK(s.plane[2] == 1.0f);
    CHECK_FALSE(s.degenerate);

    const StretchResult flat = normalize_stretch(Channel(4, 4, -3.0f));
    CHECK(flat.degenerate);
    for (float v : flat.plane.samples()) CHECK(v == 0.5f);

    const Channel base = testing::random_channel(16, 16, 6, -4.0f, 1.0f);
    const Channel n0 = normalize_stretch(base).plane;
    for (auto [a, b] : {std::pair{2.5f, 1.0f}, {0.3f, -7.0f}, {11.0f, 0.25f}}) {
        Channel t = base;
        for (float& v : t.samples()) v = a * v + b;
        const Channel n1 = normalize_stretch(t).plane;
        CHECK(*std::ranges::min_element(n1.samples()) == 0.0f);
        CHECK(*std::ranges::max_element(n1.samples()) == 1.0f);
        for (std::size_t i = 0; i < n0.size(); ++i) CHECK(n1[i] == doctest::Approx(n0[i]).epsilon(1e-5));
    }
}

TEST_CASE("rbaf parameters are validated") {
    RbafParams p;
    p.sigma1 = 9.0;  // > sigma0 / 2
    CHECK_THROWS_AS(adaptive_mask(Channel(4, 4, 0.1f), p), ArgumentError);
    p.sigma1 = 5.0;
    p.r_max = 0;
    CHECK_THROWS_AS(p.validate(), ArgumentError);
    p.r_max.reset();
    CHECK(p.radius() == 48);
}
