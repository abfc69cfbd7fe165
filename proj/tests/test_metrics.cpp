#include <doctest.h>

#include <cmath>
#include <limits>

#include "fixtures.hpp"
#include "nightenh/error.hpp"
#include "nightenh/metrics.hpp"

using namespace nightenh;

namespace {

// SSIM by direct per-window summation.
double oracle_ssim(const Channel& a, const Channel& b) {
    double g[11], gs = 0.0;
    for (int k = 0; k < 11; ++k) {
        g[k] = std::exp(-(k - 5) * (k - 5) / (2 * 1.5 * 1.5));
        gs += g[k];
    }
    double total = 0.0;
    int count = 0;
    for (int y = 0; y + 11 <= a.height(); ++y) {
        for (int x = 0; x + 11 <= a.width(); ++x) {
            double ma = 0, mb = 0;
            for (int j = 0; j < 11; ++j) {
                for (int i = 0; i < 11; ++i) {
                    const double w = g[i] * g[j] / (gs * gs);
                    ma += w * a.at(x + i, y + j);
                    mb += w * b.at(x + i, y + j);
                }
            }
            double va = 0, vb = 0, cov = 0;
            for (int j = 0; j < 11; ++j) {
                for (int i = 0; i < 11; ++i) {
                    const double w = g[i] * g[j] / (gs * gs);
                    const double da = a.at(x + i, y + j) - ma, db = b.at(x + i, y + j) - mb;
                    va += w * da * da;
                    vb += w * db * db;
                    cov += w * da * db;
                }
            }
            const double c1 = 1e-4, c2 = 9e-4;
            total += (2 * ma * mb + c1) * (2 * cov + c2) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
            ++count;
        }
    }
    return total / count;
}

}  // namespace

TEST_CASE("ssim identity, symmetry and inversion") {
    const Channel x = luminance(testing::scene(48, 40));
    CHECK(std::abs(ssim(x, x) - 1.0) <= 1e-9);
    const Channel r = testing::random_channel(32, 32, 3);
    CHECK(std::abs(ssim(r, r) - 1.0) <= 1e-9);

    const Channel y = testing::random_channel(48, 40, 4);
    CHECK(std::abs(ssim(x, y) - ssim(y, x)) <= 1e-9);

    Channel inv = r;
    for (float& v : inv.samples()) v = 1.0f - v;
    CHECK(ssim(r, inv) < 0.0);
}

TEST_CASE("ssim against a per-window oracle") {
    const Channel x = luminance(testing::scene(40, 32));
    Channel shifted = x;
    for (float& v : shifted.samples()) v = std::min(1.0f, v + 0.1f);
    const double s = ssim(x, shifted);
    CHECK(s < 1.0);
    CHECK(std::abs(s - oracle_ssim(x, shifted)) <= 1e-6);

    const Channel n = testing::random_channel(40, 32, 9);
    CHECK(std::abs(ssim(x, n) - oracle_ssim(x, n)) <= 1e-6);

    CHECK_THROWS_AS(ssim(x, Channel(10, 10)), ArgumentError);
    CHECK_THROWS_AS(ssim(Channel(8, 8), Channel(8, 8)), ArgumentError);
}

TEST_CASE("mean luminance") {
    CHECK(mean_luminance(ImageF(4, 4, 3, 0.25f)) == doctest::Approx(0.25));
    CHECK(mean_luminance(ImageF(4, 4, 1, 0.0f)) == 0.0);
    ImageF checker(8, 8, 1);
    for (int y = 0; y < 8; ++y) {
        for (int x = 0; x < 8; ++x) checker.at(0, x, y) = static_cast<float>((x + y) % 2);
    }
    CHECK(mean_luminance(checker) == 0.5);
    const ImageF img = testing::scene(20, 20);
    ImageF scaled = img;
    for (float& v : scaled.samples()) v *= 0.4f;
    CHECK(mean_luminance(scaled) == doctest::Approx(0.4 * mean_luminance(img)).epsilon(1e-6));
}

TEST_CASE("vcm") {
    CHECK(vcm(ImageF(64, 64, 3, 0.3f)) == 0.0);
    const ImageF noise = ImageF::from_plane(testing::random_channel(256, 256, 17));
    const double v = vcm(noise);
    CHECK(v == doctest::Approx(100.0 / std::sqrt(12.0)).epsilon(0.10));

    const ImageF img = testing::scene(64, 64);
    ImageF lifted = img;
    for (float& s : lifted.samples()) s += 0.05f;
    CHECK(vcm(lifted) == doctest::Approx(vcm(img)).epsilon(1e-4));

    CHECK_THROWS_AS(vcm(ImageF(8, 8, 1)), ArgumentError);
    CHECK_THROWS_AS(vcm(img, {1, 0.02}), ArgumentError);
    CHECK_THROWS_AS(vcm(img, {16, 0.0}), ArgumentError);
}

TEST_CASE("edge energy") {
    CHECK(edge_energy(ImageF(16, 16, 3, 0.6f)) == 0.0);

    const auto step_energy = [](float h) {
        return edge_energy(ImageF::from_plane(testing::vertical_step(20, 10, 10, 0.1f, 0.1f + h)));
    };
    const double e1 = step_energy(0.2f);
    CHECK(e1 > 0.0);
    CHECK(step_energy(0.4f) / e1 == doctest::Approx(4.0).epsilon(1e-5));
    // Two interior columns see the step with gradient h/2 each.
    CHECK(e1 == doctest::Approx(2 * 0.01 / 18.0).epsilon(1e-5));

    const ImageF img = testing::random_image(17, 13, 3, 8);
    double sum = 0.0;
    for (int y = 1; y < 12; ++y) {
        for (int x = 1; x < 16; ++x) {
            auto L = [&](int px, int py) {
                return (double(img.at(0, px, py)) + img.at(1, px, py) + img.at(2, px, py)) / 3.0;
            };
            const double gx = (L(x + 1, y) - L(x - 1, y)) / 2, gy = (L(x, y + 1) - L(x, y - 1)) / 2;
            sum += gx * gx + gy * gy;
        }
    }
    CHECK(std::abs(edge_energy(img) - sum / (15 * 11)) <= 1e-8);
}

TEST_CASE("measure bundles the four metrics") {
    const ImageF img = testing::scene(32, 32);
    const MetricReport no_ref = measure(img);
    CHECK_FALSE(no_ref.ssim.has_value());
    const MetricReport with_ref = measure(img, &img);
    REQUIRE(with_ref.ssim.has_value());
    CHECK(*with_ref.ssim == doctest::Approx(1.0));
    CHECK(with_ref.vcm == no_ref.vcm);
}
