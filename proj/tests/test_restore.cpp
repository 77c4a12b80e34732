#include <catch_amalgamated.hpp>

#include <cmath>

#include "mapcut/noise.hpp"
#include "mapcut/restore.hpp"

#include "test_util.hpp"

using namespace mapcut;

namespace {
RestoreParams params_with(double beta, double h) {
    RestoreParams p;
    p.beta = beta;
    p.h = h;
    return p;
}
} // namespace

TEST_CASE("effective alpha") {
    RestoreParams p = params_with(0.3, std::log(9.0));
    for (int k = 1; k <= 8; ++k)
        CHECK(effective_alpha(p, k) == Catch::Approx(std::log(9.0) / 0.3).epsilon(1e-12));
    CHECK(effective_alpha(p, 1) == Catch::Approx(7.3240).margin(5e-4));

    p.weighting = Weighting::layered;
    p.beta = 1.0;
    p.h = 1.0;
    CHECK(effective_alpha(p, 3) == Catch::Approx(8.0));
    CHECK(effective_alpha(p, 1) == Catch::Approx(2.0));

    p.h = -1.0;
    CHECK_THROWS_AS(effective_alpha(p, 1), AlphaNonPositive);
}

TEST_CASE("restore_layer hand instances") {
    BinaryImage y(2, 1);
    y.bits = {1, 0};
    CHECK(restore_layer(y, 2.0).bits == std::vector<std::uint8_t>{1, 0});

    BinaryImage c(4, 4, 1);
    CHECK(restore_layer(c, 0.3) == c);

    // single dissenter in a 3x3 of ones is outvoted at alpha = 0.5
    BinaryImage dissent(3, 3, 1);
    dissent.at(1, 1) = 0;
    CHECK(restore_layer(dissent, 0.5) == BinaryImage(3, 3, 1));
}

TEST_CASE("restore_layer agrees with the brute-force oracle") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        BinaryImage y = testutil::random_binary(3, 3, rng);
        for (double alpha : {0.3, 0.7, 1.0, 2.5}) {
            BinaryImage x = restore_layer(y, alpha);
            BruteForceResult oracle = brute_force_map(y, alpha);
            CHECK(objective_scaled(y, x, std::llround(alpha * 10000), 10000) == oracle.best_scaled);
        }
    }
}

TEST_CASE("brute force examples") {
    BinaryImage y(2, 1);
    y.bits = {1, 0};
    BruteForceResult r = brute_force_map(y, 0.5);
    CHECK(r.best == Catch::Approx(1.5));
    REQUIRE(r.maximizers.size() == 2);
    CHECK(r.maximizers[0].bits == std::vector<std::uint8_t>{0, 0});
    CHECK(r.maximizers[1].bits == std::vector<std::uint8_t>{1, 1});

    BinaryImage one(1, 1, 1);
    BruteForceResult r1 = brute_force_map(one, 0.7);
    CHECK(r1.best == Catch::Approx(0.7));
    REQUIRE(r1.maximizers.size() == 1);
    CHECK(r1.maximizers[0].bits == std::vector<std::uint8_t>{1});

    CHECK_THROWS_AS(brute_force_map(BinaryImage(5, 5), 1.0), InstanceTooLarge);
}

TEST_CASE("large alpha pins the observation") {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 20; ++trial) {
        BinaryImage y = testutil::random_binary(4, 4, rng);
        CHECK(restore_layer(y, 8.5) == y);
    }
}

TEST_CASE("data fidelity is monotone in alpha") {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 20; ++trial) {
        BinaryImage y = testutil::random_binary(4, 4, rng);
        long long prev = -1;
        for (double alpha : {0.2, 0.5, 1.0, 2.0, 4.0, 9.0}) {
            BinaryImage x = restore_layer(y, alpha);
            long long disagreements = 16 - agreement_count(y, x);
            if (prev >= 0) CHECK(disagreements <= prev);
            prev = disagreements;
        }
    }
}

TEST_CASE("argmax depends only on h/beta") {
    std::mt19937_64 rng(34);
    BinaryImage y = testutil::random_binary(5, 5, rng);
    GrayImage g(5, 5);
    for (std::size_t i = 0; i < g.size(); ++i) g.pixels[i] = y.bits[i] ? 255 : 0;
    GrayImage a = restore_image(g, params_with(0.3, 0.9));
    GrayImage b = restore_image(g, params_with(0.6, 1.8));
    GrayImage c = restore_image(g, params_with(3.0, 9.0));
    CHECK(a == b);
    CHECK(a == c);
}

TEST_CASE("restore_image respects the plane mask") {
    std::mt19937_64 rng(35);
    GrayImage y = testutil::random_gray(6, 6, rng);

    RestoreParams p = params_with(0.3, std::log(9.0));
    p.mask = PlaneMask::none();
    CHECK(restore_image(y, p) == y);

    p.mask = PlaneMask::from_string("10000000");
    GrayImage out = restore_image(y, p);
    LayerStack in_planes = decompose(y);
    LayerStack out_planes = decompose(out);
    for (int k = 2; k <= 8; ++k) CHECK(out_planes.plane(k) == in_planes.plane(k));

    GrayImage flat(6, 6, 137);
    p.mask = PlaneMask::all();
    CHECK(restore_image(flat, p) == flat);
}

TEST_CASE("rgb restoration is channelwise") {
    std::mt19937_64 rng(36);
    RgbImage img = testutil::random_rgb(5, 5, rng);
    RestoreParams p = params_with(0.4, std::log(9.0));

    RgbImage direct = restore_rgb(img, p);
    auto [r, g, b] = split_channels(img);
    CHECK(direct ==
          merge_channels(restore_image(r, p), restore_image(g, p), restore_image(b, p)));

    RgbImage flat(4, 4, RgbPixel{12, 200, 66});
    CHECK(restore_rgb(flat, p) == flat);

    // corrupt only the red channel; green and blue stay untouched
    auto [cr, cg, cb] = split_channels(img);
    cr = corrupt(cr, NoiseModel{0.1, 77});
    RgbImage noisy = merge_channels(cr, cg, cb);
    RgbImage restored = restore_rgb(noisy, p);
    auto [or_, og, ob] = split_channels(restored);
    CHECK(og == restore_image(cg, p));
    CHECK(ob == restore_image(cb, p));
}

TEST_CASE("hierarchical restoration") {
    std::mt19937_64 rng(37);
    GrayImage y = testutil::random_gray(6, 6, rng);
    RestoreParams p = params_with(0.3, std::log(9.0));

    // plane 1 matches the standard restoration
    GrayImage hier = restore_hierarchical(y, p);
    GrayImage std_out = restore_image(y, p);
    CHECK(decompose(hier).plane(1) == decompose(std_out).plane(1));

    GrayImage flat(5, 5, 201);
    CHECK(restore_hierarchical(flat, p) == flat);

    p.mask = PlaneMask::from_string("10100000");
    CHECK_THROWS_AS(restore_hierarchical(y, p), NonPrefixMask);
}

TEST_CASE("hierarchical plane 2 never smooths across a plane-1 boundary") {
    // plane 1 splits 4x4 left/right; plane 2 noisy on one side only
    GrayImage img(4, 4, 0);
    for (int r = 0; r < 4; ++r)
        for (int c = 2; c < 4; ++c) img.at(c, r) = 128;
    img.at(0, 0) += 64; // lone plane-2 dissenter in the left region
    RestoreParams p = params_with(1.0, 0.8); // alpha = 0.8: smoothing outvotes one dissenter
    p.mask = PlaneMask::from_string("11000000");

    GrayImage out = restore_hierarchical(img, p);
    LayerStack planes = decompose(out);
    // the dissenter is outvoted within its own region
    CHECK(planes.plane(2) == BinaryImage(4, 4, 0));
    // plane 1 is noiseless, stays put
    CHECK(planes.plane(1) == decompose(img).plane(1));
}

TEST_CASE("multisample restoration") {
    std::mt19937_64 rng(38);
    GrayImage clean = testutil::random_gray(6, 6, rng);
    RestoreParams p = params_with(0.3, std::log(9.0));

    CHECK(restore_multisample({clean}, p) == restore_image(clean, p));
    CHECK_THROWS_AS(restore_multisample({}, p), EmptySampleList);
    CHECK_THROWS_AS(restore_multisample({clean, GrayImage(2, 2)}, p), DimensionMismatch);

    // three unanimous copies reproduce the original (margins dominate smoothing)
    CHECK(restore_multisample({clean, clean, clean}, p) == clean);
}

TEST_CASE("balanced votes fall to neighbor majority") {
    // 1x3 plane: middle pixel observed (1, 0) across two samples, margin 0;
    // both neighbors vote 0, so smoothing decides 0.
    GrayImage a(3, 1, 0), b(3, 1, 0);
    a.pixels[1] = 128;
    RestoreParams p = params_with(1.0, 1.0);
    p.mask = PlaneMask::from_string("10000000");
    GrayImage out = restore_multisample({a, b}, p);
    CHECK(out.pixels == std::vector<std::uint8_t>{0, 0, 0});
}

TEST_CASE("iterated restoration is a fixed point after one step") {
    std::mt19937_64 rng(39);
    RestoreParams p = params_with(0.3, std::log(9.0));
    for (int trial = 0; trial < 5; ++trial) {
        GrayImage y = testutil::random_gray(8, 8, rng);
        double alpha = std::log(9.0) / 0.3;

        auto same = iterate_restore(y, {alpha, alpha}, p);
        CHECK(same[1] == same[0]);

        auto grow = iterate_restore(y, {alpha, 2 * alpha}, p);
        CHECK(grow[1] == grow[0]);

        auto single = iterate_restore(y, {alpha}, p);
        CHECK(single.size() == 1);
        CHECK(single[0] == same[0]);
    }
    CHECK_THROWS_AS(iterate_restore(GrayImage(2, 2), {2.0, 1.0}, p), AlphaScheduleDecreasing);
}
