#include <catch_amalgamated.hpp>

#include <cmath>

#include "mapcut/ising.hpp"
#include "mapcut/noise.hpp"

#include "test_util.hpp"

using namespace mapcut;

TEST_CASE("to_spins maps 0/1 to -1/+1") {
    BinaryImage ones(4, 4, 1), zeros(4, 4, 0);
    for (auto s : to_spins(ones).spins) CHECK(s == 1);
    for (auto s : to_spins(zeros).spins) CHECK(s == -1);

    std::mt19937_64 rng(41);
    BinaryImage b = testutil::random_binary(5, 5, rng);
    SpinImage s = to_spins(b);
    for (std::size_t i = 0; i < b.size(); ++i) CHECK((s.spins[i] + 1) / 2 == b.bits[i]);
}

TEST_CASE("g statistic on structured images") {
    BinaryImage c(5, 5, 1);
    CHECK(g_statistic(to_spins(c), 1) == Catch::Approx(1.0));
    CHECK(g_statistic(to_spins(c), 2) == Catch::Approx(1.0));

    BinaryImage checker(6, 6);
    for (int y = 0; y < 6; ++y)
        for (int x = 0; x < 6; ++x) checker.at(x, y) = static_cast<std::uint8_t>((x + y) & 1);
    CHECK(g_statistic(to_spins(checker), 1) == Catch::Approx(-1.0));
    CHECK(g_statistic(to_spins(checker), 2) == Catch::Approx(1.0));

    BinaryImage stripes(6, 6);
    for (int y = 0; y < 6; ++y)
        for (int x = 0; x < 6; ++x) stripes.at(x, y) = static_cast<std::uint8_t>(y & 1);
    CHECK(g_statistic(to_spins(stripes), 1) == Catch::Approx(0.0).margin(1e-15));
    CHECK(g_statistic(to_spins(stripes), 2) == Catch::Approx(-1.0));

    CHECK_THROWS_AS(g_statistic(to_spins(BinaryImage(2, 5)), 1), InteriorEmpty);
}

TEST_CASE("g statistic stays within [-1, 1]") {
    std::mt19937_64 rng(42);
    for (int t = 0; t < 50; ++t) {
        BinaryImage b = testutil::random_binary(3 + static_cast<int>(rng() % 8),
                                                3 + static_cast<int>(rng() % 8), rng);
        for (int a : {1, 2}) {
            double g = g_statistic(to_spins(b), a);
            CHECK(g >= -1.0);
            CHECK(g <= 1.0);
        }
    }
}

TEST_CASE("correlations at the critical point") {
    CHECK(nn_correlation(kBetaCritical) == Catch::Approx(0.70710678).margin(2e-3));
    CHECK(diag_correlation(kBetaCritical) == Catch::Approx(2.0 / std::numbers::pi).margin(2e-3));
    CHECK(diag_correlation(kBetaCritical) == Catch::Approx(0.6366).margin(2e-3));
}

TEST_CASE("correlations order and limits") {
    CHECK(nn_correlation(kBetaMin) < 0.1);
    CHECK(diag_correlation(kBetaMin) < nn_correlation(kBetaMin));

    CHECK(nn_correlation(1.2) > 0.99);
    CHECK(diag_correlation(1.2) > 0.99);
    CHECK(phi(1.2) < 1.005);
    CHECK(phi(1.2) > 1.0);

    CHECK_THROWS_AS(nn_correlation(0.01), BetaOutOfRange);
    CHECK_THROWS_AS(diag_correlation(2.0), BetaOutOfRange);
}

TEST_CASE("correlation table invariants hold") {
    CorrelationTable t = CorrelationTable::build();
    REQUIRE(t.beta_grid.size() > 200);
    // build() already throws if ordering, monotonicity, or phi decrease fail;
    // spot-check the end points
    CHECK(t.r1.front() < 0.06);
    CHECK(t.r1.back() > 0.999);
    CHECK(t.r1.front() / t.r_sqrt2.front() > t.r1.back() / t.r_sqrt2.back());
}

TEST_CASE("phi inverse") {
    for (double b = 0.1; b <= 1.4; b += 0.1)
        CHECK(phi_inverse(phi(b)).beta == Catch::Approx(b).margin(1e-4));

    PhiInverseResult r = phi_inverse(1.111);
    CHECK(r.beta == Catch::Approx(0.441).margin(2e-3));
    CHECK(!r.clamped);

    CHECK_THROWS_AS(phi_inverse(0.9), RatioNotAboveOne);
    CHECK_THROWS_AS(phi_inverse(1.0), RatioNotAboveOne);

    CHECK(phi_inverse(1e6).clamped);
    CHECK(phi_inverse(1e6).beta == Catch::Approx(kBetaMin));
    CHECK(phi_inverse(1.0 + 1e-12).clamped);
    CHECK(phi_inverse(1.0 + 1e-12).beta == Catch::Approx(kBetaMax));
}

TEST_CASE("gibbs sampler basics") {
    BinaryImage a = gibbs_sample(64, 0.35, 50, 9);
    BinaryImage b = gibbs_sample(64, 0.35, 50, 9);
    CHECK(a == b);
    CHECK(a != gibbs_sample(64, 0.35, 50, 10));
    CHECK_THROWS(gibbs_sample(4, 0.35, 50, 9));
    CHECK_THROWS(gibbs_sample(64, 0.35, 0, 9));
}

TEST_CASE("gibbs at beta 0 is a fair coin") {
    BinaryImage s = gibbs_sample(256, 0.0, 2, 123);
    double mean = 0;
    for (auto b : s.bits) mean += b;
    mean /= static_cast<double>(s.size());
    CHECK(mean > 0.49);
    CHECK(mean < 0.51);
}

TEST_CASE("gibbs deep in the ordered phase magnetizes") {
    BinaryImage s = gibbs_sample(32, 1.0, 10000, 5);
    double m = 0;
    for (auto b : s.bits) m += 2.0 * b - 1.0;
    m /= static_cast<double>(s.size());
    CHECK(std::abs(m) >= 0.9);
}

TEST_CASE("noise attenuates G1 by (1-2eps)^2") {
    BinaryImage plane = gibbs_sample(256, 0.35, 300, 77);
    LayerStack stack;
    stack.width = stack.height = 256;
    stack.planes.assign(kPlanesPerChannel, BinaryImage(256, 256, 0));
    stack.planes[0] = plane;
    double eps = 0.15;
    PlaneMask msb = PlaneMask::from_string("10000000");
    BinaryImage noisy = corrupt(stack, NoiseModel{eps, 303}, msb).planes[0];

    double before = g_statistic(to_spins(plane), 1);
    double after = g_statistic(to_spins(noisy), 1);
    double expect = (1.0 - 2.0 * eps) * (1.0 - 2.0 * eps);
    CHECK(after / before == Catch::Approx(expect).margin(0.03));
}

TEST_CASE("estimators recover beta and epsilon on one seeded sample") {
    BinaryImage plane = gibbs_sample(256, 0.35, 400, 2718);
    LayerStack stack;
    stack.width = stack.height = 256;
    stack.planes.assign(kPlanesPerChannel, plane);
    BinaryImage noisy = corrupt(stack, NoiseModel{0.10, 99}, PlaneMask::from_string("10000000"))
                            .planes[0];
    EstimateResult r = estimate_parameters(noisy);
    CHECK(r.beta_hat == Catch::Approx(0.35).margin(0.05));
    CHECK(r.epsilon_hat == Catch::Approx(0.10).margin(0.02));

    EstimateResult clean = estimate_parameters(plane);
    CHECK(clean.epsilon_hat <= 0.02);
}

TEST_CASE("degenerate samples are rejected") {
    CHECK_THROWS_AS(estimate_parameters(BinaryImage(8, 8, 1)), DegenerateSample);
    BinaryImage checker(8, 8);
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x) checker.at(x, y) = static_cast<std::uint8_t>((x + y) & 1);
    CHECK_THROWS_AS(estimate_parameters(checker), DegenerateSample);
}

TEST_CASE("estimate_image flags degenerate planes and keeps the rest") {
    GrayImage flat(16, 16, 255);
    auto flat_est = estimate_image(flat);
    REQUIRE(flat_est.size() == 8);
    for (const auto& e : flat_est) CHECK(!e.result.has_value());

    // MSB plane from the Ising measure, lower planes i.i.d. coins
    BinaryImage msb = gibbs_sample(128, 0.40, 300, 11);
    std::mt19937_64 rng(12);
    GrayImage img(128, 128);
    for (std::size_t i = 0; i < img.size(); ++i)
        img.pixels[i] =
            static_cast<std::uint8_t>((msb.bits[i] << 7) | static_cast<std::uint8_t>(rng() & 0x7f));
    auto est = estimate_image(img);
    REQUIRE(est.size() == 8);
    REQUIRE(est[0].result.has_value());
    CHECK(est[0].result->beta_hat == Catch::Approx(0.40).margin(0.06));
    for (std::size_t k = 1; k < 8; ++k) {
        if (est[k].result)
            CHECK(est[k].result->beta_hat < 0.15); // coin planes look like weak coupling
    }
}
