#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "swp/rng.hpp"
#include "swp/stats.hpp"

using namespace swp;

TEST_CASE("mean_var on a hand case") {
    MeanVar mv = mean_var({1.0, 2.0, 3.0, 4.0});
    CHECK(mv.mean == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(mv.var == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
    CHECK(mv.se == doctest::Approx(std::sqrt(5.0 / 12.0)).epsilon(1e-15));
}

TEST_CASE("gamma cdf reduces to exponential and erf cases") {
    for (double x : {0.1, 0.5, 1.0, 3.0, 8.0}) {
        CHECK(gamma_cdf(x, 1.0, 1.0) == doctest::Approx(-std::expm1(-x)).epsilon(1e-13));
        CHECK(gamma_cdf(x, 1.0, 2.0) == doctest::Approx(-std::expm1(-x / 2.0)).epsilon(1e-13));
        // P(1/2, x) = erf(sqrt(x))
        CHECK(gamma_cdf(x, 0.5, 1.0) == doctest::Approx(std::erf(std::sqrt(x))).epsilon(1e-12));
    }
    CHECK(gamma_cdf(-1.0, 2.0, 1.0) == 0.0);
    CHECK(gamma_cdf(0.0, 2.0, 1.0) == 0.0);
}

TEST_CASE("one-sample ks statistic on a hand case") {
    auto uniform_cdf = [](double x) { return std::min(1.0, std::max(0.0, x)); };
    CHECK(ks_statistic({0.25, 0.75}, uniform_cdf) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(ks_statistic({0.9}, uniform_cdf) == doctest::Approx(0.9).epsilon(1e-15));
}

TEST_CASE("two-sample ks statistic on hand cases") {
    CHECK(ks_statistic_two_sample({1.0, 3.0}, {2.0, 4.0}) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(ks_statistic_two_sample({1.0, 2.0}, {5.0, 6.0}) == doctest::Approx(1.0).epsilon(1e-15));
    std::vector<double> same = {0.3, 0.7, 1.1, 2.0};
    CHECK(ks_statistic_two_sample(same, same) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("kolmogorov tail values") {
    CHECK(kolmogorov_q(1e-8) == doctest::Approx(1.0));
    CHECK(kolmogorov_q(6.0) == doctest::Approx(0.0).epsilon(1e-12));
    // Q(1) = 2(e^{-2} - e^{-8} + e^{-18} - ...) frozen from the series by hand.
    CHECK(kolmogorov_q(1.0) == doctest::Approx(0.2699996).epsilon(1e-5));
    // Monotone decreasing.
    double prev = 1.0;
    for (double lam = 0.1; lam < 3.0; lam += 0.1) {
        double v = kolmogorov_q(lam);
        CHECK(v <= prev + 1e-15);
        prev = v;
    }
}

TEST_CASE("ks p-value calibration smoke test") {
    // Uniform samples against the uniform cdf: p should land well inside (0,1).
    Rng rng(31337);
    std::vector<double> xs(2000);
    for (double& x : xs) x = rng.uniform();
    double d = ks_statistic(xs, [](double x) { return std::min(1.0, std::max(0.0, x)); });
    double p = ks_pvalue(d, static_cast<double>(xs.size()));
    CHECK(p > 0.001);
    CHECK(p <= 1.0);
    // A grossly shifted sample must be rejected.
    for (double& x : xs) x = 0.5 + 0.5 * x;
    double d2 = ks_statistic(xs, [](double x) { return std::min(1.0, std::max(0.0, x)); });
    CHECK(ks_pvalue(d2, static_cast<double>(xs.size())) < 1e-10);
}
