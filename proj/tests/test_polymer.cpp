#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "swp/polymer.hpp"
#include "swp/specfun.hpp"
#include "swp/stats.hpp"

using namespace swp;

namespace {

WeightTable random_table(int t_max, int n_max, Rng& rng) {
    WeightTable w(t_max, n_max);
    for (int t = 0; t < t_max; ++t)
        for (int n = 1; n <= n_max; ++n) w.at(t, n) = 0.05 + 3.0 * rng.uniform();
    return w;
}

}  // namespace

TEST_CASE("trivial path enumerations") {
    Rng rng(1);
    WeightTable w = random_table(6, 4, rng);
    CHECK(enumerate_paths(w, {0, 1}) == 1.0);          // empty path
    CHECK(enumerate_paths(w, {3, 5}) == 0.0);          // unreachable, n > t+1
    double prod = w.at(0, 1) * w.at(1, 1) * w.at(2, 1) * w.at(3, 1);
    CHECK(enumerate_paths(w, {4, 1}) == doctest::Approx(prod).epsilon(1e-15));
    // (1,2): single path = one diagonal step, no weighted edge.
    CHECK(enumerate_paths(w, {1, 2}) == 1.0);
    // (2,2): either diagonal-then-horizontal at level 2 or horizontal-then-diagonal.
    CHECK(enumerate_paths(w, {2, 2}) ==
          doctest::Approx(w.at(1, 2) + w.at(0, 1)).epsilon(1e-15));
}

TEST_CASE("recursion equals path enumeration on random frozen lattices") {
    Rng rng(20240229);
    for (int rep = 0; rep < 100; ++rep) {
        int t = 1 + static_cast<int>(rng.next_u64() % 8);
        int nmax = std::min(6, t + 1);
        int n = 1 + static_cast<int>(rng.next_u64() % nmax);
        WeightTable w = random_table(t, std::min(6, t + 1), rng);
        double ze = enumerate_paths(w, {t, n});
        double zr = recursion_value(w, {t, n});
        CHECK(std::abs(zr - ze) / ze < 1e-12);
    }
}

TEST_CASE("field support pattern and boundary column") {
    Rng rng(7);
    GammaParams p(1.3, 0.8);
    LogPartitionField f = simulate_field(p, 6, 5, rng);
    CHECK(f.at(0, 1) == 0.0);
    for (int n = 2; n <= 5; ++n) CHECK(f.at(0, n) == kNegInf);
    for (int t = 0; t <= 6; ++t)
        for (int n = 1; n <= 5; ++n) {
            bool reachable = n <= t + 1;
            CHECK(std::isfinite(f.at(t, n)) == reachable);
        }
}

TEST_CASE("field at (2,2) is Gamma(2k, theta) in law") {
    const double k = 0.9, theta = 1.4;
    GammaParams p(k, theta);
    Rng rng(5150);
    std::vector<double> zs(100000);
    for (double& z : zs) {
        LogPartitionField f = simulate_field(p, 2, 2, rng);
        z = std::exp(f.at(2, 2));
    }
    double d = ks_statistic(zs, [&](double x) { return gamma_cdf(x, 2.0 * k, theta); });
    CHECK(ks_pvalue(d, static_cast<double>(zs.size())) > 0.01);
}

TEST_CASE("free energy samples: straight path moments") {
    // n = 1, kappa = 3: log Z = sum of 3 log-gamma variates.
    const double k = 2.0, theta = 0.5;
    auto xs = sample_free_energy(GammaParams(k, theta), 3, 1, 40000, 99);
    MeanVar mv = mean_var(xs);
    double want_mean = 3.0 * (digamma(k) + std::log(theta));
    double want_var = 3.0 * polygamma(1, k);
    CHECK(std::abs(mv.mean - want_mean) < 4.0 * mv.se);
    CHECK(std::abs(mv.var - want_var) < 0.05 * want_var);
}

TEST_CASE("free energy samples: mean of Z(2,2) near 2 for unit exponentials") {
    auto xs = sample_free_energy(GammaParams(1.0, 1.0), 1, 2, 200000, 4321);
    std::vector<double> z(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) z[i] = std::exp(xs[i]);
    MeanVar mv = mean_var(z);
    CHECK(std::abs(mv.mean - 2.0) < 4.0 * mv.se);
}

TEST_CASE("free energy sampling is deterministic and replica-distinct") {
    GammaParams p(1.0, 1.0);
    auto a = sample_free_energy(p, 2, 3, 4, 31415);
    auto b = sample_free_energy(p, 2, 3, 4, 31415);
    CHECK(a == b);
    CHECK(a[0] != a[1]);
    // Thread count must not change the values.
    auto c = sample_free_energy(p, 2, 3, 4, 31415, 3);
    CHECK(a == c);
}

TEST_CASE("simulate_field determinism") {
    GammaParams p(0.7, 2.0);
    Rng r1(64), r2(64);
    LogPartitionField f1 = simulate_field(p, 5, 4, r1);
    LogPartitionField f2 = simulate_field(p, 5, 4, r2);
    CHECK(f1.values == f2.values);
}
