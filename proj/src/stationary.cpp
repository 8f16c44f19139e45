#include "swp/stationary.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "swp/specfun.hpp"
#include "swp/stats.hpp"
#include "swp/util.hpp"

namespace swp {

StationaryField::StationaryField(int tm, int nm)
    : t_max(tm), n_max(nm),
      u_(static_cast<std::size_t>(tm + 1) * nm, std::numeric_limits<double>::quiet_NaN()),
      v_(u_.size(), std::numeric_limits<double>::quiet_NaN()),
      y_(u_.size(), std::numeric_limits<double>::quiet_NaN()),
      logz_(u_.size(), std::numeric_limits<double>::quiet_NaN()) {}

StationaryField build_stationary_field(const StationaryConfig& config, int t_max,
                                       int n_max, Rng& rng) {
    if (t_max < 1 || n_max < 2)
        throw std::domain_error("build_stationary_field: window must be at least 2x2");
    if (!(config.beta > 0.0))
        throw std::domain_error("build_stationary_field: beta must be > 0");
    const double k = config.gamma_params.shape;
    const double theta = config.gamma_params.scale;
    const GammaParams horizontal{config.beta + k, theta};

    StationaryField f(t_max, n_max);
    f.logz(0, 1) = 0.0;
    for (int t = 1; t <= t_max; ++t) {
        f.u(t, 1) = rng.gamma(horizontal);
        f.logz(t, 1) = f.logz(t - 1, 1) + std::log(f.u(t, 1));
    }
    for (int n = 2; n <= n_max; ++n) {
        f.v(0, n) = rng.inverse_gamma(config.beta, theta);
        f.logz(0, n) = f.logz(0, n - 1) + std::log(f.v(0, n));
    }
    for (int t = 1; t <= t_max; ++t) {
        for (int n = 2; n <= n_max; ++n) {
            const double y = rng.gamma(config.gamma_params);
            f.y(t, n) = y;
            f.u(t, n) = y + 1.0 / f.v(t - 1, n);
            f.v(t, n) = (y * f.v(t - 1, n) + 1.0) / f.u(t, n - 1);
            if (!(f.v(t, n) > 0.0) || !std::isfinite(f.v(t, n)) || !std::isfinite(f.u(t, n)))
                throw std::runtime_error("build_stationary_field: ratio out of range");
            f.logz(t, n) =
                log_sum_exp(std::log(y) + f.logz(t - 1, n), f.logz(t - 1, n - 1));
        }
    }
    return f;
}

BetaGammaTriple beta_gamma_update(double u, double v, double y) {
    if (!(u > 0.0) || !(v > 0.0) || !(y > 0.0))
        throw std::domain_error("beta_gamma_update: inputs must be positive");
    const double yv1 = y * v + 1.0;
    return {y + 1.0 / v, yv1 / u, u * v * y / yv1};
}

std::vector<ShiftKsRow> shift_invariance_test(const StationaryConfig& config, int t0,
                                              int n0,
                                              const std::vector<std::pair<int, int>>& shifts,
                                              int samples, std::uint64_t master_seed,
                                              int threads) {
    if (t0 < 1 || n0 < 2)
        throw std::domain_error("shift_invariance_test: base point needs t >= 1, n >= 2");
    int t_max = t0, n_max = n0;
    for (const auto& [dt, dn] : shifts) {
        if (t0 + dt < 1 || n0 + dn < 2)
            throw std::domain_error("shift_invariance_test: shifted point leaves the window");
        t_max = std::max(t_max, t0 + dt);
        n_max = std::max(n_max, n0 + dn);
    }

    const std::size_t s_count = shifts.size();
    std::vector<double> h0(samples), v0(samples);
    std::vector<std::vector<double>> hs(s_count, std::vector<double>(samples));
    std::vector<std::vector<double>> vs(s_count, std::vector<double>(samples));
    parallel_for(samples, threads, [&](int r) {
        Rng rng = Rng::for_replica(master_seed, static_cast<std::uint64_t>(r));
        const StationaryField f = build_stationary_field(config, t_max, n_max, rng);
        h0[r] = f.u(t0, n0);
        v0[r] = f.v(t0, n0);
        for (std::size_t s = 0; s < s_count; ++s) {
            hs[s][r] = f.u(t0 + shifts[s].first, n0 + shifts[s].second);
            vs[s][r] = f.v(t0 + shifts[s].first, n0 + shifts[s].second);
        }
    });

    const double k = config.gamma_params.shape;
    const double theta = config.gamma_params.scale;
    auto law_h = [&](double x) { return gamma_cdf(x, config.beta + k, theta); };
    auto law_v = [&](double x) { return gamma_cdf(x, config.beta, theta); };
    const double n_eff_two = samples / 2.0;  // n*m/(n+m) with equal sizes

    std::vector<ShiftKsRow> rows;
    for (std::size_t s = 0; s < s_count; ++s) {
        ShiftKsRow h{shifts[s].first, shifts[s].second, true, 0, 0, 0, 0};
        h.ks_two_sample = ks_statistic_two_sample(h0, hs[s]);
        h.p_two_sample = ks_pvalue(h.ks_two_sample, n_eff_two);
        h.ks_vs_law = ks_statistic(hs[s], law_h);
        h.p_vs_law = ks_pvalue(h.ks_vs_law, static_cast<double>(samples));
        rows.push_back(h);

        std::vector<double> r0(samples), r1(samples);
        for (int i = 0; i < samples; ++i) {
            r0[i] = 1.0 / v0[i];
            r1[i] = 1.0 / vs[s][i];
        }
        ShiftKsRow v{shifts[s].first, shifts[s].second, false, 0, 0, 0, 0};
        v.ks_two_sample = ks_statistic_two_sample(r0, r1);
        v.p_two_sample = ks_pvalue(v.ks_two_sample, n_eff_two);
        v.ks_vs_law = ks_statistic(r1, law_v);
        v.p_vs_law = ks_pvalue(v.ks_vs_law, static_cast<double>(samples));
        rows.push_back(v);
    }
    return rows;
}

namespace {

/* log of the point-to-point partition function from (t0,n0) to (T,N) over
   the bulk rows n >= 2 only (horizontal edge into (t,n) weighted y(t,n),
   diagonal edges weight 1). */
double point_to_point_log(const StationaryField& f, int t0, int n0, int T, int N) {
    if (n0 > N || t0 > T || N - n0 > T - t0) return kNegInf;
    std::vector<double> col(N + 1, kNegInf);
    col[n0] = 0.0;
    for (int t = t0 + 1; t <= T; ++t) {
        for (int n = N; n >= 2; --n)
            col[n] = log_sum_exp(std::log(f.y(t, n)) + col[n], col[n - 1]);
    }
    return col[N];
}

}  // namespace

double decomposition_residual(const StationaryField& field, int t, int n) {
    if (t < 1 || t > field.t_max || n < 1 || n > field.n_max)
        throw std::domain_error("decomposition_residual: point outside the window");
    if (n == 1) {
        double rhs = 0.0;
        for (int s = 1; s <= t; ++s) rhs += std::log(field.u(s, 1));
        return std::abs(rhs - field.logz(t, 1));
    }
    double rhs = kNegInf;
    for (int j = 1; j <= t - n + 2; ++j)
        rhs = log_sum_exp(rhs, field.logz(j - 1, 1) + point_to_point_log(field, j, 2, t, n));
    for (int l = 2; l <= n; ++l)
        rhs = log_sum_exp(rhs, field.logz(0, l) + point_to_point_log(field, 0, l, t, n));
    return std::abs(rhs - field.logz(t, n));
}

StationaryLln stationary_lln_trajectory(const StationaryConfig& config, int n,
                                        std::uint64_t seed) {
    if (n < 2) throw std::domain_error("stationary_lln_trajectory: need n >= 2");
    const double k = config.gamma_params.shape;
    const double theta = config.gamma_params.scale;
    const GammaParams horizontal{config.beta + k, theta};
    Rng rng = Rng::for_replica(seed, 0);

    std::vector<double> prev(n + 1), cur(n + 1);
    prev[1] = 0.0;
    for (int l = 2; l <= n; ++l)
        prev[l] = prev[l - 1] + std::log(rng.inverse_gamma(config.beta, theta));
    for (int t = 1; t <= n; ++t) {
        cur[1] = prev[1] + std::log(rng.gamma(horizontal));
        for (int m = 2; m <= n; ++m)
            cur[m] = log_sum_exp(std::log(rng.gamma(config.gamma_params)) + prev[m],
                                 prev[m - 1]);
        std::swap(prev, cur);
    }
    const double value = prev[n] / n;
    const double limit = digamma(config.beta + k) - digamma(config.beta);
    const double tol =
        5.0 * std::sqrt((polygamma(1, config.beta + k) + polygamma(1, config.beta)) / n);
    return {n, value, limit, tol};
}

}  // namespace swp
