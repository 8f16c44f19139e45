#include "swp/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "swp/polymer.hpp"
#include "swp/specfun.hpp"
#include "swp/stats.hpp"

namespace swp {

namespace {

double phi(double shape, double kappa, double t) {
    return polygamma(1, t) - kappa * polygamma(1, shape + t);
}

double phi_prime(double shape, double kappa, double t) {
    return polygamma(2, t) - kappa * polygamma(2, shape + t);
}

}  // namespace

CriticalPoint solve_critical_point(double shape, double kappa) {
    if (!(shape > 0.0)) throw std::domain_error("solve_critical_point: shape must be > 0");
    if (kappa <= 1.0) return {};  // psi'(t) > kappa psi'(k+t) everywhere

    /* phi decreases from +inf at t -> 0+ to (1-kappa)/t < 0; bracket the sign
       change on a log grid, bisect, then polish with Newton. */
    double lo = 1e-12, hi = 0.0;
    double t = lo;
    while (t < 1e12) {
        const double next = t * 1.5;
        if (phi(shape, kappa, next) < 0.0) {
            lo = t;
            hi = next;
            break;
        }
        t = next;
    }
    if (hi == 0.0) throw std::runtime_error("solve_critical_point: no sign change found");

    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (phi(shape, kappa, mid) > 0.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-13 * hi) break;
    }
    double root = 0.5 * (lo + hi);
    for (int i = 0; i < 6; ++i) {
        const double step = phi(shape, kappa, root) / phi_prime(shape, kappa, root);
        const double next = root - step;
        if (!(next > 0.0)) break;
        root = next;
        if (std::abs(step) < 1e-15 * root) break;
    }
    return {true, root, std::abs(phi(shape, kappa, root))};
}

CriticalData critical_data(const GammaParams& params, double kappa) {
    const CriticalPoint cp = solve_critical_point(params.shape, kappa);
    if (!cp.found)
        throw std::domain_error("critical_data: no critical point for kappa <= 1");
    const double k = params.shape;
    const double f_bar = -digamma(cp.t_bar) + kappa * digamma(k + cp.t_bar) +
                         (kappa - 1.0) * std::log(params.scale);
    const double g_bar = -polygamma(2, cp.t_bar) + kappa * polygamma(2, k + cp.t_bar);
    return {cp.t_bar, f_bar, g_bar};
}

VariationalResult variational_free_energy(const GammaParams& params, double kappa) {
    if (kappa < 1.0)
        throw std::domain_error("variational_free_energy: requires kappa >= 1");
    const double k = params.shape;
    const double shift = (kappa - 1.0) * std::log(params.scale);
    if (kappa == 1.0) {
        /* V(beta) = psi(k+beta) - psi(beta) decreases to 0; no interior
           minimizer. */
        return {false, std::numeric_limits<double>::infinity(), shift};
    }
    auto value = [&](double log_beta) {
        const double beta = std::exp(log_beta);
        return -digamma(beta) + kappa * digamma(k + beta);
    };
    /* Golden-section search in log beta; V is strictly unimodal for
       kappa > 1 (its derivative has a single sign change). */
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = std::log(1e-10), b = std::log(1e10);
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = value(c), fd = value(d);
    for (int i = 0; i < 120; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = value(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = value(d);
        }
    }
    const double log_beta = 0.5 * (a + b);
    return {true, std::exp(log_beta), value(log_beta) + shift};
}

LlnResult lln_experiment(const GammaParams& params, int kappa, int n, int replicas,
                         std::uint64_t master_seed, int threads) {
    const CriticalData cd = critical_data(params, kappa);
    const std::vector<double> logz =
        sample_free_energy(params, kappa, n, replicas, master_seed, threads);
    const MeanVar mv = mean_var(logz);
    const double mean_over_n = mv.mean / n;
    return {n,       replicas,          mean_over_n,
            mv.se / n, cd.f_bar, std::abs(mean_over_n - cd.f_bar)};
}

TwResult tw_experiment(const GammaParams& params, int kappa, int n, int replicas,
                       std::uint64_t master_seed, const TracyWidomTable& table,
                       int threads) {
    const CriticalData cd = critical_data(params, kappa);
    const double scale = std::cbrt(cd.g_bar * n / 2.0);
    std::vector<double> rescaled =
        sample_free_energy(params, kappa, n, replicas, master_seed, threads);
    for (double& v : rescaled) v = (v - n * cd.f_bar) / scale;
    const double ks = ks_statistic(std::move(rescaled), [&](double s) { return table.cdf(s); });
    return {n, replicas, ks, ks_pvalue(ks, static_cast<double>(replicas))};
}

double stationary_lln_value(const GammaParams& params, double beta, double kappa) {
    if (!(beta > 0.0)) throw std::domain_error("stationary_lln_value: beta must be > 0");
    const double logtheta = std::log(params.scale);
    return kappa * (digamma(beta + params.shape) + logtheta) - (digamma(beta) + logtheta);
}

}  // namespace swp
