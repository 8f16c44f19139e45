#include "swp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace swp {

MeanVar mean_var(const std::vector<double>& xs) {
    if (xs.empty()) throw std::invalid_argument("mean_var: empty sample");
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    double var = xs.size() > 1 ? ss / static_cast<double>(xs.size() - 1) : 0.0;
    return {mean, var, std::sqrt(var / static_cast<double>(xs.size())), xs.size()};
}

double gamma_cdf(double x, double shape, double scale) {
    if (x <= 0.0) return 0.0;
    return boost::math::gamma_p(shape, x / scale);
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double f = cdf(samples[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("ks_statistic_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double kolmogorov_q(double lambda) {
    if (lambda <= 0.0) return 1.0;
    if (lambda < 1.18) {
        /* Jacobi-theta dual form, rapidly convergent for small lambda:
           P(D <= lambda) = sqrt(2 pi)/lambda * sum_j exp(-(2j-1)^2 pi^2 / (8 lambda^2)). */
        const double pi = 3.14159265358979323846;
        double a = pi * pi / (8.0 * lambda * lambda);
        double p = 0.0;
        for (int j = 1; j <= 20; ++j) {
            double term = std::exp(-(2.0 * j - 1.0) * (2.0 * j - 1.0) * a);
            p += term;
            if (term < 1e-18) break;
        }
        p *= std::sqrt(2.0 * pi) / lambda;
        return std::min(1.0, std::max(0.0, 1.0 - p));
    }
    double s = 0.0;
    for (int j = 1; j <= 100; ++j) {
        double term = std::exp(-2.0 * j * j * lambda * lambda);
        s += (j % 2 == 1) ? term : -term;
        if (term < 1e-16) break;
    }
    return std::min(1.0, std::max(0.0, 2.0 * s));
}

double ks_pvalue(double d, double n_eff) {
    double rn = std::sqrt(n_eff);
    return kolmogorov_q((rn + 0.12 + 0.11 / rn) * d);
}

}  // namespace swp
