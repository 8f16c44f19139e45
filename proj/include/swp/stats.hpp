#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace swp {

struct MeanVar {
    double mean;
    double var;    // unbiased sample variance
    double se;     // standard error of the mean
    std::size_t n;
};

MeanVar mean_var(const std::vector<double>& xs);

/* Regularized lower incomplete gamma P(shape, x/scale). */
double gamma_cdf(double x, double shape, double scale);

/* One-sample Kolmogorov-Smirnov statistic sup_x |F_n(x) - F(x)|.
   Sorts a copy of the samples. */
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

/* Two-sample KS statistic between two empirical laws. */
double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b);

/* Kolmogorov tail Q(lambda) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lambda^2). */
double kolmogorov_q(double lambda);

/* Asymptotic KS p-value with the Stephens small-sample correction;
   n_eff = n for one sample, n*m/(n+m) for two. */
double ks_pvalue(double d, double n_eff);

}  // namespace swp
