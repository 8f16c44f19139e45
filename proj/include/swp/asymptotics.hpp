#pragma once

#include <cstdint>

#include "swp/fredholm.hpp"
#include "swp/rng.hpp"

namespace swp {

/* Root t_bar of psi'(t) = kappa psi'(k + t) on (0, inf).  No root exists for
   kappa <= 1 (found = false); residual is |psi'(t) - kappa psi'(k+t)| at the
   returned point. */
struct CriticalPoint {
    bool found = false;
    double t_bar = 0.0;
    double residual = 0.0;
};
CriticalPoint solve_critical_point(double shape, double kappa);

/* Limit constants along the ray t = kappa n:
     f_bar = -psi(t_bar) + kappa psi(k + t_bar) + (kappa - 1) log theta,
     g_bar = -psi''(t_bar) + kappa psi''(k + t_bar)  (theta-independent),
   so that log Z(kappa n, n) ~ n f_bar + (g_bar n / 2)^{1/3} * (GUE TW).
   Throws std::domain_error when the critical point does not exist. */
struct CriticalData {
    double t_bar;
    double f_bar;
    double g_bar;
};
CriticalData critical_data(const GammaParams& params, double kappa);

/* Independent route to f_bar: minimize
     V(beta) = -psi(beta) + kappa psi(k + beta) + (kappa - 1) log theta
   over beta > 0 by golden-section search.  For kappa = 1 the infimum 0 is
   attained only in the beta -> inf limit (interior = false). */
struct VariationalResult {
    bool interior = false;
    double beta_star = 0.0;
    double value = 0.0;
};
VariationalResult variational_free_energy(const GammaParams& params, double kappa);

/* Law-of-large-numbers probe: mean of log Z(kappa n, n) / n over replicas
   against f_bar. */
struct LlnResult {
    int n;
    int replicas;
    double mean_over_n;
    double se_over_n;
    double f_bar;
    double deviation;  // |mean_over_n - f_bar|
};
LlnResult lln_experiment(const GammaParams& params, int kappa, int n, int replicas,
                         std::uint64_t master_seed, int threads = 1);

/* Fluctuation probe: KS distance of (log Z - n f_bar) / (g_bar n / 2)^{1/3}
   against the GUE Tracy-Widom law. */
struct TwResult {
    int n;
    int replicas;
    double ks;
    double pvalue;
};
TwResult tw_experiment(const GammaParams& params, int kappa, int n, int replicas,
                       std::uint64_t master_seed, const TracyWidomTable& table,
                       int threads = 1);

/* Stationary-boundary free energy density along t = kappa n:
   kappa (psi(beta + k) + log theta) - (psi(beta) + log theta). */
double stationary_lln_value(const GammaParams& params, double beta, double kappa);

}  // namespace swp
