#pragma once

#include <vector>

#include "swp/rng.hpp"
#include "swp/specfun.hpp"

namespace swp {

/* m_0..m_K with m_i = theta^i * k(k+1)...(k+i-1), the raw gamma moments. */
std::vector<double> gamma_moments(const GammaParams& params, int K);

/* Joint moment u(t, n) = E[prod_i Z(t, n_i)] by the exact evolution equation:
   one step couples equal entries (clusters) through the moment factors
   m_{a} with binomial multiplicities, and decrements the rest.  nvec must be
   weakly decreasing.  Exponential blow-up is in k = nvec.size(), not t. */
double moment_recursion(const GammaParams& params, int t, const std::vector<int>& nvec);

struct ContourOptions {
    int initial_nodes = 128;
    double tol = 1e-9;        // node-doubling stop: |change| below tol*max(1,|value|)
    int max_doublings = 4;
    double imag_tol = 1e-9;   // allowed imaginary residual, relative
};

/* Same moment by the nested contour integral
     u = (2*pi*i)^{-k} oint...oint prod_{A<B} (z_A - z_B)/(z_A - z_B - theta)
         prod_j z_j^{1-n_j} (m_1 + z_j)^t dz_j / z_j,
   z_k on a small circle around 0 and each earlier circle wider by 1.5*theta.
   nvec entries may be arbitrary integers here (the formula is not symmetric
   in the indices; contour j carries exponent n_j).  Throws on a nonvanishing
   imaginary residual or failed node-doubling convergence. */
double moment_contour(const GammaParams& params, int t, const std::vector<int>& nvec,
                      const ContourOptions& opts = {});

/* q-deformed moment E[prod_i q^{X_{n_i}(t) + n_i}] for geometric q-TASEP with
   step initial data:
     (-1)^k q^{k(k-1)/2} (2*pi*i)^{-k} oint...oint prod_{A<B} (z_A - z_B)/(z_A - q z_B)
       prod_j (1 - z_j)^{-n_j} (1 - alpha z_j)^t dz_j / z_j,
   circles centered at 1, each containing the q-shrunk successor and excluding 0. */
double q_moment_contour(const QParams& qp, int t, const std::vector<int>& nvec,
                        const ContourOptions& opts = {});

/* Two-body boundary residual at a doubled index pair (nvec[i] == nvec[i+1]):
     (m_1^2 - m_2) u(t,n) + m_1 [u(t, n - e_i) - u(t, n - e_{i+1})]
   evaluated with the contour continuation; returns the residual divided by
   the largest term magnitude. */
double boundary_residual(const GammaParams& params, int t, const std::vector<int>& nvec,
                         int i, const ContourOptions& opts = {});

}  // namespace swp
