#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "swp/rng.hpp"

namespace swp {

/* Boundary-parameter stationary model: horizontal boundary ratios are
   Gamma(beta + k, theta), reciprocals of vertical boundary ratios are
   Gamma(beta, theta), bulk weights Gamma(k, theta). */
struct StationaryConfig {
    double beta;
    GammaParams gamma_params;
};

/* Edge-ratio field on {0..t_max} x {1..n_max} together with the log
   partition-function field:
     u(t,n) = Z*(t,n)/Z*(t-1,n)  (horizontal edge into (t,n), t >= 1),
     v(t,n) = Z*(t,n)/Z*(t,n-1)  (vertical edge into (t,n),  n >= 2),
     y(t,n) = bulk weight on the horizontal edge into (t,n) (t >= 1, n >= 2).
   Z*(0,1) = 1; row 1 and column 0 carry the boundary laws; the bulk is
   filled by
     u(t,n) = y(t,n) + 1/v(t-1,n),
     v(t,n) = (y(t,n) v(t-1,n) + 1) / u(t,n-1),
   while logz is advanced independently through the partition-function
   recursion Z*(t,n) = y(t,n) Z*(t-1,n) + Z*(t-1,n-1), so ratio route and
   log route can be cross-checked. */
struct StationaryField {
    int t_max = 0, n_max = 1;
    std::vector<double> u_, v_, y_, logz_;

    StationaryField(int tm, int nm);
    std::size_t idx(int t, int n) const {
        return static_cast<std::size_t>(t) * n_max + (n - 1);
    }
    double& u(int t, int n) { return u_[idx(t, n)]; }
    double u(int t, int n) const { return u_[idx(t, n)]; }
    double& v(int t, int n) { return v_[idx(t, n)]; }
    double v(int t, int n) const { return v_[idx(t, n)]; }
    double& y(int t, int n) { return y_[idx(t, n)]; }
    double y(int t, int n) const { return y_[idx(t, n)]; }
    double& logz(int t, int n) { return logz_[idx(t, n)]; }
    double logz(int t, int n) const { return logz_[idx(t, n)]; }
};

/* Draw order is fixed (row-1 ratios, then column-0 ratios, then the bulk row
   by row), so a given rng stream always produces the same field. */
StationaryField build_stationary_field(const StationaryConfig& config, int t_max,
                                       int n_max, Rng& rng);

/* One cell move: (u', v', y') = (y + 1/v, (y v + 1)/u, u v y / (y v + 1)).
   For independent u ~ Gamma(beta+k,theta), 1/v ~ Gamma(beta,theta),
   y ~ Gamma(k,theta) the output triple has the same joint law. */
struct BetaGammaTriple {
    double u, v, y;
};
BetaGammaTriple beta_gamma_update(double u, double v, double y);

/* Shift-invariance report: edge-ratio samples at (t0,n0) versus
   (t0+dt, n0+dn), one independently built field per replica, plus a
   one-sample comparison of the shifted marginal against its exact law
   (horizontal: Gamma(beta+k,theta); vertical reciprocal: Gamma(beta,theta)). */
struct ShiftKsRow {
    int dt, dn;
    bool horizontal;
    double ks_two_sample;
    double p_two_sample;
    double ks_vs_law;
    double p_vs_law;
};
std::vector<ShiftKsRow> shift_invariance_test(const StationaryConfig& config, int t0,
                                              int n0,
                                              const std::vector<std::pair<int, int>>& shifts,
                                              int samples, std::uint64_t master_seed,
                                              int threads = 1);

/* Residual (in log space, ~ relative error) of the boundary decomposition
     Z*(T,N) = sum_{j=1}^{T-N+2} Z*(j-1,1) Z_{(j,2)}(T,N)
             + sum_{l=2}^{N}     Z*(0,l)   Z_{(0,l)}(T,N)     (N >= 2),
   where Z_x(T,N) is the point-to-point partition function over bulk weights
   only.  For N = 1 the right side is the row-1 boundary product. */
double decomposition_residual(const StationaryField& field, int t, int n);

/* Single-trajectory free energy along the diagonal with O(n) memory. */
struct StationaryLln {
    int n;
    double value;  // log Z*(n,n) / n
    double limit;  // psi(beta + k) - psi(beta)
    double tol;    // 5 sqrt((psi'(beta+k) + psi'(beta)) / n)
};
StationaryLln stationary_lln_trajectory(const StationaryConfig& config, int n,
                                        std::uint64_t seed);

}  // namespace swp
