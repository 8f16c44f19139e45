#pragma once

#include <cstdint>
#include <vector>

#include "swp/rng.hpp"
#include "swp/util.hpp"

namespace swp {

struct LatticePoint {
    int t;  // time, >= 0
    int n;  // space, >= 1
};

/* log Z(t,n) over the window {0..t_max} x {1..n_max}; -inf encodes Z = 0.
   Delta initial data: Z(0,1) = 1 and Z(0,n) = 0 for n > 1, so Z(t,n) is
   positive exactly when 1 <= n <= t+1. */
struct LogPartitionField {
    int t_max = 0, n_max = 1;
    std::vector<double> values;

    LogPartitionField(int tm, int nm)
        : t_max(tm), n_max(nm),
          values(static_cast<std::size_t>(tm + 1) * nm, kNegInf) {}
    double& at(int t, int n) { return values[static_cast<std::size_t>(t) * n_max + (n - 1)]; }
    double at(int t, int n) const {
        return values[static_cast<std::size_t>(t) * n_max + (n - 1)];
    }
};

/* Frozen multiplicative weights: at(t,n) is the weight of the horizontal step
   (t,n) -> (t+1,n); diagonal steps (t,n) -> (t+1,n+1) always carry weight 1. */
struct WeightTable {
    int t_max = 0, n_max = 1;
    std::vector<double> w;

    WeightTable(int tm, int nm)
        : t_max(tm), n_max(nm), w(static_cast<std::size_t>(tm) * nm, 1.0) {}
    double& at(int t, int n) { return w[static_cast<std::size_t>(t) * n_max + (n - 1)]; }
    double at(int t, int n) const { return w[static_cast<std::size_t>(t) * n_max + (n - 1)]; }
};

/* One joint sample of the whole field: Z(t+1,n) = Y(t,n) Z(t,n) + Z(t,n-1)
   with i.i.d. Gamma(k,theta) weights, evaluated in log space. */
LogPartitionField simulate_field(const GammaParams& params, int t_max, int n_max, Rng& rng);

/* `replicas` independent samples of log Z(kappa*n, n); O(n) memory per
   replica (single rolled column).  Replica r uses the stream derived from
   (master_seed, r), so the output is identical for any thread count. */
std::vector<double> sample_free_energy(const GammaParams& params, int kappa, int n,
                                       int replicas, std::uint64_t master_seed,
                                       int threads = 1);

/* Exact Z(t,n) for frozen weights, summing weight products path by path
   (positions of the n-1 diagonal steps among t slots).  Oracle-grade:
   exponential in t, keep t small. */
double enumerate_paths(const WeightTable& weights, LatticePoint target);

/* Z(t,n) for the same frozen weights via the linear recursion. */
double recursion_value(const WeightTable& weights, LatticePoint target);

}  // namespace swp
