#pragma once

#include <cstdint>
#include <vector>

#include "swp/rng.hpp"
#include "swp/specfun.hpp"

namespace swp {

/* epsilon-scaling of the q-TASEP toward the gamma-weight polymer:
   alpha = e^{-m1 eps}, q = e^{-theta eps}, weight shape k = m1/theta. */
struct ScalingParams {
    double epsilon;
    double theta;
    double m1;

    double alpha() const { return std::exp(-m1 * epsilon); }
    double q() const { return std::exp(-theta * epsilon); }
    double shape() const { return m1 / theta; }
    QParams qparams() const { return QParams(q(), alpha()); }
};

constexpr long long kInfiniteGap = -1;

/* Particle positions X_1 > X_2 > ... > X_N; step initial data X_n(0) = -n. */
struct QTasepState {
    std::vector<long long> x;
    long long time = 0;

    static QTasepState step_initial(int n_particles) {
        QTasepState s;
        s.x.resize(n_particles);
        for (int n = 1; n <= n_particles; ++n) s.x[n - 1] = -n;
        return s;
    }
    long long gap(int n) const {  // n is 1-based; gap_1 is infinite
        return n == 1 ? kInfiniteGap : x[n - 2] - x[n - 1] - 1;
    }
};

/* log p(j | m) of the geometric jump law; m = kInfiniteGap for the unbounded
   case.  Returns -inf for j > m. */
double jump_log_pmf(long long j, long long m, const QParams& qp);
double jump_pmf(long long j, long long m, const QParams& qp);

/* Inverse-CDF draw from p(.|gap) using the term ratio recurrence; early exit
   once the remaining tail is below 1e-15 of the total. */
long long sample_jump(long long gap, const QParams& qp, Rng& rng);

/* Parallel update: all jumps are drawn against the time-t gaps. */
void step(QTasepState& state, const QParams& qp, Rng& rng);

/* F(t,n) = (t-(n-1)) log(1/eps) - eps*theta*(X_n(t)+n). */
double fluctuation(long long x_n, int n, int t, const ScalingParams& sp);

/* Replica-parallel samples of F(t,n) from n-particle trajectories. */
std::vector<double> sample_fluctuations(const ScalingParams& sp, int t, int n,
                                        int replicas, std::uint64_t master_seed,
                                        int threads = 1);

struct McEstimate {
    double mean;
    double se;
};

/* Monte Carlo mean of 1 / (zeta q^{X_n(t)+n}; q)_inf, zeta < 0. */
McEstimate eq_laplace_mc(const ScalingParams& sp, int t, int n, double zeta,
                         int replicas, std::uint64_t master_seed, int threads = 1);

/* Monte Carlo mean of prod_i q^{X_{n_i}(t) + n_i}. */
McEstimate q_moment_mc(const QParams& qp, int t, const std::vector<int>& nvec,
                       int replicas, std::uint64_t master_seed, int threads = 1);

}  // namespace swp
