#include "swp/qtasep.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "swp/stats.hpp"
#include "swp/util.hpp"

namespace swp {

double jump_log_pmf(long long j, long long m, const QParams& qp) {
    if (j < 0) return kNegInf;
    if (m == kInfiniteGap) {
        return static_cast<double>(j) * std::log(qp.alpha) +
               log_q_pochhammer_inf(qp.alpha, qp.q) -
               log_q_pochhammer(qp.q, qp.q, static_cast<unsigned>(j));
    }
    if (m < 0) throw std::domain_error("jump_log_pmf: negative gap");
    if (j > m) return kNegInf;
    const unsigned mj = static_cast<unsigned>(m - j);
    return static_cast<double>(j) * std::log(qp.alpha) +
           log_q_pochhammer(qp.alpha, qp.q, mj) +
           log_q_pochhammer(qp.q, qp.q, static_cast<unsigned>(m)) -
           log_q_pochhammer(qp.q, qp.q, mj) -
           log_q_pochhammer(qp.q, qp.q, static_cast<unsigned>(j));
}

double jump_pmf(long long j, long long m, const QParams& qp) {
    const double lp = jump_log_pmf(j, m, qp);
    return lp == kNegInf ? 0.0 : std::exp(lp);
}

namespace {

/* (alpha;q)_m in linear space; factors beyond alpha q^i < 1e-17 contribute
   less than machine precision and are skipped. */
double truncated_pochhammer(double alpha, double q, long long m) {
    double p = 1.0;
    double aq = alpha;
    for (long long i = 0; i < m && aq > 1e-17; ++i) {
        p *= 1.0 - aq;
        aq *= q;
    }
    return p;
}

}  // namespace

long long sample_jump(long long gap, const QParams& qp, Rng& rng) {
    if (gap == 0) return 0;
    const double u = rng.uniform();
    const double q = qp.q;
    const double alpha = qp.alpha;

    double p, cum;
    long long j = 0;
    if (gap == kInfiniteGap) {
        p = std::exp(log_q_pochhammer_inf(alpha, q));
        if (!(p > 0.0))
            throw std::runtime_error("sample_jump: pmf head underflows double range");
        cum = p;
        double qj = 1.0;  // q^j
        while (cum < u) {
            ++j;
            qj *= q;
            const double ratio = alpha / (1.0 - qj);
            p *= ratio;
            cum += p;
            if (ratio < 0.999 && p < 1e-15 * cum) break;
        }
        return j;
    }

    p = truncated_pochhammer(alpha, q, gap);
    cum = p;
    double qj = 1.0;                                         // q^j
    double qmj = std::exp(static_cast<double>(gap) * std::log(q));  // q^{m-j}
    while (cum < u && j < gap) {
        ++j;
        qj *= q;
        const double qmj1 = qmj;  // q^{m-j+1}
        qmj /= q;
        const double ratio = alpha * (1.0 - qmj1) / ((1.0 - alpha * qmj) * (1.0 - qj));
        p *= ratio;
        cum += p;
        if (ratio < 0.999 && p < 1e-15 * cum) break;
    }
    return j;
}

void step(QTasepState& state, const QParams& qp, Rng& rng) {
    const int n_particles = static_cast<int>(state.x.size());
    std::vector<long long> jumps(n_particles);
    for (int n = 1; n <= n_particles; ++n)
        jumps[n - 1] = sample_jump(state.gap(n), qp, rng);
    for (int i = 0; i < n_particles; ++i) state.x[i] += jumps[i];
    ++state.time;
}

double fluctuation(long long x_n, int n, int t, const ScalingParams& sp) {
    return -static_cast<double>(t - (n - 1)) * std::log(sp.epsilon) -
           sp.epsilon * sp.theta * static_cast<double>(x_n + n);
}

std::vector<double> sample_fluctuations(const ScalingParams& sp, int t, int n,
                                        int replicas, std::uint64_t master_seed,
                                        int threads) {
    const QParams qp = sp.qparams();
    std::vector<double> out(replicas);
    parallel_for(replicas, threads, [&](int r) {
        Rng rng = Rng::for_replica(master_seed, static_cast<std::uint64_t>(r));
        QTasepState state = QTasepState::step_initial(n);
        for (int s = 0; s < t; ++s) step(state, qp, rng);
        out[r] = fluctuation(state.x[n - 1], n, t, sp);
    });
    return out;
}

McEstimate eq_laplace_mc(const ScalingParams& sp, int t, int n, double zeta,
                         int replicas, std::uint64_t master_seed, int threads) {
    const QParams qp = sp.qparams();
    std::vector<double> obs(replicas);
    parallel_for(replicas, threads, [&](int r) {
        Rng rng = Rng::for_replica(master_seed, static_cast<std::uint64_t>(r));
        QTasepState state = QTasepState::step_initial(n);
        for (int s = 0; s < t; ++s) step(state, qp, rng);
        const double qpow =
            std::exp(static_cast<double>(state.x[n - 1] + n) * std::log(qp.q));
        obs[r] = std::exp(-log_q_pochhammer_inf(zeta * qpow, qp.q));
    });
    const MeanVar mv = mean_var(obs);
    return {mv.mean, mv.se};
}

McEstimate q_moment_mc(const QParams& qp, int t, const std::vector<int>& nvec,
                       int replicas, std::uint64_t master_seed, int threads) {
    if (nvec.empty()) throw std::invalid_argument("q_moment_mc: empty index vector");
    int n_max = 1;
    for (int n : nvec) {
        if (n < 1) throw std::invalid_argument("q_moment_mc: indices must be >= 1");
        n_max = std::max(n_max, n);
    }
    const double logq = std::log(qp.q);
    std::vector<double> obs(replicas);
    parallel_for(replicas, threads, [&](int r) {
        Rng rng = Rng::for_replica(master_seed, static_cast<std::uint64_t>(r));
        QTasepState state = QTasepState::step_initial(n_max);
        for (int s = 0; s < t; ++s) step(state, qp, rng);
        double expo = 0.0;
        for (int n : nvec) expo += static_cast<double>(state.x[n - 1] + n);
        obs[r] = std::exp(expo * logq);
    });
    const MeanVar mv = mean_var(obs);
    return {mv.mean, mv.se};
}

}  // namespace swp
