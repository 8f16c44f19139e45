#include "swp/polymer.hpp"

#include <cmath>
#include <stdexcept>

namespace swp {

LogPartitionField simulate_field(const GammaParams& params, int t_max, int n_max, Rng& rng) {
    if (t_max < 0 || n_max < 1)
        throw std::invalid_argument("simulate_field: need t_max >= 0, n_max >= 1");
    LogPartitionField f(t_max, n_max);
    f.at(0, 1) = 0.0;
    for (int t = 0; t < t_max; ++t) {
        for (int n = 1; n <= n_max; ++n) {
            double log_y = std::log(rng.gamma(params));
            double keep = f.at(t, n) + log_y;
            double diag = n > 1 ? f.at(t, n - 1) : kNegInf;
            f.at(t + 1, n) = log_sum_exp(keep, diag);
        }
    }
    return f;
}

std::vector<double> sample_free_energy(const GammaParams& params, int kappa, int n,
                                       int replicas, std::uint64_t master_seed,
                                       int threads) {
    if (kappa < 1 || n < 1) throw std::invalid_argument("sample_free_energy: kappa, n >= 1");
    if (static_cast<long long>(kappa) * n < n - 1)
        throw std::invalid_argument("sample_free_energy: target not reachable");
    const int t_end = kappa * n;
    std::vector<double> out(replicas);
    parallel_for(replicas, threads, [&](std::int64_t r) {
        Rng rng = Rng::for_replica(master_seed, static_cast<std::uint64_t>(r));
        std::vector<double> col(n + 1, kNegInf);  // col[j] = log Z(t, j), col[0] unused
        col[1] = 0.0;
        for (int t = 0; t < t_end; ++t) {
            int live = std::min(n, t + 2);  // Z(t+1, j) can be positive only for j <= t+2
            for (int j = live; j >= 1; --j) {
                double log_y = std::log(rng.gamma(params));
                double keep = col[j] + log_y;
                double diag = j > 1 ? col[j - 1] : kNegInf;
                col[j] = log_sum_exp(keep, diag);
            }
        }
        out[static_cast<std::size_t>(r)] = col[n];
    });
    return out;
}

double enumerate_paths(const WeightTable& weights, LatticePoint target) {
    const int t = target.t, n = target.n;
    if (t < 0 || n < 1) throw std::invalid_argument("enumerate_paths: bad target");
    if (n > t + 1) return 0.0;
    if (t > weights.t_max || n > weights.n_max)
        throw std::invalid_argument("enumerate_paths: target outside weight table");
    /* Choose the time slots of the n-1 diagonal steps; all remaining slots are
       horizontal steps at the level the path has reached so far. */
    double total = 0.0;
    std::vector<int> diag(n - 1);
    // First combination: earliest slots 0,1,...,n-2.
    for (int i = 0; i < n - 1; ++i) diag[i] = i;
    for (;;) {
        double w = 1.0;
        int level = 1, next = 0;
        for (int s = 0; s < t; ++s) {
            if (next < n - 1 && diag[next] == s) {
                ++level;  // diagonal step, weight 1
                ++next;
            } else {
                w *= weights.at(s, level);
            }
        }
        total += w;
        // Advance to the next combination of n-1 slots out of t.
        int i = n - 2;
        while (i >= 0 && diag[i] == t - (n - 1) + i) --i;
        if (i < 0) break;
        ++diag[i];
        for (int j = i + 1; j < n - 1; ++j) diag[j] = diag[j - 1] + 1;
    }
    return total;
}

double recursion_value(const WeightTable& weights, LatticePoint target) {
    const int t = target.t, n = target.n;
    if (t < 0 || n < 1) throw std::invalid_argument("recursion_value: bad target");
    if (n > t + 1) return 0.0;
    std::vector<double> col(n + 1, 0.0);
    col[1] = 1.0;
    for (int s = 0; s < t; ++s) {
        for (int j = std::min(n, s + 2); j >= 1; --j)
            col[j] = weights.at(s, j) * col[j] + (j > 1 ? col[j - 1] : 0.0);
    }
    return col[n];
}

}  // namespace swp
