#include "swp/moments.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <stdexcept>

namespace swp {

namespace {

using cplx = std::complex<double>;
constexpr double kTwoPi = 6.28318530717958647692;

cplx ipow(cplx z, int e) {
    if (e < 0) return 1.0 / ipow(z, -e);
    cplx r = 1.0;
    while (e) {
        if (e & 1) r *= z;
        z *= z;
        e >>= 1;
    }
    return r;
}

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

struct MemoKey {
    int t;
    std::vector<int> nvec;
    bool operator<(const MemoKey& o) const {
        if (t != o.t) return t < o.t;
        return nvec < o.nvec;
    }
};

double recurse(const std::vector<double>& m, int t, std::vector<int> nvec,
               std::map<MemoKey, double>& memo) {
    for (int n : nvec)
        if (n < 1 || n > t + 1) return 0.0;
    if (t == 0) return 1.0;  // all entries are 1 after the range check
    MemoKey key{t, nvec};
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    // Cluster decomposition of the weakly decreasing vector.
    std::vector<std::pair<int, int>> clusters;  // (value, count)
    for (int n : nvec) {
        if (!clusters.empty() && clusters.back().first == n)
            ++clusters.back().second;
        else
            clusters.emplace_back(n, 1);
    }
    const int L = static_cast<int>(clusters.size());

    /* One step back: within cluster i of size c_i, keep a_i entries at their
       value (collecting the moment factor m_{a_i} and a binomial count) and
       decrement the remaining c_i - a_i. */
    std::vector<int> a(L, 0);
    double total = 0.0;
    for (;;) {
        double coeff = 1.0;
        std::vector<int> prev;
        prev.reserve(nvec.size());
        for (int i = 0; i < L; ++i) {
            coeff *= binom(clusters[i].second, a[i]) * m[a[i]];
            for (int r = 0; r < a[i]; ++r) prev.push_back(clusters[i].first);
            for (int r = a[i]; r < clusters[i].second; ++r)
                prev.push_back(clusters[i].first - 1);
        }
        std::sort(prev.begin(), prev.end(), std::greater<int>());
        total += coeff * recurse(m, t - 1, std::move(prev), memo);
        int i = 0;
        while (i < L && a[i] == clusters[i].second) a[i++] = 0;
        if (i == L) break;
        ++a[i];
    }
    memo.emplace(key, total);
    return total;
}

/* Iterated trapezoid sum over k nested circles.  self[j][s] is the one-point
   factor (including the quadrature weight) of node s on circle j; pair_fn
   gives the interaction factor of an ordered pair (outer index first). */
double nested_contour_sum(const std::vector<std::vector<cplx>>& nodes,
                          const std::vector<std::vector<cplx>>& self,
                          const std::function<cplx(cplx, cplx)>& pair_fn,
                          double imag_tol, const char* what) {
    const int k = static_cast<int>(nodes.size());
    cplx sum = 0.0;
    std::vector<int> idx(k, 0);
    std::vector<cplx> partial(k + 1);
    partial[0] = 1.0;
    int depth = 0;
    for (;;) {
        if (idx[depth] == static_cast<int>(nodes[depth].size())) {
            idx[depth] = 0;
            if (depth == 0) break;
            --depth;
            ++idx[depth];
            continue;
        }
        cplx z = nodes[depth][idx[depth]];
        cplx f = self[depth][idx[depth]];
        for (int i = 0; i < depth; ++i) f *= pair_fn(nodes[i][idx[i]], z);
        partial[depth + 1] = partial[depth] * f;
        if (depth == k - 1) {
            sum += partial[depth + 1];
            ++idx[depth];
        } else {
            ++depth;
        }
    }
    double scale = std::max(1.0, std::abs(sum.real()));
    if (std::abs(sum.imag()) > imag_tol * scale)
        throw std::runtime_error(std::string(what) + ": imaginary residual too large");
    return sum.real();
}

double converged_contour(const ContourOptions& opts,
                         const std::function<double(int)>& eval, const char* what) {
    int n = opts.initial_nodes;
    double prev = eval(n);
    for (int d = 0; d < opts.max_doublings; ++d) {
        n *= 2;
        double next = eval(n);
        if (std::abs(next - prev) <= opts.tol * std::max(1.0, std::abs(next)))
            return next;
        prev = next;
    }
    throw std::runtime_error(std::string(what) + ": node doubling did not converge");
}

}  // namespace

std::vector<double> gamma_moments(const GammaParams& params, int K) {
    std::vector<double> m(K + 1, 1.0);
    for (int i = 1; i <= K; ++i) m[i] = m[i - 1] * params.scale * (params.shape + i - 1);
    return m;
}

double moment_recursion(const GammaParams& params, int t, const std::vector<int>& nvec) {
    if (t < 0 || nvec.empty()) throw std::invalid_argument("moment_recursion: bad input");
    if (!std::is_sorted(nvec.rbegin(), nvec.rend()))
        throw std::invalid_argument("moment_recursion: nvec must be weakly decreasing");
    if (t > 20) throw std::invalid_argument("moment_recursion: t > 20 overflows doubles");
    std::vector<double> m = gamma_moments(params, static_cast<int>(nvec.size()));
    std::map<MemoKey, double> memo;
    return recurse(m, t, nvec, memo);
}

double moment_contour(const GammaParams& params, int t, const std::vector<int>& nvec,
                      const ContourOptions& opts) {
    if (t < 0 || nvec.empty()) throw std::invalid_argument("moment_contour: bad input");
    const int k = static_cast<int>(nvec.size());
    if (k > 6) throw std::invalid_argument("moment_contour: more than 6 nested contours");
    const double theta = params.scale;
    const double m1 = params.shape * params.scale;

    auto eval = [&](int N) {
        std::vector<std::vector<cplx>> nodes(k), self(k);
        for (int j = 0; j < k; ++j) {
            // Innermost (j = k-1) radius theta/4; each outer circle 1.5*theta wider.
            double r = theta / 4.0 + 1.5 * theta * (k - 1 - j);
            nodes[j].resize(N);
            self[j].resize(N);
            for (int s = 0; s < N; ++s) {
                cplx z = std::polar(r, kTwoPi * s / N);
                nodes[j][s] = z;
                // dz/(2*pi*i*z) on a centered circle is just dphi/(2*pi).
                self[j][s] = ipow(z, 1 - nvec[j]) * ipow(m1 + z, t) / static_cast<double>(N);
            }
        }
        auto pair_fn = [theta](cplx za, cplx zb) {
            return (za - zb) / (za - zb - theta);
        };
        return nested_contour_sum(nodes, self, pair_fn, opts.imag_tol, "moment_contour");
    };
    return converged_contour(opts, eval, "moment_contour");
}

double q_moment_contour(const QParams& qp, int t, const std::vector<int>& nvec,
                        const ContourOptions& opts) {
    if (t < 0 || nvec.empty()) throw std::invalid_argument("q_moment_contour: bad input");
    const int k = static_cast<int>(nvec.size());
    if (k > 4) throw std::invalid_argument("q_moment_contour: more than 4 nested contours");
    const double q = qp.q, alpha = qp.alpha;

    /* Circles centered at 1.  Innermost radius (1-q)/2; moving outward each
       radius satisfies rho_j > (1-q) + q*rho_{j+1}, which makes circle j
       contain the q-shrunk copy of circle j+1 while still excluding 0. */
    std::vector<double> rho(k);
    rho[k - 1] = 0.5 * (1.0 - q);
    for (int j = k - 2; j >= 0; --j) rho[j] = 1.1 * (1.0 - q) + q * rho[j + 1];
    if (rho[0] >= 1.0)
        throw std::runtime_error("q_moment_contour: contour construction failed");

    double pref = (k % 2 == 0 ? 1.0 : -1.0) * std::pow(q, 0.5 * k * (k - 1));

    auto eval = [&](int N) {
        std::vector<std::vector<cplx>> nodes(k), self(k);
        for (int j = 0; j < k; ++j) {
            nodes[j].resize(N);
            self[j].resize(N);
            for (int s = 0; s < N; ++s) {
                cplx offset = std::polar(rho[j], kTwoPi * s / N);
                cplx z = 1.0 + offset;
                nodes[j][s] = z;
                // dz/(2*pi*i*z) with z = 1 + rho e^{i phi}: weight offset/(N z).
                self[j][s] = offset / (static_cast<double>(N) * z) *
                             ipow(1.0 - z, -nvec[j]) * ipow(1.0 - alpha * z, t);
            }
        }
        auto pair_fn = [q](cplx za, cplx zb) { return (za - zb) / (za - q * zb); };
        return pref *
               nested_contour_sum(nodes, self, pair_fn, opts.imag_tol, "q_moment_contour");
    };
    return converged_contour(opts, eval, "q_moment_contour");
}

double boundary_residual(const GammaParams& params, int t, const std::vector<int>& nvec,
                         int i, const ContourOptions& opts) {
    if (i < 0 || i + 1 >= static_cast<int>(nvec.size()))
        throw std::invalid_argument("boundary_residual: index out of range");
    if (nvec[i] != nvec[i + 1])
        throw std::invalid_argument("boundary_residual: needs a doubled index");
    std::vector<double> m = gamma_moments(params, 2);
    double u0 = moment_contour(params, t, nvec, opts);
    std::vector<int> ni = nvec, nip = nvec;
    ni[i] -= 1;
    nip[i + 1] -= 1;
    double ui = moment_contour(params, t, ni, opts);
    double uip = moment_contour(params, t, nip, opts);
    double r = (m[1] * m[1] - m[2]) * u0 + m[1] * (ui - uip);
    double scale = std::max({std::abs((m[1] * m[1] - m[2]) * u0), std::abs(m[1] * ui),
                             std::abs(m[1] * uip), 1e-300});
    return r / scale;
}

}  // namespace swp
