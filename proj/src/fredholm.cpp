#include "swp/fredholm.hpp"

#include <boost/math/special_functions/airy.hpp>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "swp/specfun.hpp"

namespace swp {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

/* One Nystrom pass at fixed resolution.  Circle nodes are offset half a step
   so the set is closed under conjugation and avoids the real axis; the
   resulting determinant is real up to rounding. */
cd laplace_det_pass(const GammaParams& p, int t, int n, double u, double radius,
                    int nc, double h) {
    const double k = p.shape;
    const double log_u_theta = std::log(u) + (t - n + 1) * std::log(p.scale);

    std::vector<cd> v(nc), wv(nc), av(nc);
    for (int i = 0; i < nc; ++i) {
        const double phi = 2.0 * kPi * (i + 0.5) / nc;
        v[i] = radius * cd(std::cos(phi), std::sin(phi));
        wv[i] = v[i] / static_cast<double>(nc);  // dv / (2 pi i)
        av[i] = static_cast<double>(n) * log_gamma(v[i]) -
                static_cast<double>(t) * log_gamma(k + v[i]) - v[i] * log_u_theta;
    }

    /* Truncation height: the integrand decays at least like
       exp(Re b(1/2 + iy) - pi (y - radius)); grow T until that envelope is
       1e-18 below its value at y = 0. */
    auto re_b = [&](double y) {
        const cd z(0.5, y);
        const cd b = -static_cast<double>(n) * log_gamma(z) +
                     static_cast<double>(t) * log_gamma(k + z) + z * log_u_theta;
        return b.real();
    };
    const double ref = re_b(0.0);
    double T = 12.0;
    while (re_b(T) - kPi * (T - radius) > ref + std::log(1e-18)) {
        T += 4.0;
        if (T > 120.0) throw std::runtime_error("laplace_transform: integrand fails to decay");
    }

    const int mh = static_cast<int>(std::ceil(T / h));
    const int nm = 2 * mh + 1;
    std::vector<cd> z(nm), bz(nm);
    for (int m = 0; m < nm; ++m) {
        z[m] = cd(0.5, (m - mh) * h);
        bz[m] = -static_cast<double>(n) * log_gamma(z[m]) +
                static_cast<double>(t) * log_gamma(k + z[m]) + z[m] * log_u_theta;
    }

    Eigen::MatrixXcd P(nc, nm), Q(nm, nc);
    const double line_weight = h / (2.0 * kPi);  // dz / (2 pi i) with dz = i dy
    for (int i = 0; i < nc; ++i)
        for (int m = 0; m < nm; ++m)
            P(i, m) = line_weight * kPi / std::sin(kPi * (v[i] - z[m])) *
                      std::exp(av[i] + bz[m]);
    for (int m = 0; m < nm; ++m)
        for (int j = 0; j < nc; ++j) Q(m, j) = wv[j] / (z[m] - v[j]);

    Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(nc, nc) + P * Q;
    return Eigen::PartialPivLU<Eigen::MatrixXcd>(M).determinant();
}

}  // namespace

double laplace_transform(const GammaParams& params, int t, int n, double u,
                         const LaplaceOptions& opts) {
    if (n < 1 || t < 0) throw std::domain_error("laplace_transform: need t >= 0, n >= 1");
    if (u < 0.0) throw std::domain_error("laplace_transform: need u >= 0");
    if (u == 0.0) return 1.0;
    const double radius = std::min(0.25, params.shape / 2.0) * opts.radius_scale;
    if (!(radius > 0.0 && radius < 0.45))
        throw std::domain_error("laplace_transform: circle must stay left of the line");

    cd prev(0.0, 0.0);
    for (int pass = 0; pass <= opts.max_doublings; ++pass) {
        const int nc = opts.circle_nodes << pass;
        const double h = opts.line_step / std::pow(1.5, pass);
        const cd det = laplace_det_pass(params, t, n, u, radius, nc, h);
        if (std::abs(det.imag()) > 1e-8 * std::max(1.0, std::abs(det.real())))
            throw std::runtime_error("laplace_transform: nonreal determinant");
        if (pass > 0 && std::abs(det - prev) < opts.tol * std::max(1.0, std::abs(det)))
            return det.real();
        prev = det;
    }
    throw std::runtime_error("laplace_transform: node doubling did not converge");
}

double airy_kernel(double x, double y) {
    using boost::math::airy_ai;
    using boost::math::airy_ai_prime;
    if (x == y) {
        const double a = airy_ai(x);
        const double ap = airy_ai_prime(x);
        return ap * ap - x * a * a;
    }
    return (airy_ai(x) * airy_ai_prime(y) - airy_ai_prime(x) * airy_ai(y)) / (x - y);
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

double tracy_widom_gue(double s, int nodes) {
    using boost::math::airy_ai;
    using boost::math::airy_ai_prime;
    const double L = std::max(10.0, 13.0 - s);
    std::vector<double> x, w;
    gauss_legendre(nodes, x, w);

    std::vector<double> xi(nodes), sw(nodes), ai(nodes), aip(nodes);
    for (int i = 0; i < nodes; ++i) {
        xi[i] = s + L * (x[i] + 1.0) / 2.0;
        sw[i] = std::sqrt(w[i] * L / 2.0);
        ai[i] = airy_ai(xi[i]);
        aip[i] = airy_ai_prime(xi[i]);
    }
    Eigen::MatrixXd M = Eigen::MatrixXd::Identity(nodes, nodes);
    for (int a = 0; a < nodes; ++a) {
        M(a, a) -= w[a] * L / 2.0 * (aip[a] * aip[a] - xi[a] * ai[a] * ai[a]);
        for (int b = a + 1; b < nodes; ++b) {
            const double kv = (ai[a] * aip[b] - aip[a] * ai[b]) / (xi[a] - xi[b]);
            const double e = sw[a] * kv * sw[b];
            M(a, b) -= e;
            M(b, a) -= e;
        }
    }
    return Eigen::PartialPivLU<Eigen::MatrixXd>(M).determinant();
}

TracyWidomTable TracyWidomTable::build(double lo, double hi, double step, int nodes) {
    if (!(hi > lo) || !(step > 0.0)) throw std::domain_error("TracyWidomTable: bad grid");
    TracyWidomTable tab;
    tab.lo_ = lo;
    tab.step_ = step;
    const int count = static_cast<int>(std::round((hi - lo) / step)) + 1;
    tab.f_.resize(count);
    for (int i = 0; i < count; ++i) tab.f_[i] = tracy_widom_gue(lo + i * step, nodes);

    /* Fritsch-Butland slopes: harmonic mean of adjacent secants, zero at
       local extrema; keeps the interpolant monotone where the data are. */
    tab.slope_.assign(count, 0.0);
    std::vector<double> d(count - 1);
    for (int i = 0; i + 1 < count; ++i) d[i] = (tab.f_[i + 1] - tab.f_[i]) / step;
    tab.slope_.front() = d.front();
    tab.slope_.back() = d.back();
    for (int i = 1; i + 1 < count; ++i) {
        if (d[i - 1] * d[i] <= 0.0)
            tab.slope_[i] = 0.0;
        else
            tab.slope_[i] = 2.0 / (1.0 / d[i - 1] + 1.0 / d[i]);
    }
    return tab;
}

double TracyWidomTable::cdf(double s) const {
    const int count = static_cast<int>(f_.size());
    if (s <= lo_) return f_.front();
    const double hi = lo_ + step_ * (count - 1);
    if (s >= hi) return f_.back();
    int i = static_cast<int>((s - lo_) / step_);
    if (i > count - 2) i = count - 2;
    const double tt = (s - (lo_ + i * step_)) / step_;
    const double h00 = (1.0 + 2.0 * tt) * (1.0 - tt) * (1.0 - tt);
    const double h10 = tt * (1.0 - tt) * (1.0 - tt);
    const double h01 = tt * tt * (3.0 - 2.0 * tt);
    const double h11 = tt * tt * (tt - 1.0);
    return h00 * f_[i] + h10 * step_ * slope_[i] + h01 * f_[i + 1] + h11 * step_ * slope_[i + 1];
}

}  // namespace swp
