#pragma once

#include <vector>

#include "swp/rng.hpp"

namespace swp {

struct LaplaceOptions {
    int circle_nodes = 64;    // doubled on each refinement pass
    double line_step = 0.05;  // vertical-line trapezoid step, shrunk by 1.5x per pass
    double radius_scale = 1.0;
    double tol = 1e-9;
    int max_doublings = 3;
};

/* E[exp(-u Z(t,n))] as a Fredholm determinant det(I + K_u) on a small circle
   C0 around the origin of radius min(1/4, shape/2) * radius_scale:

     K_u(v,v') = (2 pi i)^{-1} Int_{1/2 - i inf}^{1/2 + i inf}
                   pi / sin(pi (v - z)) * exp(a(v) + b(z)) / (z - v') dz,
     a(w) =  n log Gamma(w) - t log Gamma(k+w) - w log(u theta^{t-n+1}),
     b(w) = -n log Gamma(w) + t log Gamma(k+w) + w log(u theta^{t-n+1}).

   The determinant is evaluated by Nystrom quadrature (trapezoid on both
   contours) with node doubling until two passes agree to opts.tol; throws
   std::runtime_error on no convergence or a nonreal result. */
double laplace_transform(const GammaParams& params, int t, int n, double u,
                         const LaplaceOptions& opts = {});

/* Airy two-point kernel (Ai(x)Ai'(y) - Ai'(x)Ai(y)) / (x - y), with the
   diagonal limit Ai'(x)^2 - x Ai(x)^2. */
double airy_kernel(double x, double y);

/* GUE Tracy-Widom CDF F(s) = det(I - K_Airy)_{L2(s, inf)}, truncated to
   (s, s + L) with L = max(10, 13 - s) and Gauss-Legendre quadrature. */
double tracy_widom_gue(double s, int nodes = 200);

/* Gauss-Legendre nodes and weights on (-1, 1). */
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/* CDF sampled on a uniform grid with monotone cubic (Fritsch-Butland)
   interpolation; clamps outside [lo, hi]. */
class TracyWidomTable {
  public:
    static TracyWidomTable build(double lo, double hi, double step, int nodes = 200);
    double cdf(double s) const;
    double lo() const { return lo_; }
    double hi() const { return lo_ + step_ * static_cast<double>(f_.size() - 1); }
    const std::vector<double>& values() const { return f_; }

  private:
    double lo_ = 0.0;
    double step_ = 1.0;
    std::vector<double> f_;
    std::vector<double> slope_;
};

}  // namespace swp
