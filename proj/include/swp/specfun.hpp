#pragma once

#include <complex>
#include <stdexcept>

namespace swp {

/* Parameters of the geometric jump law: p(j) built from q-Pochhammer symbols
   with jump parameter alpha, both strictly inside (0,1). */
struct QParams {
    double q;
    double alpha;

    QParams(double q_, double alpha_) : q(q_), alpha(alpha_) {
        if (!(q > 0.0 && q < 1.0)) throw std::domain_error("QParams: q must be in (0,1)");
        if (!(alpha > 0.0 && alpha < 1.0))
            throw std::domain_error("QParams: alpha must be in (0,1)");
    }
};

/* Principal-branch log Gamma.  Recurrence-shift to Re z >= 12, then the
   Stirling series with Bernoulli coefficients through B_14; relative error
   below ~1e-13 for |z| <= 100 away from the poles at 0, -1, -2, ... */
std::complex<double> log_gamma(std::complex<double> z);
double log_gamma(double x);  // x > 0

/* Psi^(order)(x) for order 0..3, x > 0: recurrence-shift to x >= 12 plus the
   Bernoulli asymptotic series. */
double polygamma(int order, double x);
inline double digamma(double x) { return polygamma(0, x); }

/* (a;q)_m = prod_{i<m} (1 - a q^i).  Infinite products truncate once
   |a| q^i < 1e-17 or after 10^4 factors, whichever comes first. */
double q_pochhammer(double a, double q, unsigned m);
std::complex<double> q_pochhammer(std::complex<double> a, double q, unsigned m);
double q_pochhammer_inf(double a, double q);
std::complex<double> q_pochhammer_inf(std::complex<double> a, double q);

/* log (a;q)_m for the all-factors-positive case (a q^i < 1, e.g. 0 < a < 1);
   domain error if any factor is not positive. */
double log_q_pochhammer(double a, double q, unsigned m);
double log_q_pochhammer_inf(double a, double q);

/* Gamma_q(x) = ((q;q)_inf / (q^x;q)_inf) (1-q)^{1-x}; poles at x = 0,-1,-2,... */
double q_gamma(double x, double q);

/* q-number [x]_q = (1-q^x)/(1-q); satisfies Gamma_q(x+1) = [x]_q Gamma_q(x). */
double q_number(double x, double q);

/* e_q(x) = 1 / ((1-q)x; q)_inf -> e^x as q -> 1. */
double q_exponential(double x, double q);
std::complex<double> q_exponential(std::complex<double> x, double q);

}  // namespace swp
