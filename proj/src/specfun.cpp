#include "swp/specfun.hpp"

#include <cmath>
#include <cstdint>
#include <limits>

namespace swp {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfLog2Pi = 0.91893853320467274178;  // log(2*pi)/2

/* Bernoulli numbers B_2 .. B_14. */
constexpr double kBernoulli[7] = {
    1.0 / 6.0,   -1.0 / 30.0, 1.0 / 42.0,  -1.0 / 30.0,
    5.0 / 66.0,  -691.0 / 2730.0, 7.0 / 6.0,
};

bool near_nonpositive_integer(std::complex<double> z) {
    if (z.imag() != 0.0) return false;
    double r = z.real();
    return r <= 0.0 && std::abs(r - std::round(r)) < 1e-300;
}

/* Stirling series, valid once Re z is large (callers shift to Re z >= 12). */
std::complex<double> log_gamma_stirling(std::complex<double> z) {
    std::complex<double> s =
        (z - 0.5) * std::log(z) - z + kHalfLog2Pi;
    std::complex<double> iz2 = 1.0 / (z * z);
    std::complex<double> zp = 1.0 / z;
    for (int n = 0; n < 7; ++n) {
        s += kBernoulli[n] / ((2 * n + 1) * (2 * n + 2)) * zp;
        zp *= iz2;
    }
    return s;
}

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
    if (near_nonpositive_integer(z))
        throw std::domain_error("log_gamma: pole at non-positive integer");
    /* Shift with the recurrence log Gamma(z) = log Gamma(z+m) - sum log(z+j);
       principal logs keep the branch consistent with log Gamma(z+1) =
       log Gamma(z) + log z. */
    std::complex<double> shift = 0.0;
    while (z.real() < 12.0) {
        shift += std::log(z);
        z += 1.0;
    }
    return log_gamma_stirling(z) - shift;
}

double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma: requires x > 0");
    double shift = 0.0;
    while (x < 12.0) {
        shift += std::log(x);
        x += 1.0;
    }
    return log_gamma_stirling(x).real() - shift;
}

double polygamma(int order, double x) {
    if (order < 0 || order > 3) throw std::domain_error("polygamma: order must be 0..3");
    if (!(x > 0.0)) throw std::domain_error("polygamma: requires x > 0");
    /* Psi^(m)(x) = Psi^(m)(x+1) - (-1)^m m! / x^{m+1}; shift to x >= 12. */
    static const double fact[4] = {1.0, 1.0, 2.0, 6.0};
    double sign = (order % 2 == 0) ? -1.0 : 1.0;  // -(-1)^m
    double acc = 0.0;
    while (x < 12.0) {
        acc += sign * fact[order] / std::pow(x, order + 1);
        x += 1.0;
    }
    double ix = 1.0 / x, ix2 = ix * ix;
    double s;
    switch (order) {
        case 0: {
            s = std::log(x) - 0.5 * ix;
            double p = ix2;
            for (int n = 0; n < 7; ++n) {
                s -= kBernoulli[n] / (2 * (n + 1)) * p;
                p *= ix2;
            }
            break;
        }
        case 1: {
            s = ix + 0.5 * ix2;
            double p = ix2 * ix;
            for (int n = 0; n < 7; ++n) {
                s += kBernoulli[n] * p;
                p *= ix2;
            }
            break;
        }
        case 2: {
            s = -ix2 - ix2 * ix;
            double p = ix2 * ix2;
            for (int n = 0; n < 7; ++n) {
                s -= kBernoulli[n] * (2 * n + 3) * p;
                p *= ix2;
            }
            break;
        }
        default: {  // order == 3
            s = 2.0 * ix2 * ix + 3.0 * ix2 * ix2;
            double p = ix2 * ix2 * ix;
            for (int n = 0; n < 7; ++n) {
                s += kBernoulli[n] * (2 * n + 3) * (2 * n + 4) * p;
                p *= ix2;
            }
            break;
        }
    }
    return s + acc;
}

namespace {

constexpr double kQProductTol = 1e-17;
constexpr int kQProductMaxFactors = 10000;

/* log of the remaining factors once the product loop is cut at a q^M = r:
   sum_{i>=M} log(1 - r q^i) = -sum_{k>=1} r^k q^0.. / (k (1-q^k)).  Converges
   fast because |r| is already far below 1 when the cap is hit. */
template <typename T>
T q_product_log_tail(T r, double q) {
    T tail = 0.0;
    T rk = r;
    double qk = q;
    for (int k = 1; k <= 200; ++k) {
        T term = rk / (k * (1.0 - qk));
        tail -= term;
        if (std::abs(term) < 1e-18) break;
        rk *= r;
        qk *= q;
    }
    return tail;
}

template <typename T>
T q_pochhammer_impl(T a, double q, unsigned m) {
    T prod = 1.0;
    T aq = a;
    for (unsigned i = 0; i < m; ++i) {
        prod *= 1.0 - aq;
        aq *= q;
    }
    return prod;
}

template <typename T>
T q_pochhammer_inf_impl(T a, double q) {
    if (!(q > 0.0 && q < 1.0))
        throw std::domain_error("q_pochhammer_inf: requires 0 < q < 1");
    T prod = 1.0;
    T aq = a;
    for (int i = 0; i < kQProductMaxFactors; ++i) {
        if (std::abs(aq) < kQProductTol) return prod;
        prod *= 1.0 - aq;
        aq *= q;
    }
    return prod * std::exp(q_product_log_tail(aq, q));
}

}  // namespace

double q_pochhammer(double a, double q, unsigned m) { return q_pochhammer_impl(a, q, m); }

std::complex<double> q_pochhammer(std::complex<double> a, double q, unsigned m) {
    return q_pochhammer_impl(a, q, m);
}

double q_pochhammer_inf(double a, double q) { return q_pochhammer_inf_impl(a, q); }

std::complex<double> q_pochhammer_inf(std::complex<double> a, double q) {
    return q_pochhammer_inf_impl(a, q);
}

double log_q_pochhammer(double a, double q, unsigned m) {
    double s = 0.0;
    double aq = a;
    for (unsigned i = 0; i < m; ++i) {
        if (aq >= 1.0) throw std::domain_error("log_q_pochhammer: factor not positive");
        s += std::log1p(-aq);
        aq *= q;
    }
    return s;
}

double log_q_pochhammer_inf(double a, double q) {
    if (!(q > 0.0 && q < 1.0))
        throw std::domain_error("log_q_pochhammer_inf: requires 0 < q < 1");
    double s = 0.0;
    double aq = a;
    for (int i = 0; i < kQProductMaxFactors; ++i) {
        if (std::abs(aq) < kQProductTol) return s;
        if (aq >= 1.0) throw std::domain_error("log_q_pochhammer_inf: factor not positive");
        s += std::log1p(-aq);
        aq *= q;
    }
    return s + q_product_log_tail(aq, q);
}

double q_gamma(double x, double q) {
    if (!(q > 0.0 && q < 1.0)) throw std::domain_error("q_gamma: requires 0 < q < 1");
    if (x <= 0.0 && std::abs(x - std::round(x)) < 1e-12)
        throw std::domain_error("q_gamma: pole at non-positive integer");
    double qx = std::exp(x * std::log(q));
    if (qx < 1.0) {
        /* Log-space evaluation; near q = 1 the infinite products underflow
           doubles (log (q;q)_inf ~ -pi^2 / (6(1-q))). */
        return std::exp(log_q_pochhammer_inf(q, q) - log_q_pochhammer_inf(qx, q) +
                        (1.0 - x) * std::log1p(-q));
    }
    return q_pochhammer_inf(q, q) / q_pochhammer_inf(qx, q) *
           std::exp((1.0 - x) * std::log1p(-q));
}

double q_number(double x, double q) {
    return -std::expm1(x * std::log(q)) / (1.0 - q);
}

double q_exponential(double x, double q) {
    if (!(q > 0.0 && q < 1.0)) throw std::domain_error("q_exponential: requires 0 < q < 1");
    double denom = q_pochhammer_inf((1.0 - q) * x, q);
    if (denom == 0.0) throw std::domain_error("q_exponential: pole");
    return 1.0 / denom;
}

std::complex<double> q_exponential(std::complex<double> x, double q) {
    if (!(q > 0.0 && q < 1.0)) throw std::domain_error("q_exponential: requires 0 < q < 1");
    std::complex<double> denom = q_pochhammer_inf((1.0 - q) * x, q);
    if (denom == 0.0) throw std::domain_error("q_exponential: pole");
    return 1.0 / denom;
}

}  // namespace swp
