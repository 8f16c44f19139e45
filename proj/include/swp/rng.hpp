#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

#include "swp/util.hpp"

namespace swp {

/* Shape/scale parameters of a gamma law (density x^{k-1} e^{-x/θ} / Γ(k)θ^k). */
struct GammaParams {
    double shape;  // k
    double scale;  // θ

    GammaParams(double k, double theta) : shape(k), scale(theta) {
        if (!(shape > 0.0) || !(scale > 0.0))
            throw std::domain_error("GammaParams: shape and scale must be positive");
    }
};

/* One random stream.  Streams are cheap; give every replica its own and the
   run is reproducible independent of thread scheduling. */
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    static Rng for_replica(std::uint64_t master_seed, std::uint64_t replica) {
        return Rng(stream_seed(master_seed, replica));
    }

    std::uint64_t next_u64() { return eng_(); }

    /* Uniform on (0,1); 53-bit mantissa, zero excluded so log() is safe. */
    double uniform() {
        for (;;) {
            double u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
            if (u > 0.0) return u;
        }
    }

    /* Standard normal by the polar (Marsaglia) method, one spare cached. */
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

    double exponential(double scale) { return -scale * std::log(uniform()); }

    /* Gamma(shape, 1) by the Marsaglia–Tsang squeeze method; shapes below 1
       are boosted to shape+1 and corrected by a uniform power. */
    double gamma(double shape) {
        if (!(shape > 0.0)) throw std::domain_error("gamma: shape must be positive");
        if (shape == 1.0) return -std::log(uniform());
        if (shape < 1.0)
            return gamma(shape + 1.0) * std::pow(uniform(), 1.0 / shape);
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / (3.0 * std::sqrt(d));
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            double u = uniform();
            double x2 = x * x;
            if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
            if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    double gamma(const GammaParams& p) { return p.scale * gamma(p.shape); }

    /* Returns V with 1/V ~ Gamma(shape, scale). */
    double inverse_gamma(double shape, double scale) {
        return 1.0 / (scale * gamma(shape));
    }

  private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace swp
