#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <thread>
#include <vector>

namespace swp {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/* log(e^a + e^b) with the convention that -inf encodes an exact zero. */
inline double log_sum_exp(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    if (a < b) std::swap(a, b);
    return a + std::log1p(std::exp(b - a));
}

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/* Derives one 64-bit stream seed per replica from the master seed.  The
   mapping depends only on (master, index), never on thread scheduling. */
inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master;
    (void)splitmix64(s);
    s ^= 0x6a09e667f3bcc909ULL + index * 0x9e3779b97f4a7c15ULL;
    return splitmix64(s);
}

/* Static block partition of [0, count) over `threads` workers.  Each call of
   fn(i) must touch only slot i of any shared output, which keeps results
   bit-identical no matter how the blocks are scheduled. */
inline void parallel_for(std::int64_t count, int threads,
                         const std::function<void(std::int64_t)>& fn) {
    if (threads <= 1 || count < 2) {
        for (std::int64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    int nt = std::min<std::int64_t>(threads, count);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (int w = 0; w < nt; ++w) {
        std::int64_t lo = count * w / nt, hi = count * (w + 1) / nt;
        pool.emplace_back([lo, hi, &fn] {
            for (std::int64_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace swp
