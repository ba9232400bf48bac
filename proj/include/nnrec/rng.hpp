#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace nnrec {

// Deterministic random source. std::mt19937_64 output is pinned by the
// standard, and the uniform/gaussian transforms below avoid the
// implementation-defined std::*_distribution classes, so identical seeds
// give identical streams on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() {  // [0, 1)
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double gaussian() {  // Box-Muller with cached spare
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 <= 0.0) u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(6.283185307179586476925286766559 * u2);
        has_spare_ = true;
        return r * std::cos(6.283185307179586476925286766559 * u2);
    }

    std::uint64_t bits() { return eng_(); }

    int uniform_int(int n) {  // [0, n)
        return static_cast<int>(bits() % static_cast<std::uint64_t>(n));
    }

    // Uniform size-S subset of {0..N-1}, sorted (partial Fisher-Yates).
    std::vector<int> sample_support(int N, int S) {
        std::vector<int> pool(N);
        for (int i = 0; i < N; ++i) pool[i] = i;
        for (int i = 0; i < S; ++i) std::swap(pool[i], pool[i + uniform_int(N - i)]);
        std::vector<int> out(pool.begin(), pool.begin() + S);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// splitmix64 step; combines a master seed with a trial index so that
// per-trial streams are independent of scheduling order.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace nnrec
