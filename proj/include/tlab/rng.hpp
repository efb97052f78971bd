#pragma once

#include <cstdint>
#include <vector>

namespace tlab {

/**
 * Deterministic pseudo-random stream (splitmix64).
 *
 * Every randomized routine in the project draws from this generator, so a
 * run is a pure function of the seed.  std::mt19937 plus the standard
 * distributions are avoided on purpose: distribution output is
 * implementation-defined and reports must be byte-identical everywhere.
 */
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, n), n > 0
    uint64_t below(uint64_t n) {
        uint64_t x, r;
        do {
            x = next();
            r = x % n;
        } while (x - r > uint64_t(0) - n);
        return r;
    }

    // uniform in [lo, hi] inclusive
    int64_t range(int64_t lo, int64_t hi) {
        return lo + int64_t(below(uint64_t(hi - lo + 1)));
    }

    bool coin() { return (next() & 1) != 0; }

    template <typename T>
    const T& pick(const std::vector<T>& v) {
        return v[below(v.size())];
    }

    // independent substream for trial i of a suite
    static Rng for_trial(uint64_t seed, uint64_t suite_tag, uint64_t trial) {
        Rng mix(seed ^ (suite_tag * 0x9e3779b97f4a7c15ULL));
        mix.next();
        Rng out(mix.next() ^ (trial * 0xda942042e4dd58b5ULL));
        out.next();
        return out;
    }

private:
    uint64_t state_;
};

}  // namespace tlab
