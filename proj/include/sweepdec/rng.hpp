#pragma once

#include <cstdint>

namespace sweepdec {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline uint64_t mix(uint64_t a, uint64_t b) { return splitmix64(a ^ splitmix64(b)); }

// Small deterministic generator (xoshiro256**). Each trial owns one stream seeded
// from (master seed, point id, trial index), so results are independent of thread
// scheduling and worker count.
class Rng {
  public:
    explicit Rng(uint64_t seed = 0) { reseed(seed); }

    void reseed(uint64_t seed) {
        uint64_t x = seed;
        for (auto& si : s_) si = x = splitmix64(x);
    }

    uint64_t next() {
        uint64_t result = rotl(s_[1] * 5, 7) * 9;
        uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in [0,1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    // uniform integer in [0, n)
    uint64_t below(uint64_t n) { return next() % n; }

  private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    uint64_t s_[4];
};

// Stateless per-(step, vertex) substream used for rule tie-breaks: the choice is a
// pure function of the trial seed, making sweeps reproducible under any evaluation
// order or parallel split.
inline uint64_t substream(uint64_t trial_seed, uint64_t step, uint64_t vertex) {
    return splitmix64(trial_seed ^ splitmix64(step * 0x9E3779B97F4A7C15ull + vertex));
}

}  // namespace sweepdec
