#ifndef SRG_RNG_HPP
#define SRG_RNG_HPP

#include <cstdint>
#include <random>

namespace srg {

/// Seeded random source for a single trial. Wraps std::mt19937_64 (whose
/// output sequence is fixed by the standard) and draws bounded integers by
/// rejection, so results do not depend on the standard library's
/// distribution implementations.
class rng_engine {
  public:
    explicit rng_engine(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        for (;;) {
            const std::uint64_t x = gen_();
            if (x < limit) return x % bound;
        }
    }

    /// Fair coin.
    bool flip() { return (gen_() >> 63) != 0; }

  private:
    std::mt19937_64 gen_;
};

} // namespace srg

#endif
