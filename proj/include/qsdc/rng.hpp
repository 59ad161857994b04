// rng.hpp
// Seedable random source with a draw counter for replayable simulations.
#pragma once

#include <cstdint>
#include <random>

namespace qsdc {

// All randomness in a protocol run flows through one counting_rng, and every
// transcript event records how many draws were consumed up to that point.
// Raw engine output is mapped to values with the fixed formulas below rather
// than std::uniform_*_distribution, whose output is implementation-defined
// and would break byte-identical replay across standard libraries.
class counting_rng {
public:
    explicit counting_rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    // Uniform in [0, 1), from the top 53 bits of one engine step.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in {0, ..., n-1}. Plain modulo; n never exceeds a few hundred here.
    std::uint64_t uniform_int(std::uint64_t n) { return next() % n; }

    // Fair bit.
    int coin() { return static_cast<int>(uniform_int(2)); }

    // Raw engine steps consumed so far.
    std::uint64_t draws() const { return draws_; }

private:
    std::uint64_t next() {
        ++draws_;
        return engine_();
    }

    std::mt19937_64 engine_;
    std::uint64_t seed_;
    std::uint64_t draws_ = 0;
};

} // namespace qsdc
