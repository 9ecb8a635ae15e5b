#pragma once

#include <cstdint>
#include <string_view>

#include "hankelnet/gf.hpp"

// Deterministic stream-splitting RNG. Every consumer derives its own stream
// from (master, label, index), so adding dimensions, replicates or batches
// never perturbs the draws of existing ones.

namespace hankelnet {

struct RngSeed {
    std::uint64_t master = 0;

    /// Child stream for (label, index); pure function of the inputs.
    RngSeed child(std::string_view label, std::uint64_t index) const;
};

// splitmix64 stream over a derived state.
class Rng {
public:
    explicit Rng(RngSeed seed) : state_(seed.master) {}

    std::uint64_t next();

    /// Uniform on {0, ..., n-1} by the multiply-shift reduction.
    std::uint64_t below(std::uint64_t n);

    digit_t digit(PrimeBase b) { return static_cast<digit_t>(below(static_cast<std::uint64_t>(b.value()))); }

    /// Uniform double in [0, 1) with 53 random bits.
    double unit();

private:
    std::uint64_t state_;
};

}  // namespace hankelnet
