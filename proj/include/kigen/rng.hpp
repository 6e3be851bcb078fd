#pragma once

#include <cstdint>
#include <random>

#include "kigen/errors.hpp"

namespace kigen {

/// Deterministic random source. Wraps std::mt19937_64 (whose output sequence
/// is fixed by the standard) and does its own bounding, so identical seeds
/// produce identical draws on every platform and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform-ish draw in [0, bound). Modulo bias is irrelevant at the
    /// bounds used here; determinism is what matters.
    std::uint64_t below(std::uint64_t bound)
    {
        if (bound == 0) throw ParameterError("Rng::below: bound must be positive");
        return engine_() % bound;
    }

    /// Uniform draw in [lo, hi], inclusive.
    std::int64_t in_range(std::int64_t lo, std::int64_t hi)
    {
        if (lo > hi) throw ParameterError("Rng::in_range: empty range");
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(below(span));
    }

    bool coin() { return (engine_() & 1u) != 0; }

private:
    std::mt19937_64 engine_;
};

} // namespace kigen
