#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nullkit {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A configured step budget (Groebner steps, annihilator monomials, ...) ran out.
struct BudgetError : Error {
    using Error::Error;
};

/// The requested construction needs more field elements than the current
/// field has; the caller should rebuild over an extension and retry.
struct NeedsLargerField : Error {
    using Error::Error;
};

/// Selects the serial reference path or the OpenMP path of a kernel.
/// Both paths produce identical results (arithmetic is exact); the serial
/// one is kept as the reference the tests compare against.
enum class Exec { serial, parallel };

/// Deterministic 64-bit generator (splitmix64). All randomness in the
/// library flows through explicitly seeded instances of this; nothing
/// draws from global state, so runs are reproducible bit for bit.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform draw from [0, n) by rejection; n must be nonzero.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw Error("Rng::below: empty range");
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % n;
    }

    /// Independent child stream; fork(i) from equal states yields equal
    /// streams, so per-trial sub-seeds are reproducible and order-free.
    Rng fork(std::uint64_t stream) const {
        Rng mixer(state_ ^ (0xa0761d6478bd642fULL + stream));
        mixer.next();
        return Rng(mixer.next());
    }

    std::uint64_t state() const { return state_; }

private:
    std::uint64_t state_;
};

}  // namespace nullkit
