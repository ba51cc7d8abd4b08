#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "nullkit/common.hpp"

namespace nullkit {

class FieldCtx;
using FieldCtxPtr = std::shared_ptr<const FieldCtx>;

/// Element of GF(p^k), stored as the coefficient vector of the power basis
/// of the context's irreducible polynomial. For k == 1 the single residue
/// lives inline and no allocation happens on the arithmetic fast path.
///
/// Elements keep a raw pointer to their context; the FieldCtx must outlive
/// every element created from it (holding the FieldCtxPtr in the enclosing
/// polynomial/system object is the usual arrangement).
class FieldElement {
public:
    FieldElement() = default;

    const FieldCtx* ctx() const { return ctx_; }
    bool valid() const { return ctx_ != nullptr; }
    bool is_zero() const;
    bool is_one() const;

    /// Coefficient vector of length k (index j = coefficient of t^j).
    std::vector<std::uint64_t> coeffs() const;
    /// The residue for prime-field elements (requires k == 1).
    std::uint64_t residue() const;

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& o);
    FieldElement& operator-=(const FieldElement& o);
    FieldElement& operator*=(const FieldElement& o);
    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    FieldElement inverse() const;
    FieldElement pow(std::uint64_t e) const;
    /// a^p (one application of the Frobenius map).
    FieldElement frobenius() const;

    std::string str() const;

private:
    friend class FieldCtx;
    const FieldCtx* ctx_ = nullptr;
    std::uint64_t a_ = 0;             // value when k == 1
    std::vector<std::uint64_t> ext_;  // k coefficients when k > 1
};

/// Immutable description of GF(p^k): prime modulus, extension degree and
/// (for k > 1) the monic irreducible polynomial the power basis reduces by.
/// Construction verifies primality and irreducibility. Immutable after
/// construction and safe to share across threads.
class FieldCtx {
public:
    /// GF(p). Throws Error when p is not prime.
    static FieldCtxPtr make_prime(std::uint64_t p);
    /// GF(p^k) with an explicit monic irreducible polynomial, given as its
    /// k+1 coefficients (irr[j] multiplies t^j, irr[k] == 1). Verified.
    static FieldCtxPtr make_extension(std::uint64_t p, std::vector<std::uint64_t> irr);

    std::uint64_t p() const { return p_; }
    unsigned k() const { return k_; }
    const std::vector<std::uint64_t>& irr() const { return irr_; }

    /// p^k, saturated at 2^127 (far beyond anything enumerable anyway).
    unsigned __int128 order() const { return order_; }
    bool same_field(const FieldCtx& o) const;

    FieldElement zero() const;
    FieldElement one() const;
    /// Embedding of an integer residue (reduced mod p) into the field.
    FieldElement from_residue(std::uint64_t v) const;
    FieldElement from_int(std::int64_t v) const;
    /// Element with the given coefficient vector (entries reduced mod p).
    FieldElement from_coeffs(std::vector<std::uint64_t> c) const;

    /// Canonical enumeration: index e has coefficient of t^j equal to the
    /// j-th base-p digit of e. Indices 0..p-1 are the prime subfield in
    /// natural order, so interpolation nodes are 0, 1, 2, ... This is the
    /// fixed order SampleSet draws from.
    FieldElement element_at(std::uint64_t index) const;
    /// Uniform draw over the whole field.
    FieldElement uniform(Rng& rng) const;

    FieldElement add(const FieldElement& a, const FieldElement& b) const;
    FieldElement sub(const FieldElement& a, const FieldElement& b) const;
    FieldElement mul(const FieldElement& a, const FieldElement& b) const;
    FieldElement div(const FieldElement& a, const FieldElement& b) const;
    FieldElement neg(const FieldElement& a) const;
    FieldElement inv(const FieldElement& a) const;
    FieldElement pow(const FieldElement& a, std::uint64_t e) const;

    std::string describe() const;  // "GF(101)" or "GF(2^3)"

private:
    FieldCtx(std::uint64_t p, unsigned k, std::vector<std::uint64_t> irr);
    void check(const FieldElement& a, const FieldElement& b) const;

    std::uint64_t p_;
    unsigned k_;
    std::vector<std::uint64_t> irr_;  // empty when k == 1
    unsigned __int128 order_;
};

/// 64-bit deterministic Miller-Rabin.
bool is_prime_u64(std::uint64_t n);

/// Smallest-degree extension of GF(p) whose order reaches min_order; finds
/// the irreducible by random monic candidates + Rabin's test. Deterministic
/// given (p, min_order, seed).
FieldCtxPtr make_field(std::uint64_t p, unsigned __int128 min_order, std::uint64_t seed = 0);

/// A fixed-size prefix of the canonical field enumeration to draw uniform
/// coefficients from. `excludes_zero` skips index 0 so every drawn element
/// is nonzero.
struct SampleSet {
    SampleSet(FieldCtxPtr ctx, std::uint64_t size, bool excludes_zero);

    FieldElement at(std::uint64_t i) const;  // i < size
    FieldElement draw(Rng& rng) const;
    std::vector<FieldElement> sample(Rng& rng, std::size_t count) const;

    FieldCtxPtr ctx;
    std::uint64_t size;
    bool excludes_zero;
};

/// SampleSet of the given size over `base` or, when base is too small, over
/// a fresh extension of the same characteristic (base must then be a prime
/// field so its values embed trivially).
SampleSet make_sample_set(const FieldCtxPtr& base, std::uint64_t size, bool excludes_zero,
                          std::uint64_t seed = 0);

}  // namespace nullkit
