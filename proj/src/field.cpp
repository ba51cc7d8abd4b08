#include "nullkit/field.hpp"

#include <algorithm>
#include <sstream>

namespace nullkit {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(u128(a) * b % p); }

u64 addmod(u64 a, u64 b, u64 p) {
    u64 s = a + b;
    if (s >= p || s < a) s -= p;
    return s;
}

u64 submod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + (p - b); }

u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 p) {
    // extended Euclid; p prime, a != 0 mod p
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a % p);
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    if (r != 1) throw Error("invmod: not invertible");
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<u64>(t);
}

// ---- dense univariate polynomials over GF(p), little-endian coefficients ----

using UPoly = std::vector<u64>;

void utrim(UPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

UPoly umul(const UPoly& a, const UPoly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = addmod(r[i + j], mulmod(a[i], b[j], p), p);
    }
    utrim(r);
    return r;
}

// remainder of a modulo monic f
UPoly urem(UPoly a, const UPoly& f, u64 p) {
    std::size_t k = f.size() - 1;
    while (a.size() > k) {
        u64 c = a.back();
        std::size_t shift = a.size() - 1 - k;
        if (c != 0) {
            for (std::size_t j = 0; j < k; ++j)
                a[shift + j] = submod(a[shift + j], mulmod(c, f[j], p), p);
        }
        a.pop_back();
        utrim(a);
    }
    return a;
}

UPoly umulmod(const UPoly& a, const UPoly& b, const UPoly& f, u64 p) {
    return urem(umul(a, b, p), f, p);
}

UPoly upowmod(UPoly base, u64 e, const UPoly& f, u64 p) {
    UPoly r{1 % p};
    base = urem(std::move(base), f, p);
    while (e) {
        if (e & 1) r = umulmod(r, base, f, p);
        base = umulmod(base, base, f, p);
        e >>= 1;
    }
    return r;
}

UPoly ugcd(UPoly a, UPoly b, u64 p) {
    utrim(a);
    utrim(b);
    while (!b.empty()) {
        // make b monic, then reduce a by it
        u64 lcinv = invmod(b.back(), p);
        for (auto& c : b) c = mulmod(c, lcinv, p);
        a = urem(std::move(a), b, p);
        std::swap(a, b);
    }
    if (!a.empty()) {
        u64 lcinv = invmod(a.back(), p);
        for (auto& c : a) c = mulmod(c, lcinv, p);
    }
    return a;
}

// x^(p^reps) mod f via iterated Frobenius
UPoly frobenius_power(const UPoly& f, u64 p, unsigned reps) {
    UPoly g{0, 1};  // x
    g = urem(std::move(g), f, p);
    for (unsigned i = 0; i < reps; ++i) g = upowmod(std::move(g), p, f, p);
    return g;
}

std::vector<unsigned> prime_divisors(unsigned k) {
    std::vector<unsigned> out;
    for (unsigned q = 2; q * q <= k; ++q) {
        if (k % q == 0) {
            out.push_back(q);
            while (k % q == 0) k /= q;
        }
    }
    if (k > 1) out.push_back(k);
    return out;
}

// Rabin's irreducibility test for monic f of degree k >= 1 over GF(p).
bool rabin_irreducible(const UPoly& f, u64 p) {
    unsigned k = static_cast<unsigned>(f.size() - 1);
    if (k == 0) return false;
    if (k == 1) return true;
    // x^(p^k) == x mod f
    UPoly xq = frobenius_power(f, p, k);
    UPoly x{0, 1};
    x = urem(std::move(x), f, p);
    if (xq != x) return false;
    // gcd(x^(p^(k/q)) - x, f) == 1 for each prime q | k
    for (unsigned q : prime_divisors(k)) {
        UPoly h = frobenius_power(f, p, k / q);
        // h - x
        if (h.size() < 2) h.resize(2, 0);
        h[1] = submod(h[1], 1, p);
        utrim(h);
        UPoly g = ugcd(h, f, p);
        if (g.size() != 1) return false;
    }
    return true;
}

u128 pow_saturated(u64 p, unsigned k) {
    const u128 cap = u128(1) << 127;
    u128 r = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (r >= cap / p) return cap;
        r *= p;
    }
    return r;
}

std::string u128_str(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v) {
        s.push_back(static_cast<char>('0' + static_cast<unsigned>(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

}  // namespace

// ---------------------------------------------------------------- FieldCtx

FieldCtx::FieldCtx(u64 p, unsigned k, std::vector<u64> irr)
    : p_(p), k_(k), irr_(std::move(irr)), order_(pow_saturated(p, k)) {}

FieldCtxPtr FieldCtx::make_prime(u64 p) {
    if (!is_prime_u64(p)) throw Error("field modulus " + std::to_string(p) + " is not prime");
    return FieldCtxPtr(new FieldCtx(p, 1, {}));
}

FieldCtxPtr FieldCtx::make_extension(u64 p, std::vector<u64> irr) {
    if (!is_prime_u64(p)) throw Error("field modulus " + std::to_string(p) + " is not prime");
    for (auto& c : irr) c %= p;
    utrim(irr);
    if (irr.size() < 3) throw Error("extension polynomial must have degree >= 2");
    if (irr.back() != 1) throw Error("extension polynomial must be monic");
    if (!rabin_irreducible(irr, p)) throw Error("extension polynomial is not irreducible");
    unsigned k = static_cast<unsigned>(irr.size() - 1);
    return FieldCtxPtr(new FieldCtx(p, k, std::move(irr)));
}

bool FieldCtx::same_field(const FieldCtx& o) const {
    return this == &o || (p_ == o.p_ && k_ == o.k_ && irr_ == o.irr_);
}

void FieldCtx::check(const FieldElement& a, const FieldElement& b) const {
    if (a.ctx_ == b.ctx_ && a.ctx_ == this) return;
    if (!a.ctx_ || !b.ctx_) throw Error("arithmetic on default-constructed field element");
    if (!same_field(*a.ctx_) || !same_field(*b.ctx_))
        throw Error("field elements belong to different fields (" + describe() + " vs " +
                    a.ctx_->describe() + "/" + b.ctx_->describe() + ")");
}

FieldElement FieldCtx::zero() const { return from_residue(0); }
FieldElement FieldCtx::one() const { return from_residue(1); }

FieldElement FieldCtx::from_residue(u64 v) const {
    FieldElement e;
    e.ctx_ = this;
    v %= p_;
    if (k_ == 1) {
        e.a_ = v;
    } else {
        e.ext_.assign(k_, 0);
        e.ext_[0] = v;
    }
    return e;
}

FieldElement FieldCtx::from_int(std::int64_t v) const {
    std::int64_t m = v % static_cast<std::int64_t>(p_);
    if (m < 0) m += static_cast<std::int64_t>(p_);
    return from_residue(static_cast<u64>(m));
}

FieldElement FieldCtx::from_coeffs(std::vector<u64> c) const {
    if (c.size() != k_) throw Error("coefficient vector length must equal extension degree");
    FieldElement e;
    e.ctx_ = this;
    for (auto& x : c) x %= p_;
    if (k_ == 1) {
        e.a_ = c[0];
    } else {
        e.ext_ = std::move(c);
    }
    return e;
}

FieldElement FieldCtx::element_at(u64 index) const {
    if (order_ <= index) throw Error("element index exceeds field order");
    if (k_ == 1) return from_residue(index);
    std::vector<u64> c(k_, 0);
    for (unsigned j = 0; j < k_ && index; ++j) {
        c[j] = index % p_;
        index /= p_;
    }
    return from_coeffs(std::move(c));
}

FieldElement FieldCtx::uniform(Rng& rng) const {
    if (order_ > UINT64_MAX) {
        std::vector<u64> c(k_);
        for (auto& x : c) x = rng.below(p_);
        return from_coeffs(std::move(c));
    }
    return element_at(rng.below(static_cast<u64>(order_)));
}

FieldElement FieldCtx::add(const FieldElement& a, const FieldElement& b) const {
    check(a, b);
    FieldElement r;
    r.ctx_ = this;
    if (k_ == 1) {
        r.a_ = addmod(a.a_, b.a_, p_);
    } else {
        r.ext_.resize(k_);
        for (unsigned i = 0; i < k_; ++i) r.ext_[i] = addmod(a.ext_[i], b.ext_[i], p_);
    }
    return r;
}

FieldElement FieldCtx::sub(const FieldElement& a, const FieldElement& b) const {
    check(a, b);
    FieldElement r;
    r.ctx_ = this;
    if (k_ == 1) {
        r.a_ = submod(a.a_, b.a_, p_);
    } else {
        r.ext_.resize(k_);
        for (unsigned i = 0; i < k_; ++i) r.ext_[i] = submod(a.ext_[i], b.ext_[i], p_);
    }
    return r;
}

FieldElement FieldCtx::neg(const FieldElement& a) const { return sub(zero(), a); }

FieldElement FieldCtx::mul(const FieldElement& a, const FieldElement& b) const {
    check(a, b);
    FieldElement r;
    r.ctx_ = this;
    if (k_ == 1) {
        r.a_ = mulmod(a.a_, b.a_, p_);
    } else {
        UPoly prod = umul(a.ext_, b.ext_, p_);
        prod = urem(std::move(prod), irr_, p_);
        prod.resize(k_, 0);
        r.ext_ = std::move(prod);
    }
    return r;
}

FieldElement FieldCtx::inv(const FieldElement& a) const {
    if (a.is_zero()) throw Error("division by zero in " + describe());
    if (k_ == 1) {
        FieldElement r;
        r.ctx_ = this;
        r.a_ = invmod(a.a_, p_);
        return r;
    }
    // extended Euclid in GF(p)[t]: s*a + t*irr = gcd = 1
    UPoly r0 = irr_, r1 = a.ext_;
    utrim(r1);
    UPoly s0{}, s1{1};
    while (!r1.empty()) {
        // divide r0 by r1 (r1 not necessarily monic)
        u64 lcinv = invmod(r1.back(), p_);
        UPoly q;  // quotient, little-endian
        UPoly rem = r0;
        utrim(rem);
        if (rem.size() >= r1.size()) {
            q.assign(rem.size() - r1.size() + 1, 0);
            while (rem.size() >= r1.size() && !rem.empty()) {
                u64 c = mulmod(rem.back(), lcinv, p_);
                std::size_t shift = rem.size() - r1.size();
                q[shift] = c;
                for (std::size_t j = 0; j < r1.size(); ++j)
                    rem[shift + j] = submod(rem[shift + j], mulmod(c, r1[j], p_), p_);
                utrim(rem);
            }
        }
        utrim(q);
        // (r0, r1) = (r1, rem); (s0, s1) = (s1, s0 - q*s1)
        UPoly qs = umul(q, s1, p_);
        UPoly ns = s0;
        if (ns.size() < qs.size()) ns.resize(qs.size(), 0);
        for (std::size_t j = 0; j < qs.size(); ++j) ns[j] = submod(ns[j], qs[j], p_);
        utrim(ns);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(ns);
    }
    if (r0.size() != 1) throw Error("inverse failed: modulus not irreducible?");
    u64 scale = invmod(r0[0], p_);
    for (auto& c : s0) c = mulmod(c, scale, p_);
    s0.resize(k_, 0);
    FieldElement out;
    out.ctx_ = this;
    out.ext_ = std::move(s0);
    return out;
}

FieldElement FieldCtx::div(const FieldElement& a, const FieldElement& b) const {
    return mul(a, inv(b));
}

FieldElement FieldCtx::pow(const FieldElement& a, u64 e) const {
    FieldElement r = one();
    FieldElement base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

std::string FieldCtx::describe() const {
    if (k_ == 1) return "GF(" + std::to_string(p_) + ")";
    return "GF(" + std::to_string(p_) + "^" + std::to_string(k_) + ")";
}

// ------------------------------------------------------------ FieldElement

bool FieldElement::is_zero() const {
    if (!ctx_) throw Error("use of default-constructed field element");
    if (ctx_->k() == 1) return a_ == 0;
    return std::all_of(ext_.begin(), ext_.end(), [](u64 c) { return c == 0; });
}

bool FieldElement::is_one() const {
    if (!ctx_) throw Error("use of default-constructed field element");
    if (ctx_->k() == 1) return a_ == 1;
    if (ext_[0] != 1) return false;
    return std::all_of(ext_.begin() + 1, ext_.end(), [](u64 c) { return c == 0; });
}

std::vector<u64> FieldElement::coeffs() const {
    if (!ctx_) throw Error("use of default-constructed field element");
    if (ctx_->k() == 1) return {a_};
    return ext_;
}

u64 FieldElement::residue() const {
    if (!ctx_ || ctx_->k() != 1) throw Error("residue() requires a prime-field element");
    return a_;
}

FieldElement FieldElement::operator+(const FieldElement& o) const { return ctx_->add(*this, o); }
FieldElement FieldElement::operator-(const FieldElement& o) const { return ctx_->sub(*this, o); }
FieldElement FieldElement::operator*(const FieldElement& o) const { return ctx_->mul(*this, o); }
FieldElement FieldElement::operator/(const FieldElement& o) const { return ctx_->div(*this, o); }
FieldElement FieldElement::operator-() const { return ctx_->neg(*this); }
FieldElement& FieldElement::operator+=(const FieldElement& o) { return *this = ctx_->add(*this, o); }
FieldElement& FieldElement::operator-=(const FieldElement& o) { return *this = ctx_->sub(*this, o); }
FieldElement& FieldElement::operator*=(const FieldElement& o) { return *this = ctx_->mul(*this, o); }

bool FieldElement::operator==(const FieldElement& o) const {
    if (!ctx_ || !o.ctx_) return ctx_ == o.ctx_;
    if (!ctx_->same_field(*o.ctx_)) return false;
    if (ctx_->k() == 1) return a_ == o.a_;
    return ext_ == o.ext_;
}

FieldElement FieldElement::inverse() const { return ctx_->inv(*this); }
FieldElement FieldElement::pow(u64 e) const { return ctx_->pow(*this, e); }
FieldElement FieldElement::frobenius() const { return ctx_->pow(*this, ctx_->p()); }

std::string FieldElement::str() const {
    if (!ctx_) return "<invalid>";
    if (ctx_->k() == 1) return std::to_string(a_);
    std::string s = "[";
    for (unsigned i = 0; i < ctx_->k(); ++i) {
        if (i) s += ",";
        s += std::to_string(ext_[i]);
    }
    return s + "]";
}

// ------------------------------------------------------------------ primes

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // these witnesses decide primality for all 64-bit inputs
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (unsigned i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

FieldCtxPtr make_field(u64 p, u128 min_order, u64 seed) {
    if (!is_prime_u64(p)) throw Error("field modulus " + std::to_string(p) + " is not prime");
    if (min_order < 2) min_order = 2;
    unsigned k = 1;
    u128 order = p;
    while (order < min_order) {
        if (k >= 120) throw Error("requested field order is out of range");
        order = pow_saturated(p, ++k);
    }
    if (k == 1) return FieldCtx::make_prime(p);
    Rng rng(seed ^ 0x6b8f1d3c2a5e4f07ULL);
    for (int attempt = 0; attempt < 4096; ++attempt) {
        UPoly cand(k + 1, 0);
        cand[k] = 1;
        for (unsigned j = 0; j < k; ++j) cand[j] = rng.below(p);
        if (cand[0] == 0) cand[0] = 1 + rng.below(p - 1);  // nonzero constant term
        if (rabin_irreducible(cand, p)) return FieldCtx::make_extension(p, std::move(cand));
    }
    throw Error("failed to find an irreducible polynomial (degree " + std::to_string(k) + ")");
}

// --------------------------------------------------------------- SampleSet

SampleSet::SampleSet(FieldCtxPtr c, u64 sz, bool excl) : ctx(std::move(c)), size(sz), excludes_zero(excl) {
    if (!ctx) throw Error("SampleSet needs a field");
    if (size == 0) throw Error("SampleSet must be nonempty");
    u128 avail = ctx->order() - (excludes_zero ? 1 : 0);
    if (u128(size) > avail)
        throw NeedsLargerField("sample set of size " + std::to_string(size) + " does not fit in " +
                               ctx->describe() + " (have " + u128_str(avail) +
                               " usable elements); extend the field");
}

FieldElement SampleSet::at(u64 i) const {
    if (i >= size) throw Error("sample index out of range");
    return ctx->element_at(excludes_zero ? i + 1 : i);
}

FieldElement SampleSet::draw(Rng& rng) const { return at(rng.below(size)); }

std::vector<FieldElement> SampleSet::sample(Rng& rng, std::size_t count) const {
    std::vector<FieldElement> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(draw(rng));
    return out;
}

SampleSet make_sample_set(const FieldCtxPtr& base, u64 size, bool excludes_zero, u64 seed) {
    u128 need = u128(size) + (excludes_zero ? 1 : 0);
    if (base->order() >= need) return SampleSet(base, size, excludes_zero);
    if (base->k() != 1)
        throw NeedsLargerField("cannot grow a sample set over an extension field " +
                               base->describe() + "; start from the prime field");
    FieldCtxPtr ext = make_field(base->p(), need, seed);
    return SampleSet(ext, size, excludes_zero);
}

}  // namespace nullkit
