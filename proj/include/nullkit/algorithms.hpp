#pragma once

#include <string>
#include <vector>

#include "nullkit/blackbox.hpp"
#include "nullkit/exact.hpp"
#include "nullkit/geometry.hpp"

namespace nullkit {

/// Raised when certificate construction concludes there is nothing to
/// certify (nonempty zeroset) or ran out of reduction retries.
struct NoCertificate : Error {
    using Error::Error;
};

enum class HnAnswer { empty, nonempty };
enum class MembershipAnswer { member, not_member };

struct AlgoConfig {
    GbConfig gb;
    int subspace_retries = 8;
    int cert_retries = 8;
    int jacobian_points = 5;
    /// Trial-level parallelism; verdicts are identical either way (trials
    /// are independent streams merged by any/majority).
    Exec exec = Exec::parallel;
};

struct HnVerdict {
    HnAnswer answer;
    int trials;
    std::uint64_t seed;
    std::string confidence_note;
    FieldCtxPtr field_used;  // includes any extension the pipeline built
    int r_used;
};

struct MembershipVerdict {
    MembershipAnswer answer;
    int trials;
    std::uint64_t seed;
    std::string confidence_note;
    FieldCtxPtr field_used;
    int r_used;
};

struct TrdegVerdict {
    int trdeg;
    int trials;
    std::uint64_t seed;
    std::string confidence_note;
    FieldCtxPtr field_used;
};

/// Decides whether the system's zeroset (over the algebraic closure) is
/// empty, given r >= trdeg of the system (r < 0 computes it first). One
/// run: restrict to a random r-dimensional affine subspace, interpolate,
/// then look for a zero-dimensional section after 0..r more hyperplane
/// cuts. A nonempty finding is certificate-backed (the dimension oracle is
/// deterministic), so amplification answers nonempty iff any trial does.
HnVerdict hn_test(const BlackboxSystem& s, int r, std::uint64_t seed, int trials,
                  const AlgoConfig& cfg = {}, const DimensionOracle* oracle = nullptr);

/// g in rad(<f_1..f_m>)? Decided as hn_test(s + {1 - y*g}, r + 1).
MembershipVerdict radical_membership(const Blackbox& g, const BlackboxSystem& s, int r,
                                     std::uint64_t seed, int trials, const AlgoConfig& cfg = {},
                                     const DimensionOracle* oracle = nullptr);

/// Output-sensitive transcendence degree: for i = 1, 2, ... test whether a
/// random fibre cut down to i variables is zero-dimensional; the first i
/// that passes (majority over `trials`) is trdeg. Characteristic-free.
TrdegVerdict trdeg_compute(const BlackboxSystem& s, std::uint64_t seed, int trials,
                           const AlgoConfig& cfg = {}, const DimensionOracle* oracle = nullptr);

/// Witness for 1 = sum f_i h_i with deg(f_i h_i) <= bound.
struct Certificate {
    std::vector<MultiPoly> h;  // aligned with the input order
    std::uint64_t bound = 0;   // prod of the r+1 largest degrees
};

/// Builds a certificate for an empty system of transcendence degree r:
/// reduce to r+1 random combinations, solve the bounded-degree identity by
/// exact linear algebra, substitute the combinations back. Resamples the
/// combination matrix up to cfg.cert_retries times before concluding
/// NoCertificate.
Certificate nss_certificate(const PolySystem& s, int r, const SampleSet& S, Rng& rng,
                            const AlgoConfig& cfg = {});

/// Independent check of both certificate invariants by direct expansion.
bool verify_certificate(const PolySystem& s, const Certificate& cert);

/// Ideal membership with any number of generators rewrites to membership
/// in a 3-generator ideal over two extra variables:
///   g in <f_1..f_m>  iff  z1^m z2^m g in <z1^(m+1), z2^(m+1), sum f_i z1^i z2^(m-i)>.
std::pair<MultiPoly, PolySystem> three_generator_transform(const MultiPoly& g,
                                                           const PolySystem& s);

/// All monomials in n variables of total degree <= d, grevlex-ascending;
/// throws BudgetError past `cap`.
std::vector<Monomial> monomials_up_to(int n, std::int64_t d, std::size_t cap = 2000000);

}  // namespace nullkit
