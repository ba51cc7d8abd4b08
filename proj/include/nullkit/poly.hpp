#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nullkit/common.hpp"
#include "nullkit/field.hpp"
#include "nullkit/linalg.hpp"

namespace nullkit {

/// Exponent vector; entry i is the exponent of variable i (0-based
/// internally, printed 1-based as x1..xn).
using Monomial = std::vector<std::uint32_t>;

std::int64_t monomial_degree(const Monomial& m);

/// Graded reverse lexicographic order (as a '<' for std::map; the leading
/// monomial of a polynomial is the map's last entry).
struct GrevlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Degree reported for the zero polynomial (its true degree is -infinity;
/// -1 never collides with a real total degree).
constexpr std::int64_t kZeroPolyDegree = -1;

/// Sparse multivariate polynomial over a fixed field, canonical form: no
/// zero coefficients are stored and all exponent vectors have length n.
class MultiPoly {
public:
    using TermMap = std::map<Monomial, FieldElement, GrevlexLess>;

    MultiPoly() = default;
    MultiPoly(FieldCtxPtr ctx, int n);

    static MultiPoly constant(FieldCtxPtr ctx, int n, const FieldElement& c);
    static MultiPoly constant(FieldCtxPtr ctx, int n, std::int64_t c);
    /// The variable x_{index} (0-based).
    static MultiPoly variable(FieldCtxPtr ctx, int n, int index);

    const FieldCtxPtr& ctx() const { return ctx_; }
    int n_vars() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    std::int64_t degree() const;  // kZeroPolyDegree when zero
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    FieldElement coeff(const Monomial& m) const;
    /// Adds c * x^m into the polynomial (and drops the term if it cancels).
    void add_term(const Monomial& m, const FieldElement& c);

    /// Leading (grevlex-greatest) term; throws on the zero polynomial.
    const std::pair<const Monomial, FieldElement>& leading() const;

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator-() const;
    bool operator==(const MultiPoly& o) const;
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    MultiPoly scaled(const FieldElement& c) const;
    /// this * (c * x^m).
    MultiPoly times_term(const FieldElement& c, const Monomial& m) const;
    MultiPoly monic() const;

    FieldElement eval(std::span<const FieldElement> point) const;

    /// Formal partial derivatives d/dx_0 .. d/dx_{n-1} (characteristic-p
    /// rule: the exponent multiplies into the coefficient mod p).
    std::vector<MultiPoly> partials() const;

    /// Same polynomial with coefficients embedded into an extension of the
    /// same prime field. Requires this->ctx to be a prime field.
    MultiPoly lifted(const FieldCtxPtr& target) const;

    /// Same polynomial viewed in a larger variable ring (new variables get
    /// exponent zero everywhere).
    MultiPoly padded(int new_n) const;

    /// Canonical text form, grevlex-descending terms, e.g. "3*x1^2*x2 + 5".
    std::string str(char var_prefix = 'x') const;

private:
    void check_compatible(const MultiPoly& o) const;
    FieldCtxPtr ctx_;
    int n_ = 0;
    TermMap terms_;
};

/// A finite list of polynomials sharing one field and variable count.
/// Input order is preserved; degree-sorted views are provided for the
/// algorithms that need the d_1 >= d_2 >= ... convention.
struct PolySystem {
    explicit PolySystem(std::vector<MultiPoly> ps);

    FieldCtxPtr ctx;
    int n = 0;
    std::vector<MultiPoly> polys;

    std::size_t size() const { return polys.size(); }
    /// Total degrees sorted nonincreasing (zero polynomials count as 0).
    std::vector<std::int64_t> degs() const;
    /// Stable permutation ordering polys by nonincreasing total degree.
    std::vector<std::size_t> degree_order() const;
    /// prod over all members of max(deg, 1), saturated.
    unsigned __int128 degree_product() const;
    std::int64_t max_degree() const;

    PolySystem lifted(const FieldCtxPtr& target) const;
};

/// x = A z + b with A of shape n x r and full column rank; encodes the
/// restriction of n-variate polynomials to an r-dimensional affine
/// subspace.
class AffineSubstitution {
public:
    AffineSubstitution(Matrix a, std::vector<FieldElement> b);
    static AffineSubstitution identity(const FieldCtxPtr& ctx, int n);

    int n() const { return static_cast<int>(a_.rows()); }
    int r() const { return static_cast<int>(a_.cols()); }
    const Matrix& matrix() const { return a_; }
    const std::vector<FieldElement>& shift() const { return b_; }
    const FieldCtxPtr& ctx() const { return a_.ctx(); }

    /// A z + b for a point z of length r.
    std::vector<FieldElement> apply(std::span<const FieldElement> z) const;

    AffineSubstitution lifted(const FieldCtxPtr& target) const;

private:
    Matrix a_;
    std::vector<FieldElement> b_;
};

/// f(A z + b) as an explicit r-variate polynomial; degree never grows.
MultiPoly substitute_affine(const MultiPoly& f, const AffineSubstitution& s);

/// outer(inner_1, ..., inner_r) expanded explicitly; outer has r variables,
/// each inner has n.
MultiPoly compose(const MultiPoly& outer, const std::vector<MultiPoly>& inner);

/// Recovers the unique r-variate polynomial of total degree <= d agreeing
/// with the oracle on the tensor grid of the first d+1 canonical field
/// elements per axis (nested univariate Newton interpolation, grid
/// evaluation being the data-parallel kernel). A held-out random
/// evaluation catches oracles that break the degree bound; `rng` drives it
/// (a fixed internal seed is used when omitted).
MultiPoly interpolate_dense(const std::function<FieldElement(std::span<const FieldElement>)>& oracle,
                            const FieldCtxPtr& ctx, int r, std::int64_t d, Rng* rng = nullptr,
                            Exec exec = Exec::parallel);

}  // namespace nullkit
