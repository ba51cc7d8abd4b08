#pragma once

#include <optional>
#include <vector>

#include "nullkit/linalg.hpp"
#include "nullkit/poly.hpp"

namespace nullkit {

// monomial helpers shared by the Groebner machinery and its tests
bool monomial_divides(const Monomial& a, const Monomial& b);  // a | b
Monomial monomial_lcm(const Monomial& a, const Monomial& b);
Monomial monomial_quotient(const Monomial& a, const Monomial& b);  // a / b, a divisible

struct GbConfig {
    /// Number of S-polynomial reductions allowed before giving up; keeps
    /// the desk-scale guarantee honest instead of hanging on bad inputs.
    std::uint64_t budget = 200000;
};

/// Reduced Groebner basis under grevlex: monic, auto-reduced, elements
/// sorted by ascending leading monomial.
struct GroebnerBasis {
    FieldCtxPtr ctx;
    int n = 0;
    std::vector<MultiPoly> basis;

    bool is_unit() const;  // 1 is in the ideal
};

/// Buchberger's algorithm with Gebauer-Moeller pair elimination and sugar
/// selection. Throws BudgetError("GB budget exhausted") past cfg.budget.
GroebnerBasis buchberger(const PolySystem& s, const GbConfig& cfg = {});

/// Full multivariate division remainder of f by the list gs.
MultiPoly normal_form(const MultiPoly& f, const std::vector<MultiPoly>& gs);

/// Krull dimension of the ideal from the staircase of leading monomials:
/// the largest variable subset supporting no leading monomial entirely.
/// -1 encodes the unit ideal (empty zeroset).
int ideal_dimension(const GroebnerBasis& gb);

bool ideal_contains(const GroebnerBasis& gb, const MultiPoly& f);

/// Exact (deterministic) radical membership through the same reduction the
/// randomized pipeline uses, decided entirely by Groebner bases; serves as
/// the ground-truth oracle in the test suites.
bool radical_member_exact(const MultiPoly& g, const PolySystem& s, const GbConfig& cfg = {});

/// Nonzero A with A(f_1, ..., f_m) = 0, witnessing algebraic dependence.
/// The weighted degree of A (variable y_i weighted by deg f_i) stays within
/// deg_bound = prod deg f_i.
struct Annihilator {
    MultiPoly a;  // in m variables y_1..y_m, input order
    std::uint64_t deg_bound = 0;
};

struct PerronConfig {
    std::size_t max_monomials = 100000;  // columns of the dependence system
};

/// Searches the weighted-degree-bounded coefficient space for a dependence
/// by exact linear algebra. nullopt certifies algebraic independence.
std::optional<Annihilator> perron_annihilator(const PolySystem& s, const PerronConfig& cfg = {});

/// Matroid rank of the system under algebraic independence, computed by
/// greedy extension with the annihilator test. Characteristic-free.
int perron_trdeg(const PolySystem& s, const PerronConfig& cfg = {});

struct JacobianResult {
    int rank = 0;
    /// True when char > d^min(m,n) (>= d^trdeg), the regime where the rank
    /// equals the transcendence degree; the caller decides otherwise.
    bool char_condition_ok = false;
};

/// Max rank of the Jacobian of formal partials over `points` random
/// points. Rank can only undershoot at special points, so the maximum over
/// a few draws is the right amplification.
JacobianResult jacobian_trdeg(const PolySystem& s, Rng& rng, int points = 5);

/// Decides dimension questions for explicit systems. The randomized
/// pipeline only needs "dimension exactly 0?" and "empty?"; keeping the
/// interface this small lets another zero-dimension tester drop in.
class DimensionOracle {
public:
    virtual ~DimensionOracle() = default;
    virtual bool zero_dimensional(const PolySystem& s) const = 0;
    virtual bool empty(const PolySystem& s) const = 0;
};

class GroebnerDimensionOracle final : public DimensionOracle {
public:
    explicit GroebnerDimensionOracle(GbConfig cfg = {}) : cfg_(cfg) {}
    bool zero_dimensional(const PolySystem& s) const override;
    bool empty(const PolySystem& s) const override;
    int dimension(const PolySystem& s) const;

private:
    GbConfig cfg_;
};

}  // namespace nullkit
