#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "nullkit/poly.hpp"

namespace nullkit {

enum class Provenance { explicit_poly, restricted, rabinowitsch, composed, custom };

struct BlackboxSystem;

/// Evaluation oracle with arity and a caller-supplied degree bound. The
/// main pipeline never looks inside; the bound is trusted data (dishonest
/// bounds are caught probabilistically at interpolation time, not here).
///
/// The wrapped procedure must be a pure function of its point and safe to
/// call from several threads at once; every constructor in this module
/// produces such oracles, and custom ones must follow the same rule.
class Blackbox {
public:
    using EvalFn = std::function<FieldElement(std::span<const FieldElement>)>;

    static Blackbox from_poly(MultiPoly f);
    /// Library-only entry point for caller-supplied procedures; these
    /// cannot follow the pipeline into a field extension.
    static Blackbox from_fn(FieldCtxPtr ctx, int arity, std::int64_t degree_bound, EvalFn fn);

    FieldElement eval(std::span<const FieldElement> point) const;

    int arity() const { return arity_; }
    std::int64_t degree_bound() const { return degree_bound_; }
    Provenance provenance() const { return prov_; }
    const FieldCtxPtr& ctx() const { return ctx_; }

    bool liftable() const { return static_cast<bool>(lift_); }
    /// The same oracle over an extension of the same prime field.
    Blackbox lifted(const FieldCtxPtr& target) const;

private:
    friend Blackbox restrict_box(const Blackbox&, const AffineSubstitution&);
    friend Blackbox rabinowitsch_box(const Blackbox&, int);
    friend Blackbox ignore_last_box(const Blackbox&);
    friend BlackboxSystem bb_compose(const std::vector<MultiPoly>&, const std::vector<MultiPoly>&);

    FieldCtxPtr ctx_;
    int arity_ = 0;
    std::int64_t degree_bound_ = 0;
    Provenance prov_ = Provenance::custom;
    EvalFn fn_;
    std::function<Blackbox(const FieldCtxPtr&)> lift_;
};

/// Oracles sharing one field and arity, with an optional transcendence
/// degree bound carried along the pipeline.
struct BlackboxSystem {
    BlackboxSystem(std::vector<Blackbox> bs, std::optional<int> trdeg_bound = std::nullopt);

    static BlackboxSystem from_polys(const PolySystem& s,
                                     std::optional<int> trdeg_bound = std::nullopt);

    FieldCtxPtr ctx;
    int arity = 0;
    std::vector<Blackbox> boxes;
    std::optional<int> trdeg_bound;

    std::size_t size() const { return boxes.size(); }
    /// prod over boxes of max(degree_bound, 1), saturated.
    unsigned __int128 degree_product() const;
    std::int64_t max_degree_bound() const;
    BlackboxSystem lifted(const FieldCtxPtr& target) const;
};

/// System of oracles x -> outer_i(inner_1(x), ..., inner_r(x)); the
/// transcendence degree bound is the inner count r.
BlackboxSystem bb_compose(const std::vector<MultiPoly>& outer,
                          const std::vector<MultiPoly>& inner);

/// Restriction of every oracle to an affine subspace: z -> f(Az + b).
/// Degree bounds are unchanged.
BlackboxSystem bb_restrict(const BlackboxSystem& s, const AffineSubstitution& sub);

/// The radical-membership reduction: arity grows by one (the fresh
/// variable is appended last), the original oracles ignore it, and the
/// oracle (x, y) -> 1 - y*g(x) joins the system. The transcendence degree
/// bound grows by one.
BlackboxSystem bb_rabinowitsch(const Blackbox& g, const BlackboxSystem& s);

/// interpolate_dense against a box's own arity and degree bound.
MultiPoly interpolate_box(const Blackbox& b, Rng* rng = nullptr, Exec exec = Exec::parallel);

}  // namespace nullkit
