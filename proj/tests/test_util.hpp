#pragma once

// Shared generators for the randomized tests. Everything is driven by the
// caller's Rng so failures reproduce from the seed alone.

#include <vector>

#include "nullkit/field.hpp"
#include "nullkit/poly.hpp"

namespace nullkit::testutil {

inline Monomial random_monomial(int n, std::int64_t max_total_deg, Rng& rng) {
    Monomial m(n, 0);
    std::int64_t budget = rng.below(static_cast<std::uint64_t>(max_total_deg) + 1);
    for (std::int64_t i = 0; i < budget; ++i) {
        m[rng.below(n)] += 1;
    }
    return m;
}

/// Random sparse polynomial with total degree <= max_deg (possibly zero).
inline MultiPoly random_poly(const FieldCtxPtr& ctx, int n, std::int64_t max_deg,
                             std::size_t terms, Rng& rng) {
    MultiPoly p(ctx, n);
    for (std::size_t t = 0; t < terms; ++t) {
        p.add_term(random_monomial(n, max_deg, rng), ctx->uniform(rng));
    }
    return p;
}

/// Random polynomial guaranteed nonzero with degree exactly max_deg and a
/// monic leading term.
inline MultiPoly random_monic_poly(const FieldCtxPtr& ctx, int n, std::int64_t deg,
                                   std::size_t terms, Rng& rng) {
    MultiPoly p = random_poly(ctx, n, deg, terms, rng);
    Monomial top(n, 0);
    for (std::int64_t i = 0; i < deg; ++i) top[rng.below(n)] += 1;
    p.add_term(top, ctx->one() - p.coeff(top));  // force coefficient 1
    if (p.degree() != deg || !p.leading().second.is_one()) {
        // the random top monomial collided away; force the pure power
        Monomial axis(n, 0);
        axis[0] = static_cast<std::uint32_t>(deg);
        p.add_term(axis, ctx->one() - p.coeff(axis));
    }
    return p;
}

inline std::vector<FieldElement> random_point(const FieldCtxPtr& ctx, int n, Rng& rng) {
    std::vector<FieldElement> pt;
    pt.reserve(n);
    for (int i = 0; i < n; ++i) pt.push_back(ctx->uniform(rng));
    return pt;
}

}  // namespace nullkit::testutil
