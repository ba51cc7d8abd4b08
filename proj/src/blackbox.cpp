#include "nullkit/blackbox.hpp"

#include <algorithm>

namespace nullkit {

Blackbox Blackbox::from_poly(MultiPoly f) {
    auto shared = std::make_shared<const MultiPoly>(std::move(f));
    Blackbox b;
    b.ctx_ = shared->ctx();
    b.arity_ = shared->n_vars();
    b.degree_bound_ = std::max<std::int64_t>(shared->degree(), 0);
    b.prov_ = Provenance::explicit_poly;
    b.fn_ = [shared](std::span<const FieldElement> pt) { return shared->eval(pt); };
    b.lift_ = [shared](const FieldCtxPtr& target) {
        return Blackbox::from_poly(shared->lifted(target));
    };
    return b;
}

Blackbox Blackbox::from_fn(FieldCtxPtr ctx, int arity, std::int64_t degree_bound, EvalFn fn) {
    if (!ctx) throw Error("blackbox needs a field");
    if (arity < 0 || degree_bound < 0) throw Error("blackbox arity/degree must be nonnegative");
    Blackbox b;
    b.ctx_ = std::move(ctx);
    b.arity_ = arity;
    b.degree_bound_ = degree_bound;
    b.prov_ = Provenance::custom;
    b.fn_ = std::move(fn);
    return b;
}

FieldElement Blackbox::eval(std::span<const FieldElement> point) const {
    if (static_cast<int>(point.size()) != arity_)
        throw Error("blackbox expects arity " + std::to_string(arity_) + ", got " +
                    std::to_string(point.size()));
    return fn_(point);
}

Blackbox Blackbox::lifted(const FieldCtxPtr& target) const {
    if (ctx_->same_field(*target)) return *this;
    if (!lift_)
        throw Error("this blackbox wraps a caller-supplied procedure and cannot follow the "
                    "pipeline into a field extension");
    return lift_(target);
}

// ------------------------------------------------------------------ system

BlackboxSystem::BlackboxSystem(std::vector<Blackbox> bs, std::optional<int> tb)
    : boxes(std::move(bs)), trdeg_bound(tb) {
    if (boxes.empty()) throw Error("blackbox system must be nonempty");
    ctx = boxes.front().ctx();
    arity = boxes.front().arity();
    for (const auto& b : boxes) {
        if (b.arity() != arity) throw Error("blackbox system members have different arities");
        if (!b.ctx()->same_field(*ctx)) throw Error("blackbox system members over different fields");
    }
    if (trdeg_bound) {
        int cap = std::min<int>(static_cast<int>(boxes.size()), arity);
        if (*trdeg_bound < 0 || *trdeg_bound > cap)
            throw Error("transcendence degree bound " + std::to_string(*trdeg_bound) +
                        " outside [0, min(m, n)] = [0, " + std::to_string(cap) + "]");
    }
}

BlackboxSystem BlackboxSystem::from_polys(const PolySystem& s, std::optional<int> tb) {
    std::vector<Blackbox> bs;
    bs.reserve(s.size());
    for (const auto& f : s.polys) bs.push_back(Blackbox::from_poly(f));
    return BlackboxSystem(std::move(bs), tb);
}

unsigned __int128 BlackboxSystem::degree_product() const {
    const unsigned __int128 cap = (unsigned __int128)1 << 127;
    unsigned __int128 prod = 1;
    for (const auto& b : boxes) {
        unsigned __int128 d = static_cast<unsigned __int128>(std::max<std::int64_t>(b.degree_bound(), 1));
        if (prod >= cap / (d ? d : 1)) return cap;
        prod *= d;
    }
    return prod;
}

std::int64_t BlackboxSystem::max_degree_bound() const {
    std::int64_t d = 0;
    for (const auto& b : boxes) d = std::max(d, b.degree_bound());
    return d;
}

BlackboxSystem BlackboxSystem::lifted(const FieldCtxPtr& target) const {
    std::vector<Blackbox> bs;
    bs.reserve(boxes.size());
    for (const auto& b : boxes) bs.push_back(b.lifted(target));
    return BlackboxSystem(std::move(bs), trdeg_bound);
}

// ------------------------------------------------------------------ compose

BlackboxSystem bb_compose(const std::vector<MultiPoly>& outer, const std::vector<MultiPoly>& inner) {
    if (outer.empty() || inner.empty()) throw Error("compose: empty outer or inner list");
    int r = static_cast<int>(inner.size());
    int n = inner.front().n_vars();
    auto ctx = inner.front().ctx();
    for (const auto& h : inner)
        if (h.n_vars() != n || !h.ctx()->same_field(*ctx)) throw Error("compose: inner polynomials incompatible");

    std::int64_t inner_deg = 0;
    for (const auto& h : inner) inner_deg = std::max(inner_deg, std::max<std::int64_t>(h.degree(), 0));

    auto shared_inner = std::make_shared<const std::vector<MultiPoly>>(inner);
    std::vector<Blackbox> boxes;
    boxes.reserve(outer.size());
    for (const auto& q : outer) {
        if (q.n_vars() != r)
            throw Error("compose: outer polynomial has " + std::to_string(q.n_vars()) +
                        " variables, expected " + std::to_string(r));
        if (!q.ctx()->same_field(*ctx)) throw Error("compose: outer field differs from inner");
        auto shared_outer = std::make_shared<const MultiPoly>(q);
        Blackbox b;
        b.ctx_ = ctx;
        b.arity_ = n;
        b.degree_bound_ = std::max<std::int64_t>(q.degree(), 0) * std::max<std::int64_t>(inner_deg, 1);
        b.prov_ = Provenance::composed;
        b.fn_ = [shared_outer, shared_inner](std::span<const FieldElement> pt) {
            std::vector<FieldElement> mid;
            mid.reserve(shared_inner->size());
            for (const auto& h : *shared_inner) mid.push_back(h.eval(pt));
            return shared_outer->eval(mid);
        };
        b.lift_ = [shared_outer, shared_inner](const FieldCtxPtr& target) {
            std::vector<MultiPoly> in2;
            in2.reserve(shared_inner->size());
            for (const auto& h : *shared_inner) in2.push_back(h.lifted(target));
            auto sys = bb_compose({shared_outer->lifted(target)}, in2);
            return sys.boxes.front();
        };
        boxes.push_back(std::move(b));
    }
    return BlackboxSystem(std::move(boxes), std::min(r, n));
}

// ----------------------------------------------------------------- restrict

Blackbox restrict_box(const Blackbox& base, const AffineSubstitution& sub) {
    auto shared_base = std::make_shared<const Blackbox>(base);
    auto shared_sub = std::make_shared<const AffineSubstitution>(sub);
    Blackbox b;
    b.ctx_ = base.ctx();
    b.arity_ = sub.r();
    b.degree_bound_ = base.degree_bound();
    b.prov_ = Provenance::restricted;
    b.fn_ = [shared_base, shared_sub](std::span<const FieldElement> z) {
        return shared_base->eval(shared_sub->apply(z));
    };
    if (base.liftable()) {
        b.lift_ = [shared_base, shared_sub](const FieldCtxPtr& target) {
            return restrict_box(shared_base->lifted(target), shared_sub->lifted(target));
        };
    }
    return b;
}

BlackboxSystem bb_restrict(const BlackboxSystem& s, const AffineSubstitution& sub) {
    if (sub.n() != s.arity)
        throw Error("restriction substitution maps into " + std::to_string(sub.n()) +
                    " variables, system has " + std::to_string(s.arity));
    if (!sub.ctx()->same_field(*s.ctx)) throw Error("restriction over a different field");
    std::vector<Blackbox> boxes;
    boxes.reserve(s.size());
    for (const auto& b : s.boxes) boxes.push_back(restrict_box(b, sub));
    return BlackboxSystem(std::move(boxes), s.trdeg_bound ? std::optional<int>(std::min(*s.trdeg_bound, sub.r()))
                                                          : std::nullopt);
}

// ------------------------------------------------------------- rabinowitsch

Blackbox ignore_last_box(const Blackbox& base) {
    auto shared_base = std::make_shared<const Blackbox>(base);
    Blackbox b;
    b.ctx_ = base.ctx();
    b.arity_ = base.arity() + 1;
    b.degree_bound_ = base.degree_bound();
    b.prov_ = base.provenance();
    b.fn_ = [shared_base](std::span<const FieldElement> pt) {
        return shared_base->eval(pt.subspan(0, pt.size() - 1));
    };
    if (base.liftable()) {
        b.lift_ = [shared_base](const FieldCtxPtr& target) {
            return ignore_last_box(shared_base->lifted(target));
        };
    }
    return b;
}

Blackbox rabinowitsch_box(const Blackbox& g, int arity) {
    auto shared_g = std::make_shared<const Blackbox>(g);
    Blackbox b;
    b.ctx_ = g.ctx();
    b.arity_ = arity;
    b.degree_bound_ = g.degree_bound() + 1;
    b.prov_ = Provenance::rabinowitsch;
    b.fn_ = [shared_g](std::span<const FieldElement> pt) {
        const auto& ctx = *shared_g->ctx();
        FieldElement y = pt.back();
        return ctx.one() - y * shared_g->eval(pt.subspan(0, pt.size() - 1));
    };
    if (g.liftable()) {
        b.lift_ = [shared_g, arity](const FieldCtxPtr& target) {
            return rabinowitsch_box(shared_g->lifted(target), arity);
        };
    }
    return b;
}

BlackboxSystem bb_rabinowitsch(const Blackbox& g, const BlackboxSystem& s) {
    if (g.arity() != s.arity) throw Error("query and system arities differ");
    if (!g.ctx()->same_field(*s.ctx)) throw Error("query over a different field");
    std::vector<Blackbox> boxes;
    boxes.reserve(s.size() + 1);
    for (const auto& b : s.boxes) boxes.push_back(ignore_last_box(b));
    boxes.push_back(rabinowitsch_box(g, s.arity + 1));
    std::optional<int> tb;
    if (s.trdeg_bound) tb = std::min(*s.trdeg_bound + 1, std::min<int>(s.arity + 1, static_cast<int>(boxes.size())));
    return BlackboxSystem(std::move(boxes), tb);
}

MultiPoly interpolate_box(const Blackbox& b, Rng* rng, Exec exec) {
    auto fn = [&b](std::span<const FieldElement> pt) { return b.eval(pt); };
    return interpolate_dense(fn, b.ctx(), b.arity(), b.degree_bound(), rng, exec);
}

}  // namespace nullkit
