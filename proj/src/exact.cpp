#include "nullkit/exact.hpp"

#include <algorithm>
#include <map>

namespace nullkit {

bool monomial_divides(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Monomial monomial_lcm(const Monomial& a, const Monomial& b) {
    Monomial m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) m[i] = std::max(a[i], b[i]);
    return m;
}

Monomial monomial_quotient(const Monomial& a, const Monomial& b) {
    Monomial m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) m[i] = a[i] - b[i];
    return m;
}

namespace {

bool monomials_coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] && b[i]) return false;
    return true;
}

}  // namespace

MultiPoly normal_form(const MultiPoly& f, const std::vector<MultiPoly>& gs) {
    MultiPoly h = f;
    MultiPoly rem(f.ctx(), f.n_vars());
    const auto& ctx = *f.ctx();
    while (!h.is_zero()) {
        const auto& [lm, lc] = h.leading();
        bool reduced = false;
        for (const auto& g : gs) {
            if (g.is_zero()) continue;
            const auto& [gm, gc] = g.leading();
            if (!monomial_divides(gm, lm)) continue;
            FieldElement factor = ctx.div(lc, gc);
            h = h - g.times_term(factor, monomial_quotient(lm, gm));
            reduced = true;
            break;
        }
        if (!reduced) {
            rem.add_term(lm, lc);
            h.add_term(lm, ctx.neg(lc));
        }
    }
    return rem;
}

namespace {

struct Pair {
    std::size_t i, j;
    Monomial lcm;
    std::int64_t sugar;
    std::int64_t lcm_deg;
};

// Gebauer-Moeller update: fold generator t into the pair list.
void gm_update(std::vector<Pair>& pairs, const std::vector<MultiPoly>& g,
               const std::vector<std::int64_t>& sugars, std::size_t t) {
    const Monomial& tau = g[t].leading().first;

    // B criterion: drop old pairs whose lcm is strictly refined by tau
    std::erase_if(pairs, [&](const Pair& pr) {
        if (!monomial_divides(tau, pr.lcm)) return false;
        if (monomial_lcm(g[pr.i].leading().first, tau) == pr.lcm) return false;
        if (monomial_lcm(g[pr.j].leading().first, tau) == pr.lcm) return false;
        return true;
    });

    // candidate pairs (i, t)
    struct Cand {
        std::size_t i;
        Monomial lcm;
        bool coprime;
        bool keep = true;
    };
    std::vector<Cand> cands;
    cands.reserve(t);
    for (std::size_t i = 0; i < t; ++i) {
        if (g[i].is_zero()) continue;
        const Monomial& mi = g[i].leading().first;
        cands.push_back({i, monomial_lcm(mi, tau), monomials_coprime(mi, tau)});
    }
    // M criterion: drop candidates whose lcm is strictly divisible by another's
    for (auto& a : cands) {
        for (const auto& b : cands) {
            if (&a == &b || !b.keep) continue;
            if (b.lcm != a.lcm && monomial_divides(b.lcm, a.lcm)) {
                a.keep = false;
                break;
            }
        }
    }
    // F criterion: among equal lcms keep a single representative, unless the
    // class contains a coprime pair (then the whole class dies)
    for (std::size_t x = 0; x < cands.size(); ++x) {
        if (!cands[x].keep) continue;
        bool class_coprime = cands[x].coprime;
        for (std::size_t y = x + 1; y < cands.size(); ++y) {
            if (!cands[y].keep || cands[y].lcm != cands[x].lcm) continue;
            class_coprime = class_coprime || cands[y].coprime;
            cands[y].keep = false;
        }
        if (class_coprime) cands[x].keep = false;  // Buchberger's first criterion
    }
    for (auto& c : cands) {
        if (!c.keep) continue;
        std::int64_t deg = monomial_degree(c.lcm);
        const Monomial& mi = g[c.i].leading().first;
        std::int64_t sugar = std::max(sugars[c.i] + deg - monomial_degree(mi),
                                      sugars[t] + deg - monomial_degree(tau));
        pairs.push_back({c.i, t, std::move(c.lcm), sugar, deg});
    }
}

}  // namespace

GroebnerBasis buchberger(const PolySystem& s, const GbConfig& cfg) {
    const auto& ctx = s.ctx;
    const int n = s.n;
    GroebnerBasis out{ctx, n, {}};

    std::vector<MultiPoly> g;
    for (const auto& f : s.polys) {
        if (f.is_zero()) continue;
        if (f.is_constant()) {  // unit ideal immediately
            out.basis = {MultiPoly::constant(ctx, n, 1)};
            return out;
        }
        g.push_back(f.monic());
    }
    if (g.empty()) return out;  // zero ideal

    std::vector<std::int64_t> sugars;
    for (const auto& f : g) sugars.push_back(f.degree());

    std::vector<Pair> pairs;
    for (std::size_t t = 1; t < g.size(); ++t) gm_update(pairs, g, sugars, t);

    std::uint64_t steps = 0;
    GrevlexLess less;
    while (!pairs.empty()) {
        // sugar selection, deterministic tie-breaks
        std::size_t best = 0;
        for (std::size_t i = 1; i < pairs.size(); ++i) {
            const Pair& a = pairs[i];
            const Pair& b = pairs[best];
            bool better = false;
            if (a.sugar != b.sugar) {
                better = a.sugar < b.sugar;
            } else if (a.lcm_deg != b.lcm_deg) {
                better = a.lcm_deg < b.lcm_deg;
            } else if (a.lcm != b.lcm) {
                better = less(a.lcm, b.lcm);
            } else {
                better = std::tie(a.j, a.i) < std::tie(b.j, b.i);
            }
            if (better) best = i;
        }
        Pair pr = std::move(pairs[best]);
        pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(best));

        if (++steps > cfg.budget) throw BudgetError("GB budget exhausted");

        const MultiPoly& fi = g[pr.i];
        const MultiPoly& fj = g[pr.j];
        MultiPoly spoly =
            fi.times_term(ctx->one(), monomial_quotient(pr.lcm, fi.leading().first)) -
            fj.times_term(ctx->one(), monomial_quotient(pr.lcm, fj.leading().first));
        MultiPoly h = normal_form(spoly, g);
        if (h.is_zero()) continue;
        if (h.is_constant()) {
            out.basis = {MultiPoly::constant(ctx, n, 1)};
            return out;
        }
        g.push_back(h.monic());
        sugars.push_back(std::max(pr.sugar, h.degree()));
        gm_update(pairs, g, sugars, g.size() - 1);
    }

    // minimalize: drop elements whose leading monomial is divisible by
    // another survivor's
    std::vector<bool> keep(g.size(), true);
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = 0; j < g.size(); ++j) {
            if (i == j || !keep[j]) continue;
            if (monomial_divides(g[j].leading().first, g[i].leading().first) &&
                !(j > i && g[j].leading().first == g[i].leading().first)) {
                keep[i] = false;
                break;
            }
        }
    }
    std::vector<MultiPoly> minimal;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (keep[i]) minimal.push_back(g[i]);

    // tail-reduce each against the others for the unique reduced basis
    std::vector<MultiPoly> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<MultiPoly> others;
        others.reserve(minimal.size() - 1);
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        MultiPoly r = normal_form(minimal[i], others);
        if (!r.is_zero()) reduced.push_back(r.monic());
    }
    std::sort(reduced.begin(), reduced.end(), [&](const MultiPoly& a, const MultiPoly& b) {
        return less(a.leading().first, b.leading().first);
    });
    out.basis = std::move(reduced);
    return out;
}

bool GroebnerBasis::is_unit() const {
    return basis.size() == 1 && basis.front().is_constant() && !basis.front().is_zero();
}

int ideal_dimension(const GroebnerBasis& gb) {
    if (gb.is_unit()) return -1;
    const int n = gb.n;
    if (gb.basis.empty()) return n;
    if (n > 24) throw Error("ideal_dimension: variable count beyond the subset enumeration");
    std::vector<std::uint32_t> supports;
    supports.reserve(gb.basis.size());
    for (const auto& f : gb.basis) {
        const auto& lm = f.leading().first;
        std::uint32_t mask = 0;
        for (int v = 0; v < n; ++v)
            if (lm[v]) mask |= (1u << v);
        if (mask == 0) return -1;  // constant leading term
        supports.push_back(mask);
    }
    int best = -1;
    for (std::uint32_t t = 0; t < (1u << n); ++t) {
        bool independent = true;
        for (std::uint32_t s : supports) {
            if ((s & ~t) == 0) {  // leading monomial lives entirely inside t
                independent = false;
                break;
            }
        }
        if (independent) best = std::max(best, __builtin_popcount(t));
    }
    return best;
}

bool ideal_contains(const GroebnerBasis& gb, const MultiPoly& f) {
    return normal_form(f, gb.basis).is_zero();
}

bool radical_member_exact(const MultiPoly& g, const PolySystem& s, const GbConfig& cfg) {
    const int n = s.n;
    std::vector<MultiPoly> gens;
    gens.reserve(s.size() + 1);
    for (const auto& f : s.polys) gens.push_back(f.padded(n + 1));
    // 1 - y*g with y the appended variable
    Monomial y(n + 1, 0);
    y[n] = 1;
    MultiPoly aug = MultiPoly::constant(s.ctx, n + 1, 1) - g.padded(n + 1).times_term(s.ctx->one(), y);
    gens.push_back(std::move(aug));
    return buchberger(PolySystem(std::move(gens)), cfg).is_unit();
}

// ------------------------------------------------------------------- Perron

std::optional<Annihilator> perron_annihilator(const PolySystem& s, const PerronConfig& cfg) {
    const auto& ctx = s.ctx;
    const int m = static_cast<int>(s.size());

    // constants are dependent outright: y_i - c_i annihilates
    for (int i = 0; i < m; ++i) {
        if (s.polys[i].is_constant()) {
            MultiPoly a(ctx, m);
            Monomial yi(m, 0);
            yi[i] = 1;
            a.add_term(yi, ctx->one());
            FieldElement c = s.polys[i].is_zero() ? ctx->zero() : s.polys[i].leading().second;
            a.add_term(Monomial(m, 0), -c);
            return Annihilator{std::move(a), 1};
        }
    }

    std::vector<std::int64_t> degs;
    degs.reserve(m);
    for (const auto& f : s.polys) degs.push_back(f.degree());
    unsigned __int128 bound128 = 1;
    for (auto d : degs) bound128 *= static_cast<unsigned __int128>(d);
    if (bound128 > (std::uint64_t(1) << 40))
        throw BudgetError("Perron degree bound overflows the dependence-system budget");
    const std::uint64_t bound = static_cast<std::uint64_t>(bound128);

    // admissible exponents: weighted degree sum e_i * d_i <= bound
    std::vector<Monomial> cols;
    Monomial cur(m, 0);
    auto enumerate = [&](auto&& self, int idx, std::uint64_t used) -> void {
        if (idx == m) {
            cols.push_back(cur);
            if (cols.size() > cfg.max_monomials)
                throw BudgetError("Perron dependence system exceeds the monomial budget");
            return;
        }
        std::uint64_t w = static_cast<std::uint64_t>(degs[idx]);
        for (std::uint32_t e = 0; used + w * e <= bound; ++e) {
            cur[idx] = e;
            self(self, idx + 1, used + w * e);
        }
        cur[idx] = 0;
    };
    enumerate(enumerate, 0, 0);
    std::sort(cols.begin(), cols.end(), GrevlexLess{});

    // expand each candidate product with per-factor power caches
    std::vector<std::uint32_t> maxe(m, 0);
    for (const auto& e : cols)
        for (int i = 0; i < m; ++i) maxe[i] = std::max(maxe[i], e[i]);
    std::vector<std::vector<MultiPoly>> pow(m);
    for (int i = 0; i < m; ++i) {
        pow[i].push_back(MultiPoly::constant(ctx, s.n, 1));
        for (std::uint32_t e = 1; e <= maxe[i]; ++e) pow[i].push_back(pow[i].back() * s.polys[i]);
    }

    std::map<Monomial, std::size_t, GrevlexLess> row_of;
    std::vector<std::vector<std::pair<std::size_t, FieldElement>>> col_entries(cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        MultiPoly prod = MultiPoly::constant(ctx, s.n, 1);
        for (int i = 0; i < m; ++i)
            if (cols[c][i]) prod = prod * pow[i][cols[c][i]];
        for (const auto& [mono, coef] : prod.terms()) {
            auto [it, _] = row_of.try_emplace(mono, row_of.size());
            col_entries[c].emplace_back(it->second, coef);
        }
    }

    Matrix mat(ctx, row_of.size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (const auto& [r, coef] : col_entries[c]) mat.at(r, c) = coef;

    auto kernel = kernel_basis(std::move(mat));
    if (kernel.empty()) return std::nullopt;

    MultiPoly a(ctx, m);
    for (std::size_t c = 0; c < cols.size(); ++c) a.add_term(cols[c], kernel.front()[c]);

    // exact re-check of the defining identity A(f_1,...,f_m) = 0
    if (!compose(a, s.polys).is_zero()) throw Error("internal: annihilator fails to compose to zero");
    return Annihilator{std::move(a), bound};
}

int perron_trdeg(const PolySystem& s, const PerronConfig& cfg) {
    std::vector<MultiPoly> indep;
    for (const auto& f : s.polys) {
        std::vector<MultiPoly> cand = indep;
        cand.push_back(f);
        if (!perron_annihilator(PolySystem(cand), cfg).has_value()) indep = std::move(cand);
    }
    return static_cast<int>(indep.size());
}

// ----------------------------------------------------------------- Jacobian

JacobianResult jacobian_trdeg(const PolySystem& s, Rng& rng, int points) {
    const auto& ctx = s.ctx;
    const int m = static_cast<int>(s.size()), n = s.n;
    std::vector<std::vector<MultiPoly>> jac;
    jac.reserve(m);
    for (const auto& f : s.polys) jac.push_back(f.partials());

    int rank = 0;
    for (int t = 0; t < points; ++t) {
        std::vector<FieldElement> pt;
        pt.reserve(n);
        for (int i = 0; i < n; ++i) pt.push_back(ctx->uniform(rng));
        Matrix mat(ctx, m, n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) mat.at(i, j) = jac[i][j].eval(pt);
        rank = std::max(rank, static_cast<int>(matrix_rank(std::move(mat))));
    }

    // validity regime: char > d^r with r the true transcendence degree.
    // r is unknown here (the rank may undershoot it), so certify with the
    // universal bound r <= min(m, n).
    unsigned __int128 dr = 1;
    bool ok = true;
    std::int64_t d = std::max<std::int64_t>(s.max_degree(), 1);
    for (int i = 0; i < std::min(m, n); ++i) {
        dr *= static_cast<unsigned __int128>(d);
        if (dr >= ctx->p()) {
            ok = false;
            break;
        }
    }
    if (ok) ok = ctx->p() > dr;
    return {rank, ok};
}

// ---------------------------------------------------------- dimension oracle

bool GroebnerDimensionOracle::zero_dimensional(const PolySystem& s) const {
    return dimension(s) == 0;
}

bool GroebnerDimensionOracle::empty(const PolySystem& s) const { return dimension(s) == -1; }

int GroebnerDimensionOracle::dimension(const PolySystem& s) const {
    return ideal_dimension(buchberger(s, cfg_));
}

}  // namespace nullkit
