#include "nullkit/poly.hpp"

#include <algorithm>
#include <numeric>

namespace nullkit {

std::int64_t monomial_degree(const Monomial& m) {
    std::int64_t d = 0;
    for (auto e : m) d += e;
    return d;
}

bool GrevlexLess::operator()(const Monomial& a, const Monomial& b) const {
    std::int64_t da = monomial_degree(a), db = monomial_degree(b);
    if (da != db) return da < db;
    // equal degree: a < b iff the rightmost differing exponent of a is larger
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] > b[i];
    }
    return false;
}

// ---------------------------------------------------------------- MultiPoly

MultiPoly::MultiPoly(FieldCtxPtr ctx, int n) : ctx_(std::move(ctx)), n_(n) {
    if (!ctx_) throw Error("MultiPoly needs a field");
    if (n < 0) throw Error("negative variable count");
}

MultiPoly MultiPoly::constant(FieldCtxPtr ctx, int n, const FieldElement& c) {
    MultiPoly p(std::move(ctx), n);
    if (!c.is_zero()) p.terms_.emplace(Monomial(n, 0), c);
    return p;
}

MultiPoly MultiPoly::constant(FieldCtxPtr ctx, int n, std::int64_t c) {
    auto e = ctx->from_int(c);
    return constant(std::move(ctx), n, e);
}

MultiPoly MultiPoly::variable(FieldCtxPtr ctx, int n, int index) {
    if (index < 0 || index >= n) throw Error("variable index out of range");
    MultiPoly p(ctx, n);
    Monomial m(n, 0);
    m[index] = 1;
    p.terms_.emplace(std::move(m), ctx->one());
    return p;
}

bool MultiPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && monomial_degree(terms_.begin()->first) == 0);
}

std::int64_t MultiPoly::degree() const {
    if (terms_.empty()) return kZeroPolyDegree;
    return monomial_degree(terms_.rbegin()->first);  // grevlex max has max degree
}

FieldElement MultiPoly::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? ctx_->zero() : it->second;
}

void MultiPoly::add_term(const Monomial& m, const FieldElement& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

const std::pair<const Monomial, FieldElement>& MultiPoly::leading() const {
    if (terms_.empty()) throw Error("zero polynomial has no leading term");
    return *terms_.rbegin();
}

void MultiPoly::check_compatible(const MultiPoly& o) const {
    if (!ctx_ || !o.ctx_) throw Error("operation on uninitialized polynomial");
    if (n_ != o.n_) throw Error("polynomials have different variable counts");
    if (!ctx_->same_field(*o.ctx_)) throw Error("polynomials over different fields");
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    check_compatible(o);
    MultiPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
    check_compatible(o);
    MultiPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(ctx_, n_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    check_compatible(o);
    MultiPoly r(ctx_, n_);
    Monomial prod(n_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            for (int i = 0; i < n_; ++i) prod[i] = ma[i] + mb[i];
            r.add_term(prod, ca * cb);
        }
    }
    return r;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
    if (n_ != o.n_) return false;
    if (terms_.size() != o.terms_.size()) return false;
    auto it = terms_.begin();
    auto jt = o.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt) {
        if (it->first != jt->first || it->second != jt->second) return false;
    }
    return true;
}

MultiPoly MultiPoly::scaled(const FieldElement& c) const {
    MultiPoly r(ctx_, n_);
    if (c.is_zero()) return r;
    for (const auto& [m, cc] : terms_) r.terms_.emplace(m, cc * c);
    return r;
}

MultiPoly MultiPoly::times_term(const FieldElement& c, const Monomial& m) const {
    MultiPoly r(ctx_, n_);
    if (c.is_zero()) return r;
    Monomial shifted(n_);
    for (const auto& [mm, cc] : terms_) {
        for (int i = 0; i < n_; ++i) shifted[i] = mm[i] + m[i];
        r.terms_.emplace(shifted, cc * c);
    }
    return r;
}

MultiPoly MultiPoly::monic() const {
    if (is_zero()) return *this;
    return scaled(leading().second.inverse());
}

FieldElement MultiPoly::eval(std::span<const FieldElement> point) const {
    if (static_cast<int>(point.size()) != n_)
        throw Error("eval: point has arity " + std::to_string(point.size()) + ", polynomial has " +
                    std::to_string(n_));
    FieldElement acc = ctx_->zero();
    if (terms_.empty()) return acc;
    // per-variable power tables up to the max exponent present
    std::vector<std::uint32_t> maxe(n_, 0);
    for (const auto& [m, c] : terms_)
        for (int i = 0; i < n_; ++i) maxe[i] = std::max(maxe[i], m[i]);
    std::vector<std::vector<FieldElement>> pow(n_);
    for (int i = 0; i < n_; ++i) {
        pow[i].reserve(maxe[i] + 1);
        pow[i].push_back(ctx_->one());
        for (std::uint32_t e = 1; e <= maxe[i]; ++e) pow[i].push_back(pow[i].back() * point[i]);
    }
    for (const auto& [m, c] : terms_) {
        FieldElement t = c;
        for (int i = 0; i < n_; ++i)
            if (m[i]) t *= pow[i][m[i]];
        acc += t;
    }
    return acc;
}

std::vector<MultiPoly> MultiPoly::partials() const {
    std::vector<MultiPoly> out;
    out.reserve(n_);
    for (int i = 0; i < n_; ++i) {
        MultiPoly d(ctx_, n_);
        for (const auto& [m, c] : terms_) {
            if (m[i] == 0) continue;
            FieldElement nc = c * ctx_->from_residue(m[i]);
            if (nc.is_zero()) continue;  // exponent divisible by p
            Monomial nm = m;
            --nm[i];
            d.terms_.emplace(std::move(nm), nc);
        }
        out.push_back(std::move(d));
    }
    return out;
}

MultiPoly MultiPoly::lifted(const FieldCtxPtr& target) const {
    if (ctx_->same_field(*target)) {
        MultiPoly r = *this;
        return r;
    }
    if (ctx_->k() != 1 || ctx_->p() != target->p())
        throw Error("can only lift prime-field polynomials into an extension of the same field");
    MultiPoly r(target, n_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, target->from_residue(c.residue()));
    return r;
}

MultiPoly MultiPoly::padded(int new_n) const {
    if (new_n < n_) throw Error("padded: cannot drop variables");
    if (new_n == n_) return *this;
    MultiPoly r(ctx_, new_n);
    Monomial m(new_n, 0);
    for (const auto& [mm, c] : terms_) {
        std::copy(mm.begin(), mm.end(), m.begin());
        r.terms_.emplace(m, c);
    }
    return r;
}

std::string MultiPoly::str(char var_prefix) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!out.empty()) out += " + ";
        const auto& [m, c] = *it;
        bool has_vars = monomial_degree(m) > 0;
        std::string piece;
        if (!c.is_one() || !has_vars) piece = c.str();
        for (int i = 0; i < n_; ++i) {
            if (m[i] == 0) continue;
            if (!piece.empty()) piece += "*";
            piece += var_prefix + std::to_string(i + 1);
            if (m[i] > 1) piece += "^" + std::to_string(m[i]);
        }
        out += piece;
    }
    return out;
}

// --------------------------------------------------------------- PolySystem

PolySystem::PolySystem(std::vector<MultiPoly> ps) : polys(std::move(ps)) {
    if (polys.empty()) throw Error("polynomial system must be nonempty");
    ctx = polys.front().ctx();
    n = polys.front().n_vars();
    for (const auto& f : polys) {
        if (f.n_vars() != n) throw Error("system members have different variable counts");
        if (!f.ctx()->same_field(*ctx)) throw Error("system members over different fields");
    }
}

std::vector<std::int64_t> PolySystem::degs() const {
    std::vector<std::int64_t> d;
    d.reserve(polys.size());
    for (const auto& f : polys) d.push_back(std::max<std::int64_t>(f.degree(), 0));
    std::sort(d.rbegin(), d.rend());
    return d;
}

std::vector<std::size_t> PolySystem::degree_order() const {
    std::vector<std::size_t> idx(polys.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return polys[a].degree() > polys[b].degree(); });
    return idx;
}

unsigned __int128 PolySystem::degree_product() const {
    const unsigned __int128 cap = (unsigned __int128)1 << 127;
    unsigned __int128 prod = 1;
    for (const auto& f : polys) {
        unsigned __int128 d = static_cast<unsigned __int128>(std::max<std::int64_t>(f.degree(), 1));
        if (prod >= cap / (d ? d : 1)) return cap;
        prod *= d;
    }
    return prod;
}

std::int64_t PolySystem::max_degree() const {
    std::int64_t d = 0;
    for (const auto& f : polys) d = std::max(d, f.degree());
    return d;
}

PolySystem PolySystem::lifted(const FieldCtxPtr& target) const {
    std::vector<MultiPoly> ps;
    ps.reserve(polys.size());
    for (const auto& f : polys) ps.push_back(f.lifted(target));
    return PolySystem(std::move(ps));
}

// ------------------------------------------------------- AffineSubstitution

AffineSubstitution::AffineSubstitution(Matrix a, std::vector<FieldElement> b)
    : a_(std::move(a)), b_(std::move(b)) {
    if (b_.size() != a_.rows()) throw Error("affine substitution: shift length mismatch");
    if (a_.cols() > a_.rows()) throw Error("affine substitution: more columns than rows");
    if (matrix_rank(a_) != a_.cols())
        throw Error("affine substitution matrix lacks full column rank");
}

AffineSubstitution AffineSubstitution::identity(const FieldCtxPtr& ctx, int n) {
    return AffineSubstitution(Matrix::identity(ctx, n), std::vector<FieldElement>(n, ctx->zero()));
}

std::vector<FieldElement> AffineSubstitution::apply(std::span<const FieldElement> z) const {
    if (static_cast<int>(z.size()) != r()) throw Error("affine substitution: point arity mismatch");
    std::vector<FieldElement> x(b_);
    for (std::size_t i = 0; i < a_.rows(); ++i)
        for (std::size_t j = 0; j < a_.cols(); ++j) x[i] += a_.at(i, j) * z[j];
    return x;
}

AffineSubstitution AffineSubstitution::lifted(const FieldCtxPtr& target) const {
    const auto& c = ctx();
    if (c->same_field(*target)) return *this;
    if (c->k() != 1 || c->p() != target->p())
        throw Error("can only lift a prime-field substitution into an extension");
    Matrix a(target, a_.rows(), a_.cols());
    for (std::size_t i = 0; i < a_.rows(); ++i)
        for (std::size_t j = 0; j < a_.cols(); ++j)
            a.at(i, j) = target->from_residue(a_.at(i, j).residue());
    std::vector<FieldElement> b;
    b.reserve(b_.size());
    for (const auto& e : b_) b.push_back(target->from_residue(e.residue()));
    return AffineSubstitution(std::move(a), std::move(b));
}

// ------------------------------------------------------------- composition

MultiPoly compose(const MultiPoly& outer, const std::vector<MultiPoly>& inner) {
    int r = outer.n_vars();
    if (static_cast<int>(inner.size()) != r)
        throw Error("compose: outer arity " + std::to_string(r) + " vs " +
                    std::to_string(inner.size()) + " inner polynomials");
    if (inner.empty()) throw Error("compose: no inner polynomials");
    const auto& ctx = inner.front().ctx();
    int n = inner.front().n_vars();
    for (const auto& g : inner) {
        if (g.n_vars() != n || !g.ctx()->same_field(*ctx))
            throw Error("compose: inner polynomials incompatible");
    }
    if (!outer.ctx()->same_field(*ctx)) throw Error("compose: outer field differs from inner");

    // power tables for each inner polynomial up to its max exponent in outer
    std::vector<std::uint32_t> maxe(r, 0);
    for (const auto& [m, c] : outer.terms())
        for (int j = 0; j < r; ++j) maxe[j] = std::max(maxe[j], m[j]);
    std::vector<std::vector<MultiPoly>> pow(r);
    for (int j = 0; j < r; ++j) {
        pow[j].push_back(MultiPoly::constant(ctx, n, 1));
        for (std::uint32_t e = 1; e <= maxe[j]; ++e) pow[j].push_back(pow[j].back() * inner[j]);
    }
    MultiPoly acc(ctx, n);
    for (const auto& [m, c] : outer.terms()) {
        MultiPoly term = MultiPoly::constant(ctx, n, ctx->from_coeffs(c.coeffs()));
        for (int j = 0; j < r; ++j)
            if (m[j]) term = term * pow[j][m[j]];
        acc = acc + term;
    }
    return acc;
}

MultiPoly substitute_affine(const MultiPoly& f, const AffineSubstitution& s) {
    if (f.n_vars() != s.n())
        throw Error("substitute_affine: polynomial has " + std::to_string(f.n_vars()) +
                    " variables, substitution expects " + std::to_string(s.n()));
    if (!f.ctx()->same_field(*s.ctx())) throw Error("substitute_affine: field mismatch");
    int r = s.r();
    const auto& ctx = f.ctx();
    std::vector<MultiPoly> forms;
    forms.reserve(s.n());
    for (int i = 0; i < s.n(); ++i) {
        MultiPoly L = MultiPoly::constant(ctx, r, s.shift()[i]);
        Monomial m(r, 0);
        for (int j = 0; j < r; ++j) {
            const auto& a = s.matrix().at(i, j);
            if (a.is_zero()) continue;
            m[j] = 1;
            L.add_term(m, a);
            m[j] = 0;
        }
        forms.push_back(std::move(L));
    }
    return compose(f, forms);
}

// ------------------------------------------------------------ interpolation

namespace {

// Newton interpolation through (nodes[i], values[i]) -> dense monomial
// coefficients, length nodes.size().
void newton_univariate(const std::vector<FieldElement>& nodes, std::vector<FieldElement>& v) {
    const std::size_t m = nodes.size();
    // divided differences in place
    for (std::size_t j = 1; j < m; ++j) {
        for (std::size_t i = m; i-- > j;) {
            v[i] = (v[i] - v[i - 1]) / (nodes[i] - nodes[i - j]);
        }
    }
    // Horner expansion of the Newton form into monomial coefficients
    const auto& ctx = *nodes.front().ctx();
    std::vector<FieldElement> out(m, ctx.zero());
    out[0] = v[m - 1];
    std::size_t len = 1;
    for (std::size_t i = m - 1; i-- > 0;) {
        // out *= (x - nodes[i]); out += v[i]
        out[len] = out[len - 1];
        for (std::size_t t = len - 1; t-- > 0;) out[t + 1] = out[t] - nodes[i] * out[t + 1];
        out[0] = v[i] - nodes[i] * out[0];
        ++len;
    }
    v = std::move(out);
}

}  // namespace

MultiPoly interpolate_dense(const std::function<FieldElement(std::span<const FieldElement>)>& oracle,
                            const FieldCtxPtr& ctx, int r, std::int64_t d, Rng* rng, Exec exec) {
    if (r < 0 || d < 0) throw Error("interpolate_dense: negative arity or degree");
    if (r == 0) {
        MultiPoly p(ctx, 0);
        p.add_term(Monomial{}, oracle({}));
        return p;
    }
    if (ctx->order() <= static_cast<unsigned __int128>(d))
        throw NeedsLargerField("interpolation grid needs " + std::to_string(d + 1) +
                               " distinct nodes; extend " + ctx->describe());
    const std::size_t width = static_cast<std::size_t>(d) + 1;
    unsigned __int128 total128 = 1;
    for (int i = 0; i < r; ++i) {
        total128 *= width;
        if (total128 > (1u << 26))
            throw BudgetError("interpolation grid (d+1)^r exceeds the evaluation budget");
    }
    const std::size_t total = static_cast<std::size_t>(total128);

    std::vector<FieldElement> nodes;
    nodes.reserve(width);
    for (std::size_t i = 0; i < width; ++i) nodes.push_back(ctx->element_at(i));

    std::vector<FieldElement> data(total, ctx->zero());
    auto decode = [&](std::size_t flat, std::vector<FieldElement>& pt) {
        for (int a = 0; a < r; ++a) {
            pt[a] = nodes[flat % width];
            flat /= width;
        }
    };
    if (exec == Exec::parallel) {
#pragma omp parallel
        {
            std::vector<FieldElement> pt(r);
#pragma omp for schedule(static)
            for (long long s = 0; s < static_cast<long long>(total); ++s) {
                decode(static_cast<std::size_t>(s), pt);
                data[static_cast<std::size_t>(s)] = oracle(pt);
            }
        }
    } else {
        std::vector<FieldElement> pt(r);
        for (std::size_t s = 0; s < total; ++s) {
            decode(s, pt);
            data[s] = oracle(pt);
        }
    }

    // interpolate axis by axis; after axis a, index a holds monomial
    // exponents instead of node indices
    for (int a = 0; a < r; ++a) {
        std::size_t stride = 1;
        for (int t = 0; t < a; ++t) stride *= width;
        const long long lines = static_cast<long long>(total / width);
        auto process_line = [&](long long line) {
            // line index -> flat index of the line's first entry
            std::size_t lo = static_cast<std::size_t>(line) % stride;
            std::size_t hi = static_cast<std::size_t>(line) / stride;
            std::size_t base = hi * stride * width + lo;
            std::vector<FieldElement> v(width, ctx->zero());
            for (std::size_t j = 0; j < width; ++j) v[j] = data[base + j * stride];
            newton_univariate(nodes, v);
            for (std::size_t j = 0; j < width; ++j) data[base + j * stride] = v[j];
        };
        if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
            for (long long line = 0; line < lines; ++line) process_line(line);
        } else {
            for (long long line = 0; line < lines; ++line) process_line(line);
        }
    }

    MultiPoly out(ctx, r);
    Monomial m(r, 0);
    for (std::size_t s = 0; s < total; ++s) {
        if (data[s].is_zero()) continue;
        std::size_t flat = s;
        std::int64_t deg = 0;
        for (int a = 0; a < r; ++a) {
            m[a] = static_cast<std::uint32_t>(flat % width);
            deg += m[a];
            flat /= width;
        }
        if (deg > d)
            throw Error("degree bound violated: oracle exceeds stated total degree " +
                        std::to_string(d));
        out.add_term(m, data[s]);
    }

    // held-out probe: one extra random point guards against dishonest bounds
    Rng fallback(0x9d1cul);
    Rng& r_ = rng ? *rng : fallback;
    std::vector<FieldElement> probe(r);
    for (int i = 0; i < r; ++i) probe[i] = ctx->uniform(r_);
    if (out.eval(probe) != oracle(probe))
        throw Error("degree bound violated: oracle disagrees with its degree-" +
                    std::to_string(d) + " interpolant");
    return out;
}

}  // namespace nullkit
