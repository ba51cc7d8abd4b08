#include "nullkit/geometry.hpp"

#include <algorithm>

namespace nullkit {

MultiPoly LinearForm::to_poly() const {
    MultiPoly p = MultiPoly::constant(ctx, n, constant);
    Monomial m(n, 0);
    for (int i = 0; i < n; ++i) {
        if (coeffs[i].is_zero()) continue;
        m[i] = 1;
        p.add_term(m, coeffs[i]);
        m[i] = 0;
    }
    return p;
}

FieldElement LinearForm::eval(std::span<const FieldElement> point) const {
    if (static_cast<int>(point.size()) != n) throw Error("linear form arity mismatch");
    FieldElement acc = constant;
    for (int i = 0; i < n; ++i)
        if (!coeffs[i].is_zero()) acc += coeffs[i] * point[i];
    return acc;
}

std::uint64_t required_sample_size(SamplePurpose purpose, int n, int m, int r,
                                   std::span<const std::int64_t> degs) {
    using u128 = unsigned __int128;
    const u128 cap = u128(1) << 127;
    auto clamped_product = [&]() {
        u128 prod = 1;
        for (auto d : degs) {
            u128 dd = static_cast<u128>(std::max<std::int64_t>(d, 1));
            if (prod >= cap / dd) return cap;
            prod *= dd;
        }
        return prod;
    };
    u128 out = 0;
    switch (purpose) {
        case SamplePurpose::hn_reduction:
            out = u128(6) * static_cast<u128>(std::max(n - r, 0)) * clamped_product();
            break;
        case SamplePurpose::trdeg_point:
            out = u128(18) * static_cast<u128>(std::max(n, 0)) * clamped_product();
            break;
        case SamplePurpose::generator_reduction: {
            std::int64_t d = 1;
            for (auto dd : degs) d = std::max(d, dd);
            u128 power = 1;
            u128 exponent = static_cast<u128>(r + 1) * static_cast<u128>(m);
            for (u128 i = 0; i < exponent; ++i) {
                if (power >= cap / static_cast<u128>(d)) {
                    power = cap;
                    break;
                }
                power *= static_cast<u128>(d);
            }
            out = (power >= cap / 6) ? cap : u128(6) * power;
            break;
        }
    }
    if (out > UINT64_MAX)
        throw Error("required sample size exceeds 2^64; instance is beyond desk scale");
    return static_cast<std::uint64_t>(out);
}

std::vector<LinearForm> sample_hyperplanes(int n, int count, const SampleSet& s, Rng& rng,
                                           const std::vector<int>& support) {
    std::vector<int> vars = support;
    if (vars.empty()) {
        vars.resize(n);
        for (int i = 0; i < n; ++i) vars[i] = i;
    }
    for (int v : vars)
        if (v < 0 || v >= n) throw Error("hyperplane support index out of range");
    std::vector<LinearForm> out;
    out.reserve(count);
    for (int c = 0; c < count; ++c) {
        LinearForm f;
        f.ctx = s.ctx;
        f.n = n;
        f.coeffs.assign(n, s.ctx->zero());
        for (int v : vars) f.coeffs[v] = s.draw(rng);
        f.constant = s.draw(rng);
        out.push_back(std::move(f));
    }
    return out;
}

AffineSubstitution subspace_substitution(const std::vector<LinearForm>& forms, int n, int r) {
    if (static_cast<int>(forms.size()) != n - r)
        throw Error("subspace_substitution expects n - r forms");
    if (forms.empty()) {
        throw Error("subspace_substitution needs at least one form; use an identity substitution");
    }
    const auto& ctx = forms.front().ctx;
    Matrix m(ctx, forms.size(), n);
    std::vector<FieldElement> rhs;
    rhs.reserve(forms.size());
    for (std::size_t i = 0; i < forms.size(); ++i) {
        for (int j = 0; j < n; ++j) m.at(i, j) = forms[i].coeffs[j];
        rhs.push_back(-forms[i].constant);
    }
    auto sol = linsolve(m, rhs);
    if (sol.rank != forms.size())
        throw RankDeficient("sampled hyperplanes are not independent; resample");
    // full row rank makes the system consistent and the kernel r-dimensional
    Matrix a(ctx, n, sol.kernel.size());
    for (std::size_t j = 0; j < sol.kernel.size(); ++j)
        for (int i = 0; i < n; ++i) a.at(i, j) = sol.kernel[j][i];
    return AffineSubstitution(std::move(a), std::move(sol.solution));
}

SampledSubspace sample_affine_subspace(int n, int r, const SampleSet& s, Rng& rng,
                                       int max_retries) {
    if (r == n) return {{}, AffineSubstitution::identity(s.ctx, n)};
    for (int attempt = 0; attempt <= max_retries; ++attempt) {
        auto forms = sample_hyperplanes(n, n - r, s, rng);
        try {
            auto sub = subspace_substitution(forms, n, r);
            return {std::move(forms), std::move(sub)};
        } catch (const RankDeficient&) {
            // probability <= (n-r)/|S| per attempt
        }
    }
    throw RankDeficient("hyperplane batches stayed rank-deficient after retries");
}

bool CombinationMatrix::triangular_support() const {
    for (std::size_t i = 0; i < c.rows(); ++i)
        for (std::size_t j = 0; j < i && j < c.cols(); ++j)
            if (!c.at(i, j).is_zero()) return false;
    return true;
}

ReducedSystem generator_reduction(const PolySystem& s, int r, const SampleSet& S, Rng& rng) {
    const std::size_t m = s.size();
    const auto& ctx = s.ctx;
    std::vector<std::size_t> identity_order(m);
    for (std::size_t i = 0; i < m; ++i) identity_order[i] = i;
    if (m <= static_cast<std::size_t>(r) + 1) {
        return {s.polys, {Matrix::identity(ctx, m)}, identity_order};
    }
    if (!S.ctx->same_field(*ctx)) throw Error("generator reduction: sample set over a different field");
    auto order = s.degree_order();
    const std::size_t rows = static_cast<std::size_t>(r) + 1;
    Matrix c(ctx, rows, m);
    std::vector<MultiPoly> g;
    g.reserve(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        MultiPoly acc(ctx, s.n);
        for (std::size_t j = i; j < m; ++j) {
            c.at(i, j) = S.draw(rng);
            acc = acc + s.polys[order[j]].scaled(c.at(i, j));
        }
        g.push_back(std::move(acc));
    }
    return {std::move(g), {std::move(c)}, std::move(order)};
}

ReducedBlackboxes generator_reduction(const BlackboxSystem& s, int r, const SampleSet& S, Rng& rng) {
    const std::size_t m = s.size();
    std::vector<std::size_t> identity_order(m);
    for (std::size_t i = 0; i < m; ++i) identity_order[i] = i;
    if (m <= static_cast<std::size_t>(r) + 1) {
        return {s.boxes, {Matrix::identity(s.ctx, m)}, identity_order};
    }
    if (!S.ctx->same_field(*s.ctx)) throw Error("generator reduction: sample set over a different field");
    // nonincreasing degree bounds
    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return s.boxes[a].degree_bound() > s.boxes[b].degree_bound();
    });
    const std::size_t rows = static_cast<std::size_t>(r) + 1;
    Matrix c(s.ctx, rows, m);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = i; j < m; ++j) c.at(i, j) = S.draw(rng);

    auto shared_boxes = std::make_shared<const std::vector<Blackbox>>(s.boxes);
    auto shared_mix = std::make_shared<const Matrix>(c);
    auto shared_order = std::make_shared<const std::vector<std::size_t>>(order);
    std::vector<Blackbox> out;
    out.reserve(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        auto fn = [shared_boxes, shared_mix, shared_order, i](std::span<const FieldElement> pt) {
            const auto& ctx = *shared_mix->ctx();
            FieldElement acc = ctx.zero();
            for (std::size_t j = i; j < shared_mix->cols(); ++j)
                acc += shared_mix->at(i, j) * (*shared_boxes)[(*shared_order)[j]].eval(pt);
            return acc;
        };
        Blackbox b = Blackbox::from_fn(s.ctx, s.arity,
                                       (*shared_boxes)[(*shared_order)[i]].degree_bound(), fn);
        out.push_back(std::move(b));
    }
    return {std::move(out), {std::move(c)}, std::move(order)};
}

}  // namespace nullkit
