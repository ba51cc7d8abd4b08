#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nullkit/geometry.hpp"
#include "test_util.hpp"

using namespace nullkit;
using namespace nullkit::testutil;

namespace {

MultiPoly var(const FieldCtxPtr& F, int n, int i) { return MultiPoly::variable(F, n, i); }

}  // namespace

TEST_CASE("required sample sizes match the stated formulas") {
    std::vector<std::int64_t> degs22{2, 2};
    CHECK(required_sample_size(SamplePurpose::hn_reduction, 3, 2, 1, degs22) == 48);  // 6*2*4

    std::vector<std::int64_t> degs2{2};
    CHECK(required_sample_size(SamplePurpose::trdeg_point, 2, 1, 0, degs2) == 72);  // 18*2*2

    std::vector<std::int64_t> linear{1, 1, 1, 1};
    CHECK(required_sample_size(SamplePurpose::generator_reduction, 7, 4, 2, linear) == 6);

    std::vector<std::int64_t> degs33{3, 3};
    CHECK(required_sample_size(SamplePurpose::generator_reduction, 4, 2, 1, degs33) ==
          6ULL * 81ULL);  // 6 * 3^(2*2)

    // overflow is loud, not silent
    std::vector<std::int64_t> huge{1000, 1000, 1000, 1000, 1000, 1000, 1000};
    CHECK_THROWS_AS(
        required_sample_size(SamplePurpose::generator_reduction, 9, 7, 6, huge), Error);
}

TEST_CASE("hyperplane sampling") {
    auto F = FieldCtx::make_prime(101);
    SampleSet S(F, 100, true);

    SUBCASE("structure: nonzero coefficients on the support plus a constant") {
        Rng rng(1);
        auto forms = sample_hyperplanes(3, 2, S, rng);
        REQUIRE(forms.size() == 2);
        for (const auto& f : forms) {
            CHECK(f.n == 3);
            for (int i = 0; i < 3; ++i) CHECK(!f.coeffs[i].is_zero());
            CHECK(!f.constant.is_zero());
            CHECK(f.to_poly().degree() == 1);
        }
    }

    SUBCASE("restricted support leaves other coefficients zero") {
        Rng rng(2);
        auto forms = sample_hyperplanes(4, 1, S, rng, {0, 2});
        CHECK(!forms[0].coeffs[0].is_zero());
        CHECK(forms[0].coeffs[1].is_zero());
        CHECK(!forms[0].coeffs[2].is_zero());
        CHECK(forms[0].coeffs[3].is_zero());
    }

    SUBCASE("seed determinism") {
        Rng r1(3), r2(3);
        auto a = sample_hyperplanes(3, 4, S, r1);
        auto b = sample_hyperplanes(3, 4, S, r2);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].coeffs == b[i].coeffs);
            CHECK(a[i].constant == b[i].constant);
        }
    }
}

TEST_CASE("subspace substitution") {
    auto F = FieldCtx::make_prime(7);

    SUBCASE("the line x1 = 1") {
        LinearForm f{F, 2, {F->one(), F->zero()}, F->from_int(-1)};  // x1 - 1
        auto sub = subspace_substitution({f}, 2, 1);
        CHECK(sub.n() == 2);
        CHECK(sub.r() == 1);
        CHECK(sub.shift()[0].residue() == 1);
        CHECK(sub.shift()[1].residue() == 0);
        CHECK(sub.matrix().at(0, 0).is_zero());
        CHECK(sub.matrix().at(1, 0).is_one());
    }

    SUBCASE("x1 = x2 = 0 gives the x3 axis") {
        LinearForm f1{F, 3, {F->one(), F->zero(), F->zero()}, F->zero()};
        LinearForm f2{F, 3, {F->zero(), F->one(), F->zero()}, F->zero()};
        auto sub = subspace_substitution({f1, f2}, 3, 1);
        std::vector<FieldElement> z{F->from_residue(4)};
        auto x = sub.apply(z);
        CHECK(x[0].is_zero());
        CHECK(x[1].is_zero());
        CHECK(x[2].residue() == 4);
    }

    SUBCASE("parallel hyperplanes are rank deficient") {
        LinearForm f1{F, 2, {F->one(), F->one()}, F->zero()};
        LinearForm f2{F, 2, {F->from_residue(2), F->from_residue(2)}, F->one()};
        CHECK_THROWS_AS(subspace_substitution({f1, f2}, 2, 0), RankDeficient);
    }

    SUBCASE("every substituted point satisfies all forms") {
        auto F101 = FieldCtx::make_prime(101);
        SampleSet S(F101, 100, true);
        Rng rng(4);
        for (int trial = 0; trial < 100; ++trial) {
            int n = 2 + static_cast<int>(rng.below(4));
            int r = static_cast<int>(rng.below(n));
            auto [forms, sub] = sample_affine_subspace(n, r, S, rng);
            auto z = random_point(F101, r, rng);
            auto x = sub.apply(z);
            for (const auto& f : forms) CHECK(f.eval(x).is_zero());
            // and as an exact polynomial identity, not just pointwise
            for (const auto& f : forms)
                CHECK(substitute_affine(f.to_poly(), sub).is_zero());
        }
    }
}

TEST_CASE("generator reduction") {
    auto F = FieldCtx::make_prime(101);
    SampleSet S(F, 100, true);

    SUBCASE("m <= r+1 passes through verbatim") {
        auto x = var(F, 1, 0);
        PolySystem sys({x, x * x});
        Rng rng(5);
        auto red = generator_reduction(sys, 1, S, rng);
        CHECK(red.polys == sys.polys);
        CHECK(red.mix.rows() == 2);
        CHECK(red.mix.triangular_support());
    }

    SUBCASE("triangular support and degree bounds hold") {
        Rng rng(6);
        for (int trial = 0; trial < 30; ++trial) {
            int n = 1 + static_cast<int>(rng.below(3));
            int m = 3 + static_cast<int>(rng.below(3));
            int r = 1 + static_cast<int>(rng.below(2));
            std::vector<MultiPoly> gens;
            for (int i = 0; i < m; ++i) {
                auto f = random_poly(F, n, 1 + rng.below(3), 4, rng);
                if (f.is_zero()) f = var(F, n, 0);
                gens.push_back(f);
            }
            PolySystem sys(gens);
            if (m <= r + 1) continue;
            auto red = generator_reduction(sys, r, S, rng);
            CHECK(red.mix.triangular_support());
            CHECK(red.polys.size() == static_cast<std::size_t>(r) + 1);
            auto degs = sys.degs();
            for (std::size_t i = 0; i < red.polys.size(); ++i)
                CHECK(red.polys[i].degree() <= degs[i]);
            // exact direction: every g_i lies in the input ideal syntactically
            auto gb = buchberger(sys);
            for (const auto& g : red.polys) CHECK(ideal_contains(gb, g));
        }
    }

    SUBCASE("zeroset is preserved on the powers-of-x example") {
        auto x = var(F, 1, 0);
        PolySystem sys({x * x, x * x + x, x * x * x});
        Rng rng(7);
        auto size = required_sample_size(SamplePurpose::generator_reduction, 1, 3, 1,
                                         std::vector<std::int64_t>{3, 2, 2});
        auto S2 = make_sample_set(F, size, true, 1);
        auto lifted = sys.lifted(S2.ctx);
        auto red = generator_reduction(lifted, 1, S2, rng);
        REQUIRE(red.polys.size() == 2);
        PolySystem gsys(red.polys);
        // V(f) = {0} = V(g): both inclusions via exact radical membership
        for (const auto& f : lifted.polys) CHECK(radical_member_exact(f, gsys));
        auto gb = buchberger(lifted);
        for (const auto& g : red.polys) CHECK(ideal_contains(gb, g));
    }

    SUBCASE("three independent linear forms keep the origin") {
        auto a = var(F, 2, 0), b = var(F, 2, 1);
        PolySystem sys({a, b, a + b});
        Rng rng(8);
        auto red = generator_reduction(sys, 2, S, rng);
        REQUIRE(red.polys.size() == 3);
        PolySystem gsys(red.polys);
        for (const auto& f : sys.polys) CHECK(radical_member_exact(f, gsys));
    }

    SUBCASE("blackbox reduction evaluates to the same combinations") {
        Rng rng(9);
        std::vector<MultiPoly> gens;
        for (int i = 0; i < 4; ++i) gens.push_back(random_poly(F, 2, 2, 4, rng));
        for (auto& f : gens)
            if (f.is_zero()) f = var(F, 2, 0);
        PolySystem sys(gens);
        Rng ra(10), rb(10);
        auto red_poly = generator_reduction(sys, 1, S, ra);
        auto red_box = generator_reduction(BlackboxSystem::from_polys(sys), 1, S, rb);
        REQUIRE(red_poly.polys.size() == red_box.boxes.size());
        for (int t = 0; t < 20; ++t) {
            auto pt = random_point(F, 2, rng);
            for (std::size_t i = 0; i < red_poly.polys.size(); ++i)
                CHECK(red_poly.polys[i].eval(pt) == red_box.boxes[i].eval(pt));
        }
    }
}

TEST_CASE("random systems: both zeroset inclusions certified") {
    // the probabilistic direction of the reduction, tested loosely: at most
    // a couple of failures allowed across the batch
    auto F = FieldCtx::make_prime(101);
    Rng rng(11);
    int failures = 0;
    const int trials = 25;
    for (int trial = 0; trial < trials; ++trial) {
        int n = 2 + static_cast<int>(rng.below(2));
        int r = 1;
        int m = 3;
        std::vector<MultiPoly> inner, outer;
        for (int j = 0; j < r; ++j) inner.push_back(random_poly(F, n, 2, 3, rng));
        for (auto& h : inner)
            if (h.is_constant()) h = var(F, n, 0);
        for (int i = 0; i < m; ++i) outer.push_back(random_poly(F, r, 2, 3, rng));
        std::vector<MultiPoly> gens;
        for (const auto& q : outer) gens.push_back(compose(q, inner));
        PolySystem sys(gens);

        auto size = required_sample_size(SamplePurpose::generator_reduction, n, m, r, sys.degs());
        auto S = make_sample_set(F, size, true, trial);
        auto lifted = sys.lifted(S.ctx);
        auto red = generator_reduction(lifted, r, S, rng);

        auto gb = buchberger(lifted);
        for (const auto& g : red.polys) CHECK(ideal_contains(gb, g));  // always

        PolySystem gsys(red.polys);
        bool ok = true;
        for (const auto& f : lifted.polys)
            if (!radical_member_exact(f, gsys)) ok = false;
        if (!ok) ++failures;
    }
    CHECK(failures <= 2);  // budget 1/6 per run would allow ~4
}

TEST_CASE("hyperplane sections drop dimension by one at the stated rate") {
    auto F = FieldCtx::make_prime(101);
    GroebnerDimensionOracle oracle;

    // V(x1 + x2) in the plane: dim 1, degree 1; the bad event is a parallel
    // hyperplane (coefficient vectors proportional), probability ~ 1/|S|
    auto f = var(F, 2, 0) + var(F, 2, 1);
    SampleSet S(F, 100, true);
    Rng rng(12);
    int fails = 0;
    const int trials = 300;
    for (int t = 0; t < trials; ++t) {
        auto h = sample_hyperplanes(2, 1, S, rng)[0];
        auto gb = buchberger(PolySystem({f, h.to_poly()}));
        if (ideal_dimension(gb) != 0) ++fails;
    }
    double rate = static_cast<double>(fails) / trials;
    CHECK(rate <= 2.0 * 1 / 100.0 + 0.02);
}
