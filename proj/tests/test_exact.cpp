#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "nullkit/exact.hpp"
#include "test_util.hpp"

using namespace nullkit;
using namespace nullkit::testutil;

namespace {

MultiPoly var(const FieldCtxPtr& F, int n, int i) { return MultiPoly::variable(F, n, i); }

// S-polynomial, for the independent basis checks only
MultiPoly spoly(const MultiPoly& f, const MultiPoly& g) {
    const auto& [mf, cf] = f.leading();
    const auto& [mg, cg] = g.leading();
    Monomial l = monomial_lcm(mf, mg);
    return f.times_term(cf.inverse(), monomial_quotient(l, mf)) -
           g.times_term(cg.inverse(), monomial_quotient(l, mg));
}

bool is_reduced_basis(const GroebnerBasis& gb, const PolySystem& gens) {
    // every S-polynomial reduces to zero
    for (std::size_t i = 0; i < gb.basis.size(); ++i)
        for (std::size_t j = i + 1; j < gb.basis.size(); ++j)
            if (!normal_form(spoly(gb.basis[i], gb.basis[j]), gb.basis).is_zero()) return false;
    // every original generator reduces to zero
    for (const auto& f : gens.polys)
        if (!normal_form(f, gb.basis).is_zero()) return false;
    // auto-reduced: no leading monomial divides any monomial of another element
    for (std::size_t i = 0; i < gb.basis.size(); ++i) {
        for (std::size_t j = 0; j < gb.basis.size(); ++j) {
            if (i == j) continue;
            for (const auto& [m, c] : gb.basis[j].terms())
                if (monomial_divides(gb.basis[i].leading().first, m)) return false;
        }
    }
    return true;
}

std::multiset<Monomial> leading_set(const GroebnerBasis& gb) {
    std::multiset<Monomial> s;
    for (const auto& f : gb.basis) s.insert(f.leading().first);
    return s;
}

}  // namespace

TEST_CASE("buchberger on the spec corner cases") {
    auto F = FieldCtx::make_prime(101);
    auto x1 = var(F, 1, 0);

    SUBCASE("unit ideal") {
        auto gb = buchberger(PolySystem({x1, x1 + MultiPoly::constant(F, 1, 1)}));
        CHECK(gb.is_unit());
        CHECK(ideal_dimension(gb) == -1);
    }

    SUBCASE("already a basis") {
        auto gb = buchberger(PolySystem({x1 * x1}));
        REQUIRE(gb.basis.size() == 1);
        CHECK(gb.basis[0] == x1 * x1);
    }

    SUBCASE("two-variable reduction") {
        auto p1 = var(F, 2, 0) + var(F, 2, 1);  // x1 + x2
        auto p2 = var(F, 2, 1) * var(F, 2, 1);  // x2^2
        auto gb = buchberger(PolySystem({p1, p2}));
        auto leads = leading_set(gb);
        std::multiset<Monomial> expect{Monomial{1, 0}, Monomial{0, 2}};
        CHECK(leads == expect);
        CHECK(is_reduced_basis(gb, PolySystem({p1, p2})));
    }

    SUBCASE("duplicate generators collapse") {
        auto f = var(F, 2, 0) * var(F, 2, 0) + var(F, 2, 1);
        auto gb = buchberger(PolySystem({f, f}));
        CHECK(gb.basis.size() == 1);
        CHECK(gb.basis[0] == f);
    }

    SUBCASE("zero polynomials are ignored") {
        auto gb = buchberger(PolySystem({MultiPoly(F, 2), var(F, 2, 0)}));
        CHECK(gb.basis.size() == 1);
        CHECK(ideal_dimension(gb) == 1);
    }

    SUBCASE("budget exhaustion is loud") {
        GbConfig tiny;
        tiny.budget = 1;
        std::vector<MultiPoly> gens;
        Rng rng(1);
        for (int i = 0; i < 4; ++i) gens.push_back(random_poly(F, 3, 3, 6, rng));
        CHECK_THROWS_AS(buchberger(PolySystem(gens), tiny), BudgetError);
    }
}

TEST_CASE("buchberger output passes independent checks on random systems") {
    auto F = FieldCtx::make_prime(101);
    Rng rng(2);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 1 + static_cast<int>(rng.below(3));
        std::vector<MultiPoly> gens;
        int m = 1 + static_cast<int>(rng.below(4));
        for (int i = 0; i < m; ++i) gens.push_back(random_poly(F, n, 3, 4, rng));
        bool all_zero = std::all_of(gens.begin(), gens.end(),
                                    [](const MultiPoly& f) { return f.is_zero(); });
        if (all_zero) continue;
        PolySystem sys(gens);
        auto gb = buchberger(sys);
        CHECK(is_reduced_basis(gb, sys));

        // leading monomials are invariant under shuffling the generators
        std::vector<MultiPoly> shuffled = gens;
        for (std::size_t i = shuffled.size(); i > 1; --i)
            std::swap(shuffled[i - 1], shuffled[rng.below(i)]);
        auto gb2 = buchberger(PolySystem(shuffled));
        CHECK(leading_set(gb) == leading_set(gb2));
    }
}

TEST_CASE("ideal dimension from the staircase") {
    auto F = FieldCtx::make_prime(101);

    SUBCASE("coordinate subspaces") {
        CHECK(ideal_dimension(buchberger(PolySystem({var(F, 2, 0), var(F, 2, 1)}))) == 0);
        CHECK(ideal_dimension(buchberger(PolySystem({var(F, 3, 0)}))) == 2);
        auto one = MultiPoly::constant(F, 2, 1);
        CHECK(ideal_dimension(buchberger(PolySystem({one}))) == -1);
    }

    SUBCASE("random variable subsets") {
        Rng rng(3);
        for (int trial = 0; trial < 20; ++trial) {
            int n = 2 + static_cast<int>(rng.below(4));
            int k = 1 + static_cast<int>(rng.below(n));
            std::set<int> chosen;
            while (static_cast<int>(chosen.size()) < k)
                chosen.insert(static_cast<int>(rng.below(n)));
            std::vector<MultiPoly> gens;
            for (int v : chosen) gens.push_back(var(F, n, v));
            CHECK(ideal_dimension(buchberger(PolySystem(gens))) == n - k);
        }
    }

    SUBCASE("zero ideal has dimension n") {
        GroebnerBasis e{F, 4, {}};
        CHECK(ideal_dimension(e) == 4);
    }
}

TEST_CASE("exact radical membership oracle") {
    auto F = FieldCtx::make_prime(101);
    auto x1 = var(F, 1, 0);
    CHECK(radical_member_exact(x1, PolySystem({x1 * x1})));
    CHECK(!radical_member_exact(x1 + MultiPoly::constant(F, 1, 1), PolySystem({x1 * x1})));

    auto a = var(F, 2, 0), b = var(F, 2, 1);
    CHECK(radical_member_exact(a + b, PolySystem({a, b})));
}

TEST_CASE("perron annihilators") {
    auto F = FieldCtx::make_prime(101);

    SUBCASE("x and x^2") {
        auto x1 = var(F, 1, 0);
        auto ann = perron_annihilator(PolySystem({x1, x1 * x1}));
        REQUIRE(ann.has_value());
        // y1^2 - y2
        auto y1 = var(F, 2, 0), y2 = var(F, 2, 1);
        CHECK(ann->a == y1 * y1 - y2);
        CHECK(ann->deg_bound == 2);
    }

    SUBCASE("elementary symmetric identity") {
        auto a = var(F, 2, 0), b = var(F, 2, 1);
        PolySystem sys({a + b, a * b, a * a + b * b});
        auto ann = perron_annihilator(sys);
        REQUIRE(ann.has_value());
        CHECK(compose(ann->a, sys.polys).is_zero());
        CHECK(ann->deg_bound == 4);
        // weighted degree within the bound: weights are the input degrees
        for (const auto& [m, c] : ann->a.terms()) {
            std::uint64_t w = m[0] * 1 + m[1] * 2 + m[2] * 2;
            CHECK(w <= ann->deg_bound);
        }
        // the textbook identity y1^2 - 2*y2 - y3 is itself an annihilator
        auto y1 = var(F, 3, 0), y2 = var(F, 3, 1), y3 = var(F, 3, 2);
        auto expected = y1 * y1 - MultiPoly::constant(F, 3, 2) * y2 - y3;
        CHECK(compose(expected, sys.polys).is_zero());
    }

    SUBCASE("independent pair") {
        CHECK(!perron_annihilator(PolySystem({var(F, 2, 0), var(F, 2, 1)})).has_value());
    }

    SUBCASE("constants are instantly dependent") {
        auto ann = perron_annihilator(PolySystem({MultiPoly::constant(F, 1, 5), var(F, 1, 0)}));
        REQUIRE(ann.has_value());
        CHECK(compose(ann->a, {MultiPoly::constant(F, 1, 5), var(F, 1, 0)}).is_zero());
    }

    SUBCASE("random annihilators compose to zero and respect the bound") {
        Rng rng(4);
        for (int trial = 0; trial < 20; ++trial) {
            int n = 1 + static_cast<int>(rng.below(2));
            std::vector<MultiPoly> gens;
            for (int i = 0; i < 3; ++i) {
                auto f = random_poly(F, n, 2, 3, rng);
                if (f.is_zero()) f = var(F, n, 0);
                gens.push_back(f);
            }
            PolySystem sys(gens);
            auto ann = perron_annihilator(sys);
            if (n == 1) REQUIRE(ann.has_value());  // 3 polynomials in 1 variable must be dependent
            if (ann) {
                CHECK(compose(ann->a, sys.polys).is_zero());
                CHECK(!ann->a.is_zero());
            }
        }
    }
}

TEST_CASE("jacobian rank vs perron rank") {
    auto F = FieldCtx::make_prime(10007);
    auto x1 = var(F, 2, 0), x2 = var(F, 2, 1);

    SUBCASE("independent variables") {
        Rng rng(5);
        auto r = jacobian_trdeg(PolySystem({x1, x2}), rng);
        CHECK(r.rank == 2);
        CHECK(r.char_condition_ok);
    }

    SUBCASE("powers collapse the rank") {
        Rng rng(6);
        auto r = jacobian_trdeg(PolySystem({x1, x1 * x1}), rng);
        CHECK(r.rank == 1);
    }

    SUBCASE("frobenius power defeats the jacobian in small characteristic") {
        auto F7 = FieldCtx::make_prime(7);
        MultiPoly x7(F7, 1);
        x7.add_term(Monomial{7}, F7->one());
        Rng rng(7);
        auto r = jacobian_trdeg(PolySystem({x7}), rng);
        CHECK(r.rank == 0);
        CHECK(!r.char_condition_ok);  // char 7 is not greater than 7^min(1,1)
        // the honest transcendence degree is 1
        CHECK(perron_trdeg(PolySystem({x7})) == 1);
    }

    SUBCASE("agreement with perron on random small systems") {
        Rng rng(8);
        for (int trial = 0; trial < 50; ++trial) {
            int n = 1 + static_cast<int>(rng.below(3));
            int m = 1 + static_cast<int>(rng.below(3));
            std::vector<MultiPoly> gens;
            for (int i = 0; i < m; ++i) {
                auto f = random_poly(F, n, 2, 3, rng);
                if (f.is_zero()) f = MultiPoly::constant(F, n, 1);
                gens.push_back(f);
            }
            PolySystem sys(gens);
            auto jr = jacobian_trdeg(sys, rng);
            CHECK(jr.char_condition_ok);  // 10007 > 2^3
            CHECK(jr.rank == perron_trdeg(sys));
        }
    }
}

TEST_CASE("groebner dimension oracle") {
    auto F = FieldCtx::make_prime(101);
    GroebnerDimensionOracle oracle;
    auto x1 = var(F, 2, 0), x2 = var(F, 2, 1);
    CHECK(oracle.zero_dimensional(PolySystem({x1, x2})));
    CHECK(!oracle.zero_dimensional(PolySystem({x1})));
    CHECK(oracle.empty(PolySystem({x1, x1 + MultiPoly::constant(F, 2, 1)})));
    CHECK(oracle.dimension(PolySystem({x1})) == 1);
}
