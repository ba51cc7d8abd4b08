#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nullkit/poly.hpp"
#include "test_util.hpp"

using namespace nullkit;
using namespace nullkit::testutil;

namespace {

MultiPoly var(const FieldCtxPtr& F, int n, int i) { return MultiPoly::variable(F, n, i); }

}  // namespace

TEST_CASE("evaluation") {
    auto F = FieldCtx::make_prime(7);
    auto f = var(F, 2, 0) + MultiPoly::constant(F, 2, 2) * var(F, 2, 1);  // x1 + 2*x2
    std::vector<FieldElement> pt{F->from_residue(1), F->from_residue(3)};
    CHECK(f.eval(pt).residue() == 0);  // 1 + 6 = 7 = 0

    MultiPoly z(F, 2);
    CHECK(z.eval(pt).is_zero());
    CHECK(z.degree() == kZeroPolyDegree);

    auto F5 = FieldCtx::make_prime(5);
    auto g = var(F5, 1, 0) * var(F5, 1, 0) * var(F5, 1, 0);  // x1^3
    std::vector<FieldElement> p2{F5->from_residue(2)};
    CHECK(g.eval(p2).residue() == 3);  // 8 mod 5

    CHECK_THROWS_AS(f.eval(p2), Error);  // arity mismatch
}

TEST_CASE("arithmetic basics") {
    auto F = FieldCtx::make_prime(7);
    auto x = var(F, 1, 0);
    auto sq = x * x;
    CHECK(sq.degree() == 2);
    CHECK(sq.term_count() == 1);

    auto f = random_poly(F, 1, 3, 4, *[] { static Rng r(1); return &r; }());
    CHECK((f - f).is_zero());

    auto one = MultiPoly::constant(F, 1, 1);
    auto prod = (x + one) * (x - one);
    CHECK(prod == sq - one);  // x^2 - 1

    auto F11 = FieldCtx::make_prime(11);
    CHECK_THROWS_AS(x + var(F11, 1, 0), Error);
}

TEST_CASE("degree is additive for monic-leading factors") {
    auto F = FieldCtx::make_prime(101);
    Rng rng(3);
    for (int i = 0; i < 60; ++i) {
        int n = 1 + static_cast<int>(rng.below(3));
        auto f = random_monic_poly(F, n, 1 + rng.below(4), 4, rng);
        auto g = random_monic_poly(F, n, 1 + rng.below(4), 4, rng);
        CHECK((f * g).degree() == f.degree() + g.degree());
    }
}

TEST_CASE("formal partial derivatives") {
    auto F = FieldCtx::make_prime(7);
    auto x1 = var(F, 2, 0);

    auto d_sq = (x1 * x1).partials();
    CHECK(d_sq[0] == MultiPoly::constant(F, 2, 2) * x1);
    CHECK(d_sq[1].is_zero());

    // x1^7 over GF(7): derivative vanishes
    MultiPoly p7(F, 2);
    p7.add_term(Monomial{7, 0}, F->one());
    CHECK(p7.partials()[0].is_zero());

    SUBCASE("linearity on random pairs") {
        auto F101 = FieldCtx::make_prime(101);
        Rng rng(4);
        for (int i = 0; i < 50; ++i) {
            auto f = random_poly(F101, 3, 4, 5, rng);
            auto g = random_poly(F101, 3, 4, 5, rng);
            auto ds = (f + g).partials();
            auto df = f.partials(), dg = g.partials();
            for (int v = 0; v < 3; ++v) CHECK(ds[v] == df[v] + dg[v]);
        }
    }
}

TEST_CASE("affine substitution") {
    auto F = FieldCtx::make_prime(7);

    SUBCASE("x1 + x2 restricted to the diagonal") {
        Matrix a(F, 2, 1);
        a.at(0, 0) = F->one();
        a.at(1, 0) = F->one();
        AffineSubstitution s(std::move(a), {F->zero(), F->zero()});
        auto f = var(F, 2, 0) + var(F, 2, 1);
        auto g = substitute_affine(f, s);
        CHECK(g == MultiPoly::constant(F, 1, 2) * var(F, 1, 0));  // 2*z1
    }

    SUBCASE("identity substitution is the identity") {
        Rng rng(5);
        auto f = random_poly(F, 3, 3, 6, rng);
        CHECK(substitute_affine(f, AffineSubstitution::identity(F, 3)) == f);
    }

    SUBCASE("x1*x2 with x2 pinned to 5") {
        Matrix a(F, 2, 1);
        a.at(0, 0) = F->one();
        AffineSubstitution s(std::move(a), {F->zero(), F->from_residue(5)});
        auto f = var(F, 2, 0) * var(F, 2, 1);
        CHECK(substitute_affine(f, s) == MultiPoly::constant(F, 1, 5) * var(F, 1, 0));
    }

    SUBCASE("rank-deficient matrices are rejected") {
        Matrix a(F, 2, 2);
        a.at(0, 0) = F->one();
        a.at(1, 0) = F->one();  // second column zero
        CHECK_THROWS_AS(AffineSubstitution(std::move(a), {F->zero(), F->zero()}), Error);
    }

    SUBCASE("substitution commutes with evaluation") {
        auto F101 = FieldCtx::make_prime(101);
        Rng rng(6);
        for (int trial = 0; trial < 100; ++trial) {
            int n = 2 + static_cast<int>(rng.below(3));
            int r = 1 + static_cast<int>(rng.below(n));
            Matrix a(F101, n, r);
            // random full-rank: retry until the rank check passes
            std::vector<FieldElement> b = random_point(F101, n, rng);
            while (true) {
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < r; ++j) a.at(i, j) = F101->uniform(rng);
                if (matrix_rank(a) == static_cast<std::size_t>(r)) break;
            }
            AffineSubstitution s(a, b);
            auto f = random_poly(F101, n, 3, 6, rng);
            auto fr = substitute_affine(f, s);
            CHECK(fr.degree() <= std::max<std::int64_t>(f.degree(), 0));
            auto z = random_point(F101, r, rng);
            CHECK(fr.eval(z) == f.eval(s.apply(z)));
        }
    }
}

TEST_CASE("dense interpolation") {
    auto F = FieldCtx::make_prime(101);

    SUBCASE("linear polynomial is recovered exactly") {
        auto f = var(F, 2, 0) + MultiPoly::constant(F, 2, 2) * var(F, 2, 1);
        auto oracle = [&](std::span<const FieldElement> pt) { return f.eval(pt); };
        auto got = interpolate_dense(oracle, F, 2, 1);
        CHECK(got == f);
        CHECK(got.term_count() == 2);
    }

    SUBCASE("constant oracle") {
        auto oracle = [&](std::span<const FieldElement>) { return F->from_residue(5); };
        auto got = interpolate_dense(oracle, F, 3, 0);
        CHECK(got == MultiPoly::constant(F, 3, 5));
    }

    SUBCASE("round-trips random sparse polynomials") {
        Rng rng(7);
        for (int trial = 0; trial < 200; ++trial) {
            int r = 1 + static_cast<int>(rng.below(3));
            std::int64_t d = rng.below(5);
            auto f = random_poly(F, r, d, 5, rng);
            auto oracle = [&](std::span<const FieldElement> pt) { return f.eval(pt); };
            auto got = interpolate_dense(oracle, F, r, d, &rng);
            CHECK(got == f);
        }
    }

    SUBCASE("serial and parallel grids agree") {
        Rng rng(8);
        auto f = random_poly(F, 3, 4, 8, rng);
        auto oracle = [&](std::span<const FieldElement> pt) { return f.eval(pt); };
        Rng ra(9), rb(9);
        CHECK(interpolate_dense(oracle, F, 3, 4, &ra, Exec::serial) ==
              interpolate_dense(oracle, F, 3, 4, &rb, Exec::parallel));
    }

    SUBCASE("dishonest degree bound is caught") {
        auto f = var(F, 1, 0) * var(F, 1, 0);  // x^2 claimed as degree 1
        auto oracle = [&](std::span<const FieldElement> pt) { return f.eval(pt); };
        CHECK_THROWS_WITH_AS(interpolate_dense(oracle, F, 1, 1),
                             doctest::Contains("degree bound violated"), Error);
    }

    SUBCASE("field too small for the grid") {
        auto F2 = FieldCtx::make_prime(2);
        auto oracle = [&](std::span<const FieldElement>) { return F2->one(); };
        CHECK_THROWS_AS(interpolate_dense(oracle, F2, 1, 3), NeedsLargerField);
    }

    SUBCASE("works over extension fields") {
        auto E = make_field(2, 16, 1);
        Rng rng(10);
        auto f = random_poly(E, 2, 3, 5, rng);
        auto oracle = [&](std::span<const FieldElement> pt) { return f.eval(pt); };
        CHECK(interpolate_dense(oracle, E, 2, 3, &rng) == f);
    }
}

TEST_CASE("composition expands blackbox structure") {
    auto F = FieldCtx::make_prime(101);
    auto z1 = var(F, 2, 0), z2 = var(F, 2, 1);
    auto h1 = var(F, 3, 0) + var(F, 3, 2);  // x1 + x3
    auto h2 = var(F, 3, 1);                 // x2
    auto f = compose(z1 * z2 + z1, {h1, h2});
    // (x1+x3)*x2 + (x1+x3)
    auto expect = h1 * h2 + h1;
    CHECK(f == expect);
}

TEST_CASE("polynomial systems") {
    auto F = FieldCtx::make_prime(7);
    auto x = var(F, 1, 0);
    PolySystem s({x, x * x + x, x * x * x});
    CHECK(s.degs() == std::vector<std::int64_t>{3, 2, 1});
    CHECK(s.degree_order() == std::vector<std::size_t>{2, 1, 0});
    CHECK(static_cast<std::uint64_t>(s.degree_product()) == 6);
    CHECK(s.max_degree() == 3);

    CHECK_THROWS_AS(PolySystem({x, var(F, 2, 0)}), Error);
}

TEST_CASE("canonical printing uses grevlex-descending order") {
    auto F = FieldCtx::make_prime(101);
    auto x1 = var(F, 3, 0), x2 = var(F, 3, 1), x3 = var(F, 3, 2);
    auto f = MultiPoly::constant(F, 3, 3) * x1 * x1 * x2 +
             MultiPoly::constant(F, 3, 5) * x3 + MultiPoly::constant(F, 3, 100);
    CHECK(f.str() == "3*x1^2*x2 + 5*x3 + 100");
    CHECK(MultiPoly(F, 2).str() == "0");
    CHECK((x1 * x1).str() == "x1^2");
}

TEST_CASE("linear solving over finite fields") {
    auto F = FieldCtx::make_prime(7);

    SUBCASE("identity system") {
        auto m = Matrix::identity(F, 3);
        std::vector<FieldElement> rhs{F->one(), F->zero(), F->zero()};
        auto r = linsolve(m, rhs);
        CHECK(r.consistent);
        CHECK(r.rank == 3);
        CHECK(r.solution == rhs);
        CHECK(r.kernel.empty());
    }

    SUBCASE("zero matrix has full kernel") {
        Matrix m(F, 2, 3);
        std::vector<FieldElement> rhs{F->zero(), F->zero()};
        auto r = linsolve(m, rhs);
        CHECK(r.consistent);
        CHECK(r.rank == 0);
        CHECK(r.kernel.size() == 3);
    }

    SUBCASE("inconsistent system reports no solution") {
        Matrix m(F, 2, 2);
        m.at(0, 0) = m.at(0, 1) = m.at(1, 0) = m.at(1, 1) = F->one();
        std::vector<FieldElement> rhs{F->one(), F->from_residue(2)};
        auto r = linsolve(m, rhs);
        CHECK(!r.consistent);
        CHECK(r.rank == 1);
    }

    SUBCASE("solutions and kernels verify on random systems") {
        auto F101 = FieldCtx::make_prime(101);
        Rng rng(11);
        for (int trial = 0; trial < 40; ++trial) {
            std::size_t rows = 1 + rng.below(6), cols = 1 + rng.below(6);
            Matrix m(F101, rows, cols);
            for (std::size_t i = 0; i < rows; ++i)
                for (std::size_t j = 0; j < cols; ++j)
                    if (rng.below(3)) m.at(i, j) = F101->uniform(rng);
            std::vector<FieldElement> rhs = random_point(F101, rows, rng);
            auto r = linsolve(m, rhs);
            auto apply = [&](const std::vector<FieldElement>& v) {
                std::vector<FieldElement> out(rows, F101->zero());
                for (std::size_t i = 0; i < rows; ++i)
                    for (std::size_t j = 0; j < cols; ++j) out[i] += m.at(i, j) * v[j];
                return out;
            };
            if (r.consistent) CHECK(apply(r.solution) == rhs);
            for (const auto& kv : r.kernel) {
                auto img = apply(kv);
                for (const auto& e : img) CHECK(e.is_zero());
            }
            CHECK(r.kernel.size() == cols - r.rank);
            // serial reference agrees
            auto rs = linsolve(m, rhs, Exec::serial);
            CHECK(rs.consistent == r.consistent);
            CHECK(rs.rank == r.rank);
            if (r.consistent) CHECK(rs.solution == r.solution);
            CHECK(rs.kernel == r.kernel);
        }
    }
}
