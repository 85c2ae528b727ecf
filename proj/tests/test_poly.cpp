#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "conelift/hyperbolic.hpp"
#include "conelift/poly.hpp"
#include "test_util.hpp"

using namespace conelift;
using test_util::expand_roots_oracle;
using test_util::multisets_close;

TEST_CASE("real_roots on factored quadratics") {
    // t^2 - 1
    RootResult r = real_roots(UniPoly({-1.0, 0.0, 1.0}), 1e-9);
    REQUIRE(r.ok);
    REQUIRE(r.roots.size() == 2);
    CHECK(r.roots[0] == doctest::Approx(-1.0));
    CHECK(r.roots[1] == doctest::Approx(1.0));
}

TEST_CASE("real_roots recovers multiplicities: (t-1)^2 (t-2)") {
    Vec coeffs = expand_roots_oracle({1.0, 1.0, 2.0});
    RootResult r = real_roots(UniPoly(coeffs), 1e-9);
    REQUIRE(r.ok);
    REQUIRE(r.roots.size() == 3);
    CHECK(r.roots[0] == doctest::Approx(1.0));
    CHECK(r.roots[1] == doctest::Approx(1.0));
    CHECK(r.roots[2] == doctest::Approx(2.0));
}

TEST_CASE("real_roots degree-6 with a double root") {
    Vec roots{-3.0, -1.0, 0.0, 0.0, 2.0, 5.0};
    Vec coeffs = expand_roots_oracle(roots);
    RootResult r = real_roots(UniPoly(coeffs), 1e-9);
    REQUIRE(r.ok);
    CHECK(multisets_close(r.roots, roots, 1e-8));
}

TEST_CASE("real_roots edge cases") {
    CHECK_THROWS_AS(real_roots(UniPoly()), InvalidInput);  // zero polynomial
    RootResult r = real_roots(UniPoly({5.0}));             // nonzero constant
    CHECK(r.ok);
    CHECK(r.roots.empty());
}

TEST_CASE("real_roots flags residual complex parts") {
    // (t^2 + 1)(t - 1): no real roots near the complex pair
    UniPoly q = UniPoly({1.0, 0.0, 1.0}).mul(UniPoly({-1.0, 1.0}));
    RootResult r = real_roots(q, 1e-9);
    CHECK_FALSE(r.ok);
}

TEST_CASE("real_roots tolerates tiny complex perturbations of a multiple root") {
    // (t-1)^3 with coefficient noise well below tolerance
    Vec c = expand_roots_oracle({1.0, 1.0, 1.0});
    c[0] += 1e-13;
    c[2] -= 2e-13;
    RootResult r = real_roots(UniPoly(c), 1e-7);
    REQUIRE(r.ok);
    REQUIRE(r.roots.size() == 3);
    for (double v : r.roots) CHECK(v == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("property: real_roots . expand == identity on root multisets") {
    Rng rng(512);
    for (int trial = 0; trial < 60; ++trial) {
        int deg = 1 + static_cast<int>(rng.below(10));
        Vec roots;
        while (static_cast<int>(roots.size()) < deg) {
            double r = std::floor(rng.uniform(-4.0, 5.0));
            roots.push_back(r);
            // sometimes repeat to exercise multiplicities
            if (rng.uniform() < 0.3 && static_cast<int>(roots.size()) < deg)
                roots.push_back(r);
        }
        std::sort(roots.begin(), roots.end());
        Vec coeffs = expand_roots_oracle(roots, rng.uniform(0.5, 2.0));
        RootResult r = real_roots(UniPoly(coeffs), 1e-9);
        REQUIRE(r.ok);
        CHECK(multisets_close(r.roots, roots, 1e-7));
    }
}

TEST_CASE("property: separated non-integer roots recovered to scale") {
    Rng rng(901);
    for (int trial = 0; trial < 40; ++trial) {
        int deg = 2 + static_cast<int>(rng.below(9));
        Vec roots;
        while (static_cast<int>(roots.size()) < deg) {
            double r = rng.uniform(-10.0, 10.0);
            bool ok = true;
            for (double prev : roots)
                if (std::fabs(prev - r) < 1e-2) ok = false;
            if (ok) roots.push_back(r);
        }
        std::sort(roots.begin(), roots.end());
        double lead = rng.uniform(0.2, 5.0);
        RootResult rr = real_roots(UniPoly(expand_roots_oracle(roots, lead)), 1e-9);
        REQUIRE(rr.ok);
        REQUIRE(rr.roots.size() == roots.size());
        for (std::size_t i = 0; i < roots.size(); ++i)
            CHECK(std::fabs(rr.roots[i] - roots[i]) <= 1e-6 * (1.0 + std::fabs(roots[i])));
    }
}

TEST_CASE("real_roots handles widely scaled roots") {
    Vec roots{-1000.0, 0.001, 2.5, 900.0};
    RootResult rr = real_roots(UniPoly(expand_roots_oracle(roots)), 1e-9);
    REQUIRE(rr.ok);
    CHECK(multisets_close(rr.roots, roots, 1e-4));
}

TEST_CASE("poly_restrict bilinear case p = x1 x2") {
    MultiPoly p(2, {{{1, 1}, 1.0}});
    UniPoly q = poly_restrict(p, {1.0, 1.0}, {2.0, 5.0});
    // (t-2)(t-5) = t^2 - 7t + 10
    REQUIRE(q.degree() == 2);
    CHECK(q.coeffs()[0] == doctest::Approx(10.0));
    CHECK(q.coeffs()[1] == doctest::Approx(-7.0));
    CHECK(q.coeffs()[2] == doctest::Approx(1.0));
}

TEST_CASE("poly_restrict on-axis gives p(e)(t-1)^d") {
    MultiPoly p(3, {{{1, 1, 1}, 2.0}});  // 2 x1 x2 x3, p(e) = 2
    Vec e{1.0, 1.0, 1.0};
    UniPoly q = poly_restrict(p, e, e);
    Vec expect = expand_roots_oracle({1.0, 1.0, 1.0}, 2.0);
    REQUIRE(q.degree() == 3);
    for (int i = 0; i <= 3; ++i) CHECK(q.coeffs()[i] == doctest::Approx(expect[i]).epsilon(1e-9));
}

TEST_CASE("poly_restrict of det on S^2 matches the characteristic polynomial") {
    // det over packed vars (x00, x01, x11): x00*x11 - x01^2
    MultiPoly det2 = det_poly(2);
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2), c = rng.uniform(-2, 2);
        Vec e{1.0, 0.0, 1.0};
        Vec x{a, b, c};
        UniPoly q = poly_restrict(det2, e, x);
        // char poly of [[a,b],[b,c]]: t^2 - (a+c) t + (ac - b^2)
        CHECK(q.coeffs()[2] == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(q.coeffs()[1] == doctest::Approx(-(a + c)).epsilon(1e-9));
        CHECK(q.coeffs()[0] == doctest::Approx(a * c - b * b).epsilon(1e-9));
    }
}

TEST_CASE("poly_restrict leading coefficient equals p(e) to relative 1e-10") {
    Rng rng(17);
    MultiPoly det3 = det_poly(3);
    Vec e = sym_to_hyp_coords(SymMatrix::identity(3));
    for (int trial = 0; trial < 10; ++trial) {
        Vec x = test_util::random_vec(rng, 6, -3.0, 3.0);
        UniPoly q = poly_restrict(det3, e, x);
        CHECK(std::fabs(q.lead() - det3.eval(e)) <= 1e-10 * std::fabs(det3.eval(e)));
    }
}

TEST_CASE("poly_restrict rejects bad directions") {
    MultiPoly p(2, {{{1, 1}, 1.0}});
    CHECK_THROWS_AS(poly_restrict(p, {1.0, -1.0}, {0.0, 0.0}), InvalidInput);  // p(e) < 0
    MultiPoly inhom(2, {{{1, 0}, 1.0}, {{2, 0}, 1.0}});
    CHECK_THROWS_AS(poly_restrict(inhom, {1.0, 1.0}, {0.0, 0.0}), InvalidInput);
}

TEST_CASE("property: restriction homogeneity, roots scale with lambda") {
    Rng rng(23);
    MultiPoly det3 = det_poly(3);
    Vec e = sym_to_hyp_coords(SymMatrix::identity(3));
    for (int trial = 0; trial < 10; ++trial) {
        Vec x = test_util::random_vec(rng, 6, -2.0, 2.0);
        double lam = rng.uniform(0.5, 3.0);
        RootResult r1 = real_roots(poly_restrict(det3, e, x), 1e-9);
        RootResult r2 = real_roots(poly_restrict(det3, e, scale(lam, x)), 1e-9);
        REQUIRE(r1.ok);
        REQUIRE(r2.ok);
        Vec scaled;
        for (double v : r1.roots) scaled.push_back(lam * v);
        CHECK(multisets_close(scaled, r2.roots, 1e-6));
    }
}

TEST_CASE("property: restriction of a product is the convolution of restrictions") {
    Rng rng(31);
    // q = x1 x2, r = x1 + x2 over R^2, p = q*r
    MultiPoly q(2, {{{1, 1}, 1.0}});
    MultiPoly r(2, {{{1, 0}, 1.0}, {{0, 1}, 1.0}});
    MultiPoly p = q.mul(r);
    for (int trial = 0; trial < 10; ++trial) {
        Vec e{1.0, 2.0};
        Vec x = test_util::random_vec(rng, 2, -2.0, 2.0);
        UniPoly rp = poly_restrict(p, e, x);
        UniPoly conv = poly_restrict(q, e, x).mul(poly_restrict(r, e, x));
        REQUIRE(rp.degree() == conv.degree());
        for (int i = 0; i <= rp.degree(); ++i)
            CHECK(rp.coeffs()[i] == doctest::Approx(conv.coeffs()[i]).epsilon(1e-8));
    }
}

TEST_CASE("MultiPoly canonicalization and homogeneity") {
    MultiPoly p(2, {{{1, 0}, 1.0}, {{1, 0}, 2.0}, {{0, 1}, 0.0}});
    CHECK(p.terms().size() == 1);
    CHECK(p.terms()[0].coef == doctest::Approx(3.0));
    CHECK(p.is_homogeneous());
    CHECK_THROWS_AS(MultiPoly(2, {{{1}, 1.0}}), InvalidInput);  // ragged exps
}

TEST_CASE("UniPoly deflate performs synthetic division") {
    UniPoly q = UniPoly(expand_roots_oracle({2.0, 3.0}));
    double rem = 0.0;
    UniPoly quot = q.deflate(2.0, &rem);
    CHECK(rem == doctest::Approx(0.0));
    CHECK(quot.degree() == 1);
    CHECK(quot.eval(3.0) == doctest::Approx(0.0));
}
