#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "conelift/obstruction.hpp"
#include "test_util.hpp"

using namespace conelift;

TEST_CASE("BigUint arithmetic and decimal output") {
    BigUint a(0xffffffffULL);
    BigUint b = a + a;
    CHECK(b.to_decimal() == "8589934590");
    BigUint p = BigUint(2).pow(100);
    CHECK(p.to_decimal() == "1267650600228229401496703205376");
    CHECK(p.bit_size() == 101);
    CHECK(BigUint(0).to_decimal() == "0");
    CHECK(BigUint::from_decimal("1267650600228229401496703205376") == p);
    CHECK(BigUint(7) * BigUint(6) == BigUint(42));
    CHECK(BigUint(5) < BigUint(6));
    CHECK_FALSE(BigUint(1000000007).fits_u64() == false);
    CHECK_THROWS_AS(BigUint::from_decimal("12a"), InvalidInput);
}

TEST_CASE("ramsey_upper base cases: exact pigeonhole") {
    CHECK(ramsey_upper(1, 3, 2).to_decimal() == "5");
    CHECK(ramsey_upper(1, 4, 4).to_decimal() == "13");
    CHECK(ramsey_upper(1, 1, 9).to_decimal() == "1");
    CHECK(ramsey_upper(2, 2, 5).to_decimal() == "2");   // m <= k
    CHECK(ramsey_upper(3, 7, 1).to_decimal() == "7");   // single color
    CHECK_THROWS_AS(ramsey_upper(0, 3, 2), InvalidInput);
    CHECK_THROWS_AS(ramsey_upper(2, 0, 2), InvalidInput);
    CHECK_THROWS_AS(ramsey_upper(2, 3, 0), InvalidInput);
}

TEST_CASE("ramsey_upper recursion values and monotonicity") {
    // k=2: sum_{j<s} n^j with s = n(m-1)+1
    CHECK(ramsey_upper(2, 3, 2).to_decimal() == "31");  // 2^5 - 1
    // monotone in m and n
    CHECK(ramsey_upper(2, 4, 2) >= ramsey_upper(2, 3, 2));
    CHECK(ramsey_upper(2, 3, 3) >= ramsey_upper(2, 3, 2));
    CHECK(ramsey_upper(3, 4, 2) >= ramsey_upper(2, 4, 2));
    // a big-integer-sized value: R_3(4;2) sums 2^C(j,2) over j < 127
    BigUint r34 = ramsey_upper(3, 4, 2);
    CHECK(r34.bit_size() > 7000);
}

TEST_CASE("ramsey_upper refuses astronomically unmaterializable values") {
    Config cfg;
    cfg.ramsey_loop_cap = 1000;
    CHECK_THROWS_AS(ramsey_upper({3, 4, BigUint(7)}, cfg), NumericFailure);
    Config cfg2;
    cfg2.ramsey_bit_cap = 64;
    CHECK_THROWS_AS(ramsey_upper({3, 4, BigUint(2)}, cfg2), NumericFailure);
}

TEST_CASE("ramsey_upper_leq agrees with full evaluation on small cases") {
    for (int k = 1; k <= 2; ++k)
        for (int m = 2; m <= 4; ++m)
            for (std::uint64_t n = 1; n <= 3; ++n) {
                BigUint full = ramsey_upper(k, m, n);
                for (std::uint64_t bound : {1ULL, 5ULL, 31ULL, 1000ULL}) {
                    CHECK(ramsey_upper_leq(k, m, BigUint(n), BigUint(bound)) ==
                          (full <= BigUint(bound)));
                }
            }
}

TEST_CASE("ramsey_brute: pigeonhole sizes for k=1") {
    for (int m = 2; m <= 4; ++m)
        for (int n = 2; n <= 3; ++n) {
            int forced = n * (m - 1) + 1;
            auto r1 = ramsey_brute(1, m, n, forced);
            CHECK(r1.outcome == BruteResult::Outcome::Forced);
            auto r2 = ramsey_brute(1, m, n, forced - 1);
            CHECK(r2.outcome == BruteResult::Outcome::Counterexample);
        }
}

TEST_CASE("ramsey_brute: R_2(3;2) = 6, pentagon counterexample at 5") {
    auto five = ramsey_brute(2, 3, 2, 5);
    REQUIRE(five.outcome == BruteResult::Outcome::Counterexample);
    // verify the counterexample: no monochromatic triangle
    auto& subs = five.subsets;
    for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b)
            for (int c = b + 1; c < 5; ++c) {
                int cab = -1, cac = -1, cbc = -1;
                for (std::size_t i = 0; i < subs.size(); ++i) {
                    if (subs[i] == std::vector<int>{a, b}) cab = five.coloring[i];
                    if (subs[i] == std::vector<int>{a, c}) cac = five.coloring[i];
                    if (subs[i] == std::vector<int>{b, c}) cbc = five.coloring[i];
                }
                CHECK_FALSE((cab == cac && cac == cbc));
            }

    auto six = ramsey_brute(2, 3, 2, 6);
    CHECK(six.outcome == BruteResult::Outcome::Forced);
    // and the upper bound dominates the true value
    CHECK(ramsey_upper(2, 3, 2) >= BigUint(6));
}

TEST_CASE("ramsey_brute budget is a hard cap") {
    Config cfg;
    cfg.brute_node_budget = 10;
    CHECK_THROWS_AS(ramsey_brute(2, 4, 2, 10, cfg), NumericFailure);
}

TEST_CASE("min_factors_bound: pigeonhole arithmetic and monotonicity") {
    CHECK(min_factors_bound(1, 10) == 4);  // 2^m + 1 <= 10 iff m <= 3
    CHECK(min_factors_bound(1, 2) == 1);   // nothing ruled out
    std::uint64_t prev = 0;
    for (std::uint64_t N : {2ULL, 3ULL, 5ULL, 9ULL, 17ULL, 100ULL, 1000ULL, 1000000ULL}) {
        std::uint64_t m = min_factors_bound(1, N);
        CHECK(m >= prev);
        prev = m;
    }
    CHECK(min_factors_bound(2, 100) >= 1);
    CHECK_THROWS_AS(min_factors_bound(1, 1), InvalidInput);
    // unbounded growth: ruling out arbitrarily many factors as N grows
    CHECK(min_factors_bound(1, 1ULL << 20) == 20);
    CHECK(min_factors_bound(1, 1ULL << 40) == 40);
    CHECK(min_factors_bound(1, 1ULL << 62) == 62);
}

TEST_CASE("color_table: constant tables and support arithmetic") {
    // single Orthant(1) factor, b(s) = 1 for all s, k = 1
    FactorizationData fd;
    fd.cone = ConeDesc::product({ConeDesc::orthant(1)});
    fd.b = Matrix(3, 1, 1.0);
    fd.a = Matrix(3, 1, 0.0);
    fd.primal_labels = {1, 2, 3};
    fd.dual_labels = {{1}, {2}, {3}};
    ColorTable t = color_table({1, 2, 3}, fd, 1);
    REQUIRE(t.colors.size() == 3);
    for (const auto& c : t.colors) CHECK(c == std::vector<long long>{2});

    // Orthant(3) factor, b(s) = e_s, k = 2: every pair support has size 2
    FactorizationData fd2;
    fd2.cone = ConeDesc::product({ConeDesc::orthant(3)});
    fd2.b = Matrix(3, 3);
    for (int s = 0; s < 3; ++s) fd2.b(s, s) = 1.0;
    fd2.a = Matrix(3, 3, 0.0);
    fd2.primal_labels = {1, 2, 3};
    fd2.dual_labels = {{1, 2}, {1, 3}, {2, 3}};
    ColorTable t2 = color_table({1, 2, 3}, fd2, 2);
    for (const auto& c : t2.colors) CHECK(c == std::vector<long long>{3});

    // zero points color as the bottom face, l({0}) = 1
    FactorizationData fd3 = fd;
    fd3.b = Matrix(3, 1, 0.0);
    ColorTable t3 = color_table({1, 2, 3}, fd3, 1);
    for (const auto& c : t3.colors) CHECK(c == std::vector<long long>{1});
}

TEST_CASE("color_table: PSD rank-one points in general position") {
    FactorizationData fd;
    fd.cone = ConeDesc::product({ConeDesc::psd(2)});
    Rng rng(17);
    fd.b = Matrix(3, 4);
    for (int s = 0; s < 3; ++s) {
        Vec v{rng.uniform(0.5, 2.0), rng.uniform(-2.0, -0.5)};
        Vec full = SymMatrix::outer(v).full_vec();
        for (int j = 0; j < 4; ++j) fd.b(s, j) = full[j];
    }
    fd.a = Matrix(3, 4, 0.0);
    fd.primal_labels = {1, 2, 3};
    fd.dual_labels = {{1, 2}, {1, 3}, {2, 3}};
    ColorTable t = color_table({1, 2, 3}, fd, 2);
    for (const auto& c : t.colors) CHECK(c == std::vector<long long>{3});
}

TEST_CASE("color_table is permutation-equivariant") {
    AuditBundle bundle = make_pigeonhole_bundle(99);
    ColorTable t = color_table({1, 2, 3, 4, 5}, bundle.fd, 1);
    // relabeling S reverses the table rows (k = 1: subsets are singletons)
    ColorTable tr = color_table({5, 4, 3, 2, 1}, bundle.fd, 1);
    REQUIRE(t.colors.size() == tr.colors.size());
    // subsets are emitted in sorted label order either way
    CHECK(t.subsets == tr.subsets);
    CHECK(t.colors == tr.colors);
}

TEST_CASE("color_table refuses factors with inexact chain length") {
    FactorizationData fd;
    fd.cone = ConeDesc::product({ConeDesc::exponential()});
    fd.b = Matrix(2, 3, 0.1);
    fd.a = Matrix(2, 3, 0.0);
    fd.primal_labels = {1, 2};
    fd.dual_labels = {{1}, {2}};
    CHECK_THROWS_AS(color_table({1, 2}, fd, 1), InvalidInput);
}

TEST_CASE("audit refutes the pigeonhole bundle with a re-checkable witness") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 17ULL, 99ULL}) {
        AuditBundle bundle = make_pigeonhole_bundle(seed);
        AuditVerdict v = audit(bundle.cert, bundle.fd, 1e-9);
        REQUIRE(v.kind == AuditVerdict::Kind::Refuted);
        REQUIRE(v.witness.has_value());
        const AuditWitness& w = *v.witness;
        CHECK(w.W.size() == 2);
        CHECK(w.T.size() == 1);
        // s is excluded from T
        for (std::int64_t t : w.T) CHECK(t != w.s);
        // independent re-check: the pairing really vanishes
        CHECK(std::fabs(w.recheck_total) <= 1e-12);
        CHECK(std::fabs(w.total - w.recheck_total) <= 1e-12);
    }
}

TEST_CASE("audit refuses factors whose chain length exceeds k+1") {
    AuditBundle bundle = make_pigeonhole_bundle(5);
    // swap the factor cone for PSD(3): l = 4 > k+1 = 2
    FactorizationData fd;
    fd.cone = ConeDesc::product({ConeDesc::psd(3)});
    fd.primal_labels = bundle.fd.primal_labels;
    fd.dual_labels = bundle.fd.dual_labels;
    fd.b = Matrix(5, 9);
    fd.a = Matrix(5, 9);
    CHECK_THROWS_AS(audit(bundle.cert, fd, 1e-9), InvalidInput);
}

TEST_CASE("audit returns consistent when no monochromatic subset exists") {
    // k = 1, two ray factors, |S| = 3 with distinct colors: (1,2), (2,1), (2,2)
    AuditBundle bundle;
    bundle.cert.k = 1;
    bundle.cert.family = CertFamily::Custom;
    bundle.cert.cone = ConeDesc::orthant(3);
    for (int s = 0; s < 3; ++s) {
        Vec e(3, 0.0);
        e[s] = 1.0;
        bundle.cert.rays.push_back({s + 1, e});
        Vec f(3, 1.0);
        f[s] = 0.0;
        bundle.cert.certs.push_back({{s + 1}, f});
    }
    bundle.fd.cone = ConeDesc::product({ConeDesc::orthant(1), ConeDesc::orthant(1)});
    bundle.fd.primal_labels = {1, 2, 3};
    bundle.fd.dual_labels = {{1}, {2}, {3}};
    bundle.fd.b = Matrix(3, 2);
    bundle.fd.a = Matrix(3, 2);
    double bvals[3][2] = {{0.0, 1.0}, {1.0, 0.0}, {1.0, 1.0}};
    for (int s = 0; s < 3; ++s)
        for (int i = 0; i < 2; ++i) {
            bundle.fd.b(s, i) = bvals[s][i];
            bundle.fd.a(s, i) = bvals[s][i] > 0.0 ? 0.0 : 1.0;
        }
    AuditVerdict v = audit(bundle.cert, bundle.fd, 1e-9);
    CHECK(v.kind == AuditVerdict::Kind::Consistent);
    CHECK(v.monochromatic_count == 0);
}

TEST_CASE("audit goes inconclusive when a face rank decision is ambiguous") {
    // k = 2 with one PSD(2) factor (l = 3 <= k+1); one pair-sum has a second
    // eigenvalue inside the tolerance band, so the color is ambiguous
    AuditBundle bundle;
    bundle.cert.k = 2;
    bundle.cert.family = CertFamily::Custom;
    bundle.cert.cone = ConeDesc::orthant(3);
    for (int s = 0; s < 3; ++s) {
        Vec e(3, 0.0);
        e[s] = 1.0;
        bundle.cert.rays.push_back({s + 1, e});
    }
    bundle.cert.certs.push_back({{1, 2}, {0.0, 0.0, 1.0}});
    bundle.cert.certs.push_back({{1, 3}, {0.0, 1.0, 0.0}});
    bundle.cert.certs.push_back({{2, 3}, {1.0, 0.0, 0.0}});

    bundle.fd.cone = ConeDesc::product({ConeDesc::psd(2)});
    bundle.fd.primal_labels = {1, 2, 3};
    bundle.fd.dual_labels = {{1, 2}, {1, 3}, {2, 3}};
    bundle.fd.b = Matrix(3, 4);
    const double eps = 3e-5;  // sum of the two tilted rank-ones has lambda_2 ~ eps^2/2
    Vec v1{1.0, 0.0};
    Vec v2{std::cos(eps), std::sin(eps)};
    Vec v3{0.0, 1.0};
    Vec rows[3] = {SymMatrix::outer(v1).full_vec(), SymMatrix::outer(v2).full_vec(),
                   SymMatrix::outer(v3).full_vec()};
    for (int s = 0; s < 3; ++s)
        for (int j = 0; j < 4; ++j) bundle.fd.b(s, j) = rows[s][j];
    bundle.fd.a = Matrix(3, 4, 0.0);  // zero duals satisfy the zero premise

    AuditVerdict v = audit(bundle.cert, bundle.fd, 1e-9);
    CHECK(v.kind == AuditVerdict::Kind::Inconclusive);
    CHECK(v.table.ambiguous);
}

TEST_CASE("audit refutes at k = 2: monochromatic triples force the zero") {
    // two ray factors (l = 2 <= k+1 = 3); constant-positive b for factor 1,
    // zero b for factor 2 makes every pair the same color, so any triple is
    // monochromatic and the required-positive pairing collapses
    AuditBundle bundle;
    bundle.cert.k = 2;
    bundle.cert.family = CertFamily::Custom;
    bundle.cert.cone = ConeDesc::orthant(4);
    for (int s = 0; s < 4; ++s) {
        Vec e(4, 0.0);
        e[s] = 1.0;
        bundle.cert.rays.push_back({s + 1, e});
    }
    std::vector<std::vector<std::int64_t>> pairs{{1, 2}, {1, 3}, {1, 4},
                                                 {2, 3}, {2, 4}, {3, 4}};
    for (const auto& W : pairs) {
        Vec f(4, 1.0);
        for (std::int64_t w : W) f[w - 1] = 0.0;
        bundle.cert.certs.push_back({W, f});
    }
    bundle.fd.cone = ConeDesc::product({ConeDesc::orthant(1), ConeDesc::orthant(1)});
    bundle.fd.primal_labels = {1, 2, 3, 4};
    bundle.fd.b = Matrix(4, 2);
    for (int s = 0; s < 4; ++s) {
        bundle.fd.b(s, 0) = 1.0 + 0.1 * s;  // factor 1 positive everywhere
        bundle.fd.b(s, 1) = 0.0;            // factor 2 vanishes everywhere
    }
    bundle.fd.dual_labels = pairs;
    bundle.fd.a = Matrix(6, 2);
    for (int t = 0; t < 6; ++t) {
        bundle.fd.a(t, 0) = 0.0;  // forced by the zero premise
        bundle.fd.a(t, 1) = 1.0;
    }
    AuditVerdict v = audit(bundle.cert, bundle.fd, 1e-9);
    REQUIRE(v.kind == AuditVerdict::Kind::Refuted);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->W.size() == 3);
    CHECK(v.witness->T.size() == 2);
    CHECK(std::fabs(v.witness->recheck_total) <= 1e-12);
}

TEST_CASE("audit rejects bundles violating the zero premise") {
    AuditBundle bundle = make_pigeonhole_bundle(3);
    // make some pairing strictly positive for t in T
    bundle.fd.a(0, 0) = 1.0;
    bundle.fd.b(0, 0) = 1.0;
    CHECK_THROWS_AS(audit(bundle.cert, bundle.fd, 1e-9), InvalidInput);
}

TEST_CASE("audit requires complete tables") {
    AuditBundle bundle = make_pigeonhole_bundle(4);
    bundle.fd.dual_labels.pop_back();
    Matrix a(4, 2);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 2; ++j) a(i, j) = bundle.fd.a(i, j);
    bundle.fd.a = a;
    CHECK_THROWS_AS(audit(bundle.cert, bundle.fd, 1e-9), InvalidInput);
}

TEST_CASE("a genuine certificate + factorization pair is consistent, never falsely refuted") {
    // the orthant in R^3 through three ray factors: a factorization that
    // really exists, with the sign pattern of a genuine 1-neighborly family
    AuditBundle bundle;
    bundle.cert.k = 1;
    bundle.cert.family = CertFamily::Custom;
    bundle.cert.cone = ConeDesc::orthant(3);
    for (int s = 0; s < 3; ++s) {
        Vec e(3, 0.0);
        e[s] = 1.0;
        bundle.cert.rays.push_back({s + 1, e});
        Vec f(3, 1.0);
        f[s] = 0.0;
        bundle.cert.certs.push_back({{s + 1}, f});
    }
    VerifyReport cert_ok = verify_neighborly(bundle.cert, 1e-9);
    REQUIRE(cert_ok.pass);

    bundle.fd.cone = ConeDesc::product(
        {ConeDesc::orthant(1), ConeDesc::orthant(1), ConeDesc::orthant(1)});
    bundle.fd.primal_labels = {1, 2, 3};
    bundle.fd.dual_labels = {{1}, {2}, {3}};
    bundle.fd.b = Matrix(3, 3);
    bundle.fd.a = Matrix(3, 3);
    for (int s = 0; s < 3; ++s)
        for (int i = 0; i < 3; ++i) {
            bundle.fd.b(s, i) = (s == i) ? 1.0 : 0.0;          // b_i(e_s) = delta_is
            bundle.fd.a(s, i) = (s == i) ? 0.0 : 1.0;          // a_i({s}) = (f_s)_i
        }
    AuditVerdict v = audit(bundle.cert, bundle.fd, 1e-9);
    CHECK(v.kind == AuditVerdict::Kind::Consistent);
    CHECK_FALSE(v.witness.has_value());
}

TEST_CASE("no false witnesses across many random pigeonhole instantiations") {
    for (std::uint64_t seed = 100; seed < 130; ++seed) {
        AuditBundle bundle = make_pigeonhole_bundle(seed);
        AuditVerdict v = audit(bundle.cert, bundle.fd, 1e-9);
        REQUIRE(v.kind == AuditVerdict::Kind::Refuted);
        const AuditWitness& w = *v.witness;
        // recompute the claimed-zero pairing from the raw tables
        std::size_t srow = 0, trow = 0;
        for (std::size_t i = 0; i < bundle.fd.primal_labels.size(); ++i)
            if (bundle.fd.primal_labels[i] == w.s) srow = i;
        for (std::size_t i = 0; i < bundle.fd.dual_labels.size(); ++i)
            if (bundle.fd.dual_labels[i] == w.T) trow = i;
        double total = 0.0;
        for (std::size_t j = 0; j < 2; ++j) total += bundle.fd.a(trow, j) * bundle.fd.b(srow, j);
        CHECK(std::fabs(total) <= 1e-12);
        // and s genuinely is not in T, so the certificate required positivity
        CHECK(std::find(w.T.begin(), w.T.end(), w.s) == w.T.end());
    }
}
