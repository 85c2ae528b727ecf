#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "conelift/lifts.hpp"
#include "test_util.hpp"

using namespace conelift;
using test_util::random_psd;

namespace {

Matrix basis_from_cols(std::size_t dim, const std::vector<Vec>& cols) {
    Matrix B(dim, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < dim; ++i) B(i, j) = cols[j][i];
    return orthonormalize_columns(B);
}

// random diagonally dominant symmetric matrix (hence SDD)
SymMatrix random_dd(Rng& rng, int k) {
    SymMatrix X(k);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) X.set(i, j, rng.uniform(-1.0, 1.0));
    for (int i = 0; i < k; ++i) {
        double rowsum = 0.0;
        for (int j = 0; j < k; ++j)
            if (j != i) rowsum += std::fabs(X(i, j));
        X.set(i, i, rowsum + rng.uniform(0.0, 1.0));
    }
    return X;
}

// dual sample for the SDD cone: all 2x2 principal submatrices PSD
SymMatrix random_sdd_dual(Rng& rng, int k) {
    SymMatrix Y(k);
    for (int i = 0; i < k; ++i) Y.set(i, i, rng.uniform(0.5, 2.0));
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            double cap = std::sqrt(Y(i, i) * Y(j, j));
            Y.set(i, j, rng.uniform(-0.9, 0.9) * cap);
        }
    return Y;
}

}  // namespace

TEST_CASE("check_proper verifies or rejects supplied witnesses") {
    LiftDesc lift;
    lift.K = ConeDesc::orthant(2);
    lift.pi = Matrix::identity(2);
    lift.L = basis_from_cols(2, {{1.0, 1.0}});
    lift.witness = Vec{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
    auto res = check_proper(lift);
    CHECK(res.status == ProperCheckResult::Status::VerifiedWitness);

    lift.witness = Vec{1.0, 0.0};  // not in span(L)
    CHECK_THROWS_AS(check_proper(lift), InvalidInput);
}

TEST_CASE("check_proper finds exact witnesses for orthant factors") {
    LiftDesc lift;
    lift.K = ConeDesc::orthant(2);
    lift.pi = Matrix::identity(2);
    lift.L = basis_from_cols(2, {{1.0, 1.0}});
    auto res = check_proper(lift);
    REQUIRE(res.status == ProperCheckResult::Status::FoundWitness);
    CHECK(res.exact_search);
    CHECK(relint_member(lift.K, res.witness, 1e-9));

    LiftDesc empty = lift;
    empty.L = basis_from_cols(2, {{1.0, -1.0}});
    auto res2 = check_proper(empty);
    CHECK(res2.status == ProperCheckResult::Status::NotFound);
    CHECK(res2.exact_search);  // proven empty
}

TEST_CASE("check_proper exact search through polyhedral factors") {
    Matrix A(4, 3);
    A(0, 0) = -1;
    A(0, 2) = 1;
    A(1, 0) = 1;
    A(1, 2) = 1;
    A(2, 1) = -1;
    A(2, 2) = 1;
    A(3, 1) = 1;
    A(3, 2) = 1;
    LiftDesc lift;
    lift.K = ConeDesc::product({ConeDesc::polyhedral(A)});
    lift.pi = Matrix::identity(3);
    lift.L = basis_from_cols(3, {{0.0, 0.0, 1.0}});  // central axis
    auto res = check_proper(lift);
    REQUIRE(res.status == ProperCheckResult::Status::FoundWitness);
    CHECK(res.exact_search);
    CHECK(relint_member(lift.K, res.witness, 1e-9));

    LiftDesc facet = lift;
    facet.L = basis_from_cols(3, {{1.0, 0.0, 1.0}});  // inside a facet only
    auto res2 = check_proper(facet);
    CHECK(res2.status == ProperCheckResult::Status::NotFound);
    CHECK(res2.exact_search);  // certified: L misses the relative interior
}

TEST_CASE("check_proper heuristic search handles PSD factors") {
    // L = span of vec(I_2): meets relint of PSD(2)
    LiftDesc lift;
    lift.K = ConeDesc::psd(2);
    lift.pi = Matrix::identity(4);
    lift.L = basis_from_cols(4, {SymMatrix::identity(2).full_vec()});
    auto res = check_proper(lift);
    REQUIRE(res.status == ProperCheckResult::Status::FoundWitness);
    CHECK(relint_member(lift.K, res.witness, 1e-9));

    // L = span of vec(e1 e1^T): only meets the boundary
    LiftDesc pinned = lift;
    pinned.L = basis_from_cols(4, {SymMatrix::outer({1.0, 0.0}).full_vec()});
    auto res2 = check_proper(pinned);
    CHECK(res2.status == ProperCheckResult::Status::NotFound);
    CHECK_FALSE(res2.exact_search);  // inconclusive, documented
}

TEST_CASE("properize: identity when L already meets the relative interior") {
    LiftDesc lift;
    lift.K = ConeDesc::product({ConeDesc::orthant(2)});
    lift.pi = Matrix::identity(2);
    lift.L = basis_from_cols(2, {{1.0, 1.0}});
    auto res = properize(lift, {});
    CHECK_FALSE(res.degenerate);
    REQUIRE(res.faces.size() == 1);
    CHECK(res.faces[0].support == std::vector<int>{0, 1});
    CHECK(res.face_chain_lengths == std::vector<long long>{3});
    CHECK(res.lift.K.factors[0].n == 2);
    CHECK(res.lift.witness.has_value());
}

TEST_CASE("properize restricts a pinned orthant coordinate away") {
    LiftDesc lift;
    lift.K = ConeDesc::product({ConeDesc::orthant(3)});
    lift.pi = Matrix::identity(3);
    lift.L = basis_from_cols(3, {{1.0, 1.0, 0.0}});
    auto res = properize(lift, {});
    CHECK_FALSE(res.degenerate);
    REQUIRE(res.faces.size() == 1);
    CHECK(res.faces[0].support == std::vector<int>{0, 1});
    // restricted cone is Orthant(2); the new lift is proper
    CHECK(res.lift.K.factors[0].kind == ConeKind::Orthant);
    CHECK(res.lift.K.factors[0].n == 2);
    REQUIRE(res.lift.witness.has_value());
    CHECK(relint_member(res.lift.K, *res.lift.witness, 1e-9));
    // pi' maps reduced coordinates through the embedding
    CHECK(res.lift.pi.cols() == 2);
}

TEST_CASE("properize pins a PSD block to a rank-one face") {
    // K = PSD(2) x Orthant(1); L spanned by (vec(e1 e1^T), 1)
    LiftDesc lift;
    lift.K = ConeDesc::product({ConeDesc::psd(2), ConeDesc::orthant(1)});
    Vec gen = SymMatrix::outer({1.0, 0.0}).full_vec();
    gen.push_back(1.0);
    lift.pi = Matrix(1, 5);
    lift.pi(0, 4) = 1.0;
    lift.L = basis_from_cols(5, {gen});
    auto res = properize(lift, {gen});
    CHECK_FALSE(res.degenerate);
    REQUIRE(res.faces.size() == 2);
    CHECK(res.faces[0].kind == FaceKind::PsdBasis);
    CHECK(res.faces[0].basis.cols() == 1);
    CHECK(res.faces[1].support == std::vector<int>{0});
    CHECK(res.face_chain_lengths == std::vector<long long>{2, 2});
    REQUIRE(res.lift.witness.has_value());
    CHECK(relint_member(res.lift.K, *res.lift.witness, 1e-9));
}

TEST_CASE("properize: no nonzero intersection gives the degenerate lift") {
    LiftDesc lift;
    lift.K = ConeDesc::product({ConeDesc::orthant(2)});
    lift.pi = Matrix::identity(2);
    lift.L = basis_from_cols(2, {{1.0, -1.0}});
    auto res = properize(lift, {});
    CHECK(res.degenerate);
}

TEST_CASE("validate_lift: trivial self-lift and corrupted projection") {
    ConeDesc K = ConeDesc::orthant(3);
    LiftDesc lift;
    lift.K = K;
    lift.pi = Matrix::identity(3);
    lift.L = Matrix::identity(3);
    Rng rng(4);
    std::vector<PrimalSample> primal;
    for (int t = 0; t < 10; ++t) {
        Vec x = test_util::random_vec(rng, 3, 0.0, 2.0);
        primal.push_back({x, x});
    }
    std::vector<Vec> duals;
    for (int t = 0; t < 5; ++t) duals.push_back(test_util::random_vec(rng, 3, 0.0, 1.0));
    auto rep = validate_lift(lift, primal, duals, 1e-8);
    CHECK(rep.primal_ok);
    CHECK(rep.dual_ok);

    LiftDesc bad = lift;
    bad.pi(0, 0) = 2.0;  // corrupt
    auto rep2 = validate_lift(bad, primal, duals, 1e-8);
    CHECK_FALSE(rep2.primal_ok);
    CHECK(rep2.max_primal_residual > 1e-3);
}

TEST_CASE("factorize: self-lift returns the identity tables") {
    ConeDesc K = ConeDesc::orthant(3);
    LiftDesc lift;
    lift.K = K;
    lift.pi = Matrix::identity(3);
    lift.L = Matrix::identity(3);
    lift.witness = Vec{1.0, 1.0, 1.0};
    Rng rng(5);
    std::vector<PrimalSample> primal;
    for (int t = 0; t < 6; ++t) {
        Vec x = test_util::random_vec(rng, 3, 0.0, 2.0);
        primal.push_back({x, x});
    }
    std::vector<Vec> duals;
    for (int t = 0; t < 6; ++t) duals.push_back(test_util::random_vec(rng, 3, 0.0, 1.0));
    auto out = factorize(lift, primal, duals, 1e-9);
    CHECK(out.max_identity_residual <= 1e-10);
    // a(y) = y for the self lift
    for (std::size_t t = 0; t < duals.size(); ++t)
        for (int j = 0; j < 3; ++j) CHECK(out.data.a(t, j) == doctest::Approx(duals[t][j]));
}

TEST_CASE("factorize: permuted orthant lift reaches 1e-10") {
    // pi permutes coordinates, L = R^3
    Matrix P(3, 3);
    P(0, 2) = 1.0;
    P(1, 0) = 1.0;
    P(2, 1) = 1.0;
    LiftDesc lift;
    lift.K = ConeDesc::orthant(3);
    lift.pi = P;
    lift.L = Matrix::identity(3);
    lift.witness = Vec{1.0, 1.0, 1.0};
    Rng rng(6);
    std::vector<PrimalSample> primal;
    for (int t = 0; t < 8; ++t) {
        Vec z = test_util::random_vec(rng, 3, 0.1, 2.0);
        primal.push_back({P.apply(z), z});
    }
    std::vector<Vec> duals;
    for (int t = 0; t < 8; ++t) duals.push_back(test_util::random_vec(rng, 3, 0.0, 1.0));
    auto out = factorize(lift, primal, duals, 1e-9);
    CHECK(out.max_identity_residual <= 1e-10);
}

TEST_CASE("sdd_decompose: diagonal, 2x2, and diagonally dominant cases") {
    SymMatrix D(3);
    D.set(0, 0, 1.0);
    D.set(1, 1, 2.0);
    D.set(2, 2, 0.5);
    auto res = sdd_decompose(D);
    REQUIRE(res.ok);
    SymMatrix back = sdd_reassemble(3, res.blocks);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(back(i, j) == doctest::Approx(D(i, j)).epsilon(1e-12));

    SymMatrix two(2);
    two.set(0, 0, 2.0);
    two.set(0, 1, 1.0);
    two.set(1, 1, 2.0);
    auto res2 = sdd_decompose(two);
    REQUIRE(res2.ok);
    REQUIRE(res2.blocks.size() == 1);
    CHECK(res2.blocks[0].a == doctest::Approx(2.0));
    CHECK(res2.blocks[0].b == doctest::Approx(1.0));

    Rng rng(7);
    for (int t = 0; t < 20; ++t) {
        SymMatrix X = random_dd(rng, 3);
        auto r = sdd_decompose(X);
        REQUIRE(r.ok);
        SymMatrix re = sdd_reassemble(3, r.blocks);
        double err = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) err = std::max(err, std::fabs(re(i, j) - X(i, j)));
        CHECK(err <= 1e-12);
    }
}

TEST_CASE("sdd_decompose reports the failing block") {
    SymMatrix X(2);
    X.set(0, 0, 1.0);
    X.set(0, 1, 5.0);
    X.set(1, 1, 1.0);  // det < 0, not SDD
    auto res = sdd_decompose(X);
    CHECK_FALSE(res.ok);
    CHECK(res.reason.find("splitting failed") != std::string::npos);
}

TEST_CASE("sdd demo lift: witness, validation, factorization") {
    const int k = 3;
    LiftDesc lift = sdd_demo_lift(k);
    REQUIRE(lift.witness.has_value());
    CHECK_NOTHROW(validate_lift_desc(lift));
    auto pc = check_proper(lift);
    CHECK(pc.status == ProperCheckResult::Status::VerifiedWitness);

    Rng rng(8);
    std::vector<PrimalSample> primal;
    for (int t = 0; t < 10; ++t) {
        SymMatrix X = random_dd(rng, k);
        auto dec = sdd_decompose(X);
        REQUIRE(dec.ok);
        primal.push_back({X.full_vec(), sdd_preimage(k, dec.blocks)});
    }
    std::vector<Vec> duals;
    for (int t = 0; t < 10; ++t) duals.push_back(random_sdd_dual(rng, k).full_vec());

    auto rep = validate_lift(lift, primal, duals, 1e-7);
    CHECK(rep.primal_ok);
    CHECK(rep.dual_ok);

    auto out = factorize(lift, primal, duals, 1e-8);
    CHECK(out.max_identity_residual <= 1e-7);
}

TEST_CASE("factorize zero pattern: orthogonal pairs vanish factor by factor") {
    const int k = 3;
    LiftDesc lift = sdd_demo_lift(k);
    // X supported on the (0,1) block with a rank-one 2x2 piece vv^T
    Vec v{1.0, 2.0};
    SymMatrix X(k);
    X.set(0, 0, v[0] * v[0]);
    X.set(0, 1, v[0] * v[1]);
    X.set(1, 1, v[1] * v[1]);
    auto dec = sdd_decompose(X);
    REQUIRE(dec.ok);
    // Y = ww^T on the same block with w orthogonal to v, plus PSD slack elsewhere
    Vec w{2.0, -1.0};
    SymMatrix Y(k);
    Y.set(0, 0, w[0] * w[0]);
    Y.set(0, 1, w[0] * w[1]);
    Y.set(1, 1, w[1] * w[1]);
    Y.set(2, 2, 1.0);
    CHECK(X.inner(Y) == doctest::Approx(0.0));

    std::vector<PrimalSample> primal{{X.full_vec(), sdd_preimage(k, dec.blocks)}};
    std::vector<Vec> duals{Y.full_vec()};
    auto out = factorize(lift, primal, duals, 1e-8);
    // every per-factor summand vanishes when the total does
    auto spans = factor_spans(lift.K);
    Vec b0 = out.data.b.row(0);
    Vec a0 = out.data.a.row(0);
    for (auto [off, dim] : spans) {
        double s = 0.0;
        for (std::size_t j = off; j < off + dim; ++j) s += b0[j] * a0[j];
        CHECK(std::fabs(s) <= 1e-7);
    }
}

TEST_CASE("factor_lift builds the diagonal product lift") {
    MultiPoly f1(2, {{{1, 0}, 1.0}});  // x1
    MultiPoly f2(2, {{{0, 1}, 1.0}});  // x2
    FactorData fd;
    fd.e = {1.0, 1.0};
    fd.factors = {{f1, 1}, {f2, 1}};
    FactorLift fl = factor_lift(fd);
    CHECK(fl.factor_chain_bounds == std::vector<long long>{2, 2});
    CHECK(fl.lift.K.factors.size() == 2);
    CHECK_NOTHROW(validate_lift_desc(fl.lift));
    // membership agreement: x in Lambda(p) iff (x,x) in K and diag constraint
    Rng rng(9);
    MultiPoly p = f1.mul(f2);
    for (int t = 0; t < 20; ++t) {
        Vec x = test_util::random_vec(rng, 2, -1.0, 2.0);
        Vec xx{x[0], x[1], x[0], x[1]};
        CHECK(hyp_member(p, fd.e, x, 1e-9) == member(fl.lift.K, xx, 1e-9));
    }

    // single factor: trivial self lift
    FactorData single;
    single.e = {1.0, 1.0};
    single.factors = {{f1.mul(f2), 1}};
    FactorLift sl = factor_lift(single);
    CHECK(sl.lift.K.kind == ConeKind::Hyperbolicity);
    CHECK(sl.factor_chain_bounds == std::vector<long long>{3});
}

TEST_CASE("factorize through a second-order cone: rotated orthant lift") {
    // pi(x0, x1) = ((x0+x1)/2, (x0-x1)/2) maps SOC(2) onto the orthant
    LiftDesc lift;
    lift.K = ConeDesc::second_order(2);
    lift.pi = Matrix(2, 2);
    lift.pi(0, 0) = 0.5;
    lift.pi(0, 1) = 0.5;
    lift.pi(1, 0) = 0.5;
    lift.pi(1, 1) = -0.5;
    lift.L = Matrix::identity(2);
    lift.witness = Vec{1.0, 0.0};
    Rng rng(13);
    std::vector<PrimalSample> primal;
    for (int t = 0; t < 8; ++t) {
        double a = rng.uniform(0.0, 2.0), b = rng.uniform(0.0, 2.0);
        primal.push_back({{a, b}, {a + b, a - b}});
    }
    std::vector<Vec> duals;
    for (int t = 0; t < 8; ++t) duals.push_back({rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)});
    auto out = factorize(lift, primal, duals, 1e-8);
    CHECK(out.max_identity_residual <= 1e-8);
    // a(y) lies in the dual cone (SOC is self-dual)
    for (std::size_t t = 0; t < duals.size(); ++t)
        CHECK(member(lift.K, out.data.a.row(t), 1e-8));
}

TEST_CASE("factorize reports a tolerance failure for duals outside the dual cone") {
    LiftDesc lift;
    lift.K = ConeDesc::orthant(2);
    lift.pi = Matrix::identity(2);
    lift.L = Matrix::identity(2);
    lift.witness = Vec{1.0, 1.0};
    std::vector<PrimalSample> primal{{{1.0, 1.0}, {1.0, 1.0}}};
    std::vector<Vec> duals{{-1.0, 1.0}};  // not in C* = orthant
    Config cfg;
    cfg.dykstra_iter_cap = 300;
    CHECK_THROWS_AS(factorize(lift, primal, duals, 1e-9, cfg), NumericFailure);
}

TEST_CASE("property: properize never increases per-factor chain lengths") {
    Rng rng(23);
    for (int t = 0; t < 8; ++t) {
        // random one-dimensional L inside Orthant(3) x Orthant(2)
        LiftDesc lift;
        lift.K = ConeDesc::product({ConeDesc::orthant(3), ConeDesc::orthant(2)});
        Vec gen(5, 0.0);
        for (double& v : gen)
            if (rng.uniform() < 0.7) v = rng.uniform(0.1, 1.0);
        if (norm2(gen) < 1e-12) gen[0] = 1.0;
        lift.pi = Matrix::identity(5);
        lift.L = basis_from_cols(5, {gen});
        auto res = properize(lift, {gen});
        std::vector<long long> caps{4, 3};  // l(Orthant(3)), l(Orthant(2))
        REQUIRE(res.face_chain_lengths.size() == 2);
        for (std::size_t i = 0; i < 2; ++i) CHECK(res.face_chain_lengths[i] <= caps[i]);
    }
}

TEST_CASE("factor_lift with mixed degrees: det times trace on 2x2 symmetrics") {
    MultiPoly det2 = det_poly(2);                                   // degree 2
    MultiPoly tr(3, {{{1, 0, 0}, 1.0}, {{0, 0, 1}, 1.0}});          // x00 + x11
    Vec e = sym_to_hyp_coords(SymMatrix::identity(2));
    FactorData fd;
    fd.e = e;
    fd.factors = {{det2, 1}, {tr, 1}};
    FactorLift fl = factor_lift(fd);
    CHECK(fl.factor_chain_bounds == std::vector<long long>{3, 2});
    CHECK_NOTHROW(validate_lift_desc(fl.lift));

    // membership agreement: x in Lambda_+(p,e) iff the diagonal embedding
    // lies in the product cone
    MultiPoly p = det2.mul(tr);
    Rng rng(41);
    for (int t = 0; t < 40; ++t) {
        Vec x = sym_to_hyp_coords(test_util::random_sym(rng, 2, 1.5));
        Vec xx = x;
        xx.insert(xx.end(), x.begin(), x.end());
        CHECK(hyp_member(p, e, x, 1e-8) == member(fl.lift.K, xx, 1e-8));
    }
}

TEST_CASE("properize restricts a polyhedral factor to a facet") {
    // square-based cone {x3 >= |x1|, x3 >= |x2|}; L spans a facet-interior ray
    Matrix A(4, 3);
    A(0, 0) = -1;
    A(0, 2) = 1;
    A(1, 0) = 1;
    A(1, 2) = 1;
    A(2, 1) = -1;
    A(2, 2) = 1;
    A(3, 1) = 1;
    A(3, 2) = 1;
    LiftDesc lift;
    lift.K = ConeDesc::product({ConeDesc::polyhedral(A)});
    lift.pi = Matrix::identity(3);
    lift.L = basis_from_cols(3, {{1.0, 0.0, 1.0}});
    auto res = properize(lift, {{1.0, 0.0, 1.0}});
    CHECK_FALSE(res.degenerate);
    REQUIRE(res.faces.size() == 1);
    CHECK(res.faces[0].kind == FaceKind::PolyActive);
    CHECK(res.faces[0].active == std::vector<int>{0});
    // the facet is a two-dimensional cone: three nonempty faces in a chain
    CHECK(res.face_chain_lengths == std::vector<long long>{3});
    CHECK(res.lift.K.factors[0].kind == ConeKind::Polyhedral);
    REQUIRE(res.lift.witness.has_value());
    CHECK(relint_member(res.lift.K, *res.lift.witness, 1e-9));
}

TEST_CASE("decompose_dual residual trace on an unreachable target") {
    // K* = orthant, L spans everything, so v with negative entries cannot be
    // decomposed as a member of K* plus a vector orthogonal to L
    ConeDesc K = ConeDesc::orthant(2);
    Matrix L = Matrix::identity(2);
    Config cfg;
    cfg.dykstra_iter_cap = 500;
    auto dec = decompose_dual(K, L, {-1.0, 1.0}, cfg);
    CHECK_FALSE(dec.converged);
    CHECK(dec.residual > 1e-3);
}
