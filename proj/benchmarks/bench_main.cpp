#include <benchmark/benchmark.h>

#include "conelift/cones.hpp"
#include "conelift/lifts.hpp"
#include "conelift/neighborly.hpp"
#include "conelift/obstruction.hpp"

using namespace conelift;

namespace {

SymMatrix bench_sym(int n, std::uint64_t seed) {
    Rng rng(seed);
    SymMatrix s(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) s.set(i, j, rng.uniform(-1.0, 1.0));
    return s;
}

}  // namespace

static void BM_SymEig(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    SymMatrix M = bench_sym(n, 42);
    for (auto _ : state) {
        EigResult r = sym_eig(M);
        benchmark::DoNotOptimize(r.values.data());
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_SymEig)->RangeMultiplier(2)->Range(8, 64)->Complexity();

static void BM_RealRoots(benchmark::State& state) {
    // degree-8 polynomial with a double root
    UniPoly q = UniPoly::from_roots({-3, -1, -1, 0, 2, 2, 4, 5});
    for (auto _ : state) {
        RootResult r = real_roots(q, 1e-9);
        benchmark::DoNotOptimize(r.roots.data());
    }
}
BENCHMARK(BM_RealRoots);

static void BM_HypEigDet3(benchmark::State& state) {
    MultiPoly det3 = det_poly(3);
    Vec e = sym_to_hyp_coords(SymMatrix::identity(3));
    Vec x = sym_to_hyp_coords(bench_sym(3, 7));
    for (auto _ : state) {
        HyperbolicSpectrum s = hyp_eigenvalues(det3, e, x, 1e-7);
        benchmark::DoNotOptimize(s.eigenvalues.data());
    }
}
BENCHMARK(BM_HypEigDet3);

static void BM_PolyhedralChain(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    ConeDesc K = ConeDesc::polyhedral(Matrix::identity(n));
    for (auto _ : state) {
        ChainLength c = chain_length(K);
        benchmark::DoNotOptimize(c.value);
    }
}
BENCHMARK(BM_PolyhedralChain)->DenseRange(3, 7);

static void BM_MomentBundleVerify(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    NeighborlinessCertificate cert = make_moment_bundle(2, N);
    for (auto _ : state) {
        VerifyReport rep = verify_neighborly(cert, 1e-9);
        benchmark::DoNotOptimize(rep.pass);
    }
}
BENCHMARK(BM_MomentBundleVerify)->Arg(8)->Arg(12)->Arg(15);

static void BM_RamseyBruteR33(benchmark::State& state) {
    for (auto _ : state) {
        BruteResult r = ramsey_brute(2, 3, 2, 6);
        benchmark::DoNotOptimize(r.outcome);
    }
}
BENCHMARK(BM_RamseyBruteR33);

static void BM_MinFactorsBound(benchmark::State& state) {
    for (auto _ : state) {
        std::uint64_t m = min_factors_bound(1, 1000000);
        benchmark::DoNotOptimize(m);
    }
}
BENCHMARK(BM_MinFactorsBound);

static void BM_AuditPigeonhole(benchmark::State& state) {
    AuditBundle bundle = make_pigeonhole_bundle(3);
    for (auto _ : state) {
        AuditVerdict v = audit(bundle.cert, bundle.fd, 1e-9);
        benchmark::DoNotOptimize(v.kind);
    }
}
BENCHMARK(BM_AuditPigeonhole);

static void BM_SddFactorize(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    LiftDesc lift = sdd_demo_lift(k);
    Rng rng(11);
    std::vector<PrimalSample> primal;
    for (int t = 0; t < 5; ++t) {
        SymMatrix X(k);
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) X.set(i, j, rng.uniform(-1.0, 1.0));
        for (int i = 0; i < k; ++i) {
            double rowsum = 0.0;
            for (int j = 0; j < k; ++j)
                if (j != i) rowsum += std::fabs(X(i, j));
            X.set(i, i, rowsum + 0.5);
        }
        auto dec = sdd_decompose(X);
        primal.push_back({X.full_vec(), sdd_preimage(k, dec.blocks)});
    }
    std::vector<Vec> duals;
    for (int t = 0; t < 5; ++t) {
        SymMatrix Y(k);
        for (int i = 0; i < k; ++i) Y.set(i, i, rng.uniform(0.5, 2.0));
        duals.push_back(Y.full_vec());
    }
    for (auto _ : state) {
        FactorizeOutcome out = factorize(lift, primal, duals, 1e-8);
        benchmark::DoNotOptimize(out.max_identity_residual);
    }
}
BENCHMARK(BM_SddFactorize)->Arg(3)->Arg(4);

BENCHMARK_MAIN();
