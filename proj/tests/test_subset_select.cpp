#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "conelift/cones.hpp"
#include "test_util.hpp"

using namespace conelift;
using test_util::random_psd;

namespace {

Vec sum_points(const ConeDesc& K, const std::vector<Vec>& pts,
               const std::vector<std::size_t>& idx) {
    Vec s(K.ambient_dim(), 0.0);
    for (std::size_t i : idx) s = axpy(1.0, pts[i], s);
    return s;
}

}  // namespace

TEST_CASE("subset_select keeps the interior point alone on the orthant") {
    ConeDesc K = ConeDesc::orthant(3);
    std::vector<Vec> pts{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}};
    auto I = subset_select(K, pts);
    CHECK(I == std::vector<std::size_t>{3});
}

TEST_CASE("subset_select on PSD(2) rank-one points") {
    ConeDesc K = ConeDesc::psd(2);
    std::vector<Vec> pts{SymMatrix::outer({1, 0}).full_vec(), SymMatrix::outer({0, 1}).full_vec(),
                         SymMatrix::outer({1, 1}).full_vec()};
    auto I = subset_select(K, pts);
    CHECK(I.size() <= 2);
    FaceDesc target = minimal_face(K, sum_points(K, pts, {0, 1, 2}));
    CHECK(face_eq(K, minimal_face(K, sum_points(K, pts, I)), target));
}

TEST_CASE("subset_select: single relint point") {
    ConeDesc K = ConeDesc::orthant(2);
    auto I = subset_select(K, {{1.0, 2.0}});
    CHECK(I == std::vector<std::size_t>{0});
}

TEST_CASE("subset_select rejects outside points") {
    ConeDesc K = ConeDesc::orthant(2);
    CHECK_THROWS_AS(subset_select(K, {{1.0, -1.0}}), InvalidInput);
}

TEST_CASE("randomized subset_select: face equality, size bound, brute confirmation") {
    Rng rng(2024);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        bool use_psd = trial % 2 == 0;
        ConeDesc K = use_psd ? ConeDesc::psd(3) : ConeDesc::orthant(6);
        std::size_t n = 2 + rng.below(6);  // up to 7 points
        std::vector<Vec> pts;
        for (std::size_t i = 0; i < n; ++i) {
            if (use_psd) {
                pts.push_back(random_psd(rng, 3, 1 + static_cast<int>(rng.below(2))).full_vec());
            } else {
                Vec x(6, 0.0);
                for (double& v : x)
                    if (rng.uniform() < 0.4) v = rng.uniform(0.2, 2.0);
                pts.push_back(x);
            }
        }
        std::vector<std::size_t> all(n);
        for (std::size_t i = 0; i < n; ++i) all[i] = i;
        FaceDesc target = minimal_face(K, sum_points(K, pts, all));

        auto I = subset_select(K, pts);
        FaceDesc got = minimal_face(K, sum_points(K, pts, I));
        CHECK(face_eq(K, got, target));
        CHECK(static_cast<long long>(I.size()) <= face_chain_length(K, target) - 1);

        // exhaustive oracle: some subset of size |I| achieves the target face,
        // and the greedy result is inclusion-minimal
        for (std::size_t drop : I) {
            std::vector<std::size_t> smaller;
            for (std::size_t i : I)
                if (i != drop) smaller.push_back(i);
            CHECK_FALSE(face_eq(K, minimal_face(K, sum_points(K, pts, smaller)), target));
        }
        ++checked;
    }
    CHECK(checked == 60);
}
