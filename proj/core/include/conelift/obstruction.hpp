#ifndef CONELIFT_OBSTRUCTION_HPP
#define CONELIFT_OBSTRUCTION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conelift/bigint.hpp"
#include "conelift/config.hpp"
#include "conelift/lifts.hpp"
#include "conelift/neighborly.hpp"

namespace conelift {

struct RamseyParams {
    int k = 1;  // uniformity
    int m = 1;  // target monochromatic set size
    BigUint n;  // color count
};

/// Upper bound on the hypergraph Ramsey number R_k(m;n). Base case
/// R_1(m;n) = n(m-1)+1 is the exact pigeonhole value; higher uniformities
/// use the pre-homogeneous-sequence recursion
///   R_k(m;n) <= sum_{j=0}^{s-1} n^C(j,k-1),  s = R_{k-1}(m;n)
/// (documented and brute-force-validated; see docs/ramsey.md). Throws
/// NumericFailure when the result would exceed the configured loop or
/// bit-size caps (the true values are astronomically large for k >= 4).
BigUint ramsey_upper(const RamseyParams& params, const Config& cfg = default_config());
BigUint ramsey_upper(int k, int m, std::uint64_t n, const Config& cfg = default_config());

/// Early-abort comparison R_hat_k(m;n) <= bound without materializing the
/// full value when it is larger.
bool ramsey_upper_leq(int k, int m, const BigUint& n, const BigUint& bound,
                      const Config& cfg = default_config());

struct BruteResult {
    enum class Outcome { Forced, Counterexample };
    Outcome outcome = Outcome::Forced;
    std::vector<std::vector<int>> subsets;  // k-subsets of [size], lex order
    std::vector<int> coloring;              // counterexample colors (empty when forced)
    std::uint64_t nodes_explored = 0;
};

/// Exhaustive check whether every n-coloring of the k-subsets of [size]
/// forces a monochromatic m-set, by pruned DFS over colorings. The
/// exploration budget (cfg.brute_node_budget colorings, default 2^25) is a
/// hard cap; exceeding it throws NumericFailure (explicit refusal).
BruteResult ramsey_brute(int k, int m, int n, int size, const Config& cfg = default_config());

/// Smallest factor count not ruled out: 1 + max{m >= 0 :
/// R_hat_k(k+1;(k+1)^m) <= N}. Any product lift K_1 x ... x K_m of a cone
/// k-neighborly w.r.t. N points with all l(K_i) <= k+1 needs at least this
/// many factors (conservative, since R_hat >= R).
std::uint64_t min_factors_bound(int k, std::uint64_t N, const Config& cfg = default_config());

// ---- color tables and the auditor -------------------------------------------------

struct ColorTable {
    std::vector<std::vector<std::int64_t>> subsets;   // the T's, sorted labels, lex order
    std::vector<std::vector<long long>> colors;       // d_{T,i} = l(F(b_{T,i})), l({0}) = 1
    bool ambiguous = false;
    std::vector<std::size_t> ambiguous_entries;
};

/// Builds the color table of the monochromatic-subset argument. Requires
/// every factor to have an exactly computable chain length.
ColorTable color_table(const std::vector<std::int64_t>& S, const FactorizationData& fd, int k,
                       const Config& cfg = default_config());

struct AuditWitness {
    std::vector<std::int64_t> W;  // monochromatic (k+1)-subset
    std::int64_t s = 0;           // the excluded element, W = T u {s}
    std::vector<std::int64_t> T;
    Vec per_factor;   // <a_i(T), b_i(s)> per factor
    double total = 0.0;
    double recheck_total = 0.0;  // independent re-evaluation
};

struct AuditVerdict {
    enum class Kind { Consistent, Refuted, Inconclusive };
    Kind kind = Kind::Consistent;
    std::optional<AuditWitness> witness;
    std::string note;
    std::size_t monochromatic_count = 0;
    ColorTable table;
};

/// Audits a claimed neighborliness certificate + factorization pair against
/// the monochromatic-subset obstruction: verifies the zero-pattern premise,
/// colors every k-subset by its per-factor face chain lengths, searches for
/// monochromatic (k+1)-subsets directly, and derives the forced zero that
/// contradicts the required-positive pairing. Preconditions (complete
/// tables, exact factor chain lengths <= k+1) throw InvalidInput.
AuditVerdict audit(const NeighborlinessCertificate& cert, const FactorizationData& fd,
                   double tol, const Config& cfg = default_config());

/// Demonstration bundle: k = 1, two ray factors (l = 2), |S| = 5 labels.
/// Tables are randomized per seed but always satisfy the zero premise, so a
/// monochromatic pair is guaranteed by pigeonhole and the audit refutes.
struct AuditBundle {
    NeighborlinessCertificate cert;
    FactorizationData fd;
};
AuditBundle make_pigeonhole_bundle(std::uint64_t seed);

}  // namespace conelift

#endif
