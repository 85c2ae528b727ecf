#include "conelift/obstruction.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>

namespace conelift {

// ---- Ramsey upper bounds ------------------------------------------------------------

namespace {

void check_params(int k, int m, const BigUint& n) {
    if (k < 1 || m < 1 || n.is_zero())
        throw InvalidInput("ramsey: parameters must be positive");
}

}  // namespace

BigUint ramsey_upper(const RamseyParams& params, const Config& cfg) {
    const int k = params.k, m = params.m;
    const BigUint& n = params.n;
    check_params(k, m, n);
    if (k > 4) throw InvalidInput("ramsey_upper: uniformity capped at 4");
    if (m <= k) return BigUint(static_cast<std::uint64_t>(m));
    if (n == BigUint(1)) return BigUint(static_cast<std::uint64_t>(m));
    if (k == 1) {
        BigUint r = n * BigUint(static_cast<std::uint64_t>(m - 1));
        r += 1;
        return r;
    }
    BigUint s_big = ramsey_upper({k - 1, m, n}, cfg);
    if (!s_big.fits_u64() || s_big.to_u64() > cfg.ramsey_loop_cap)
        throw NumericFailure(
            "ramsey_upper: bound too large to materialize (summand count beyond loop cap)");
    const std::uint64_t s = s_big.to_u64();
    // sum_{j=0}^{s-1} n^C(j,k-1), maintained incrementally via
    // A_r(j) = n^C(j,r), A_r(j+1) = A_r(j) * A_{r-1}(j)
    std::vector<BigUint> A(static_cast<std::size_t>(k));
    A[0] = n;
    for (int r = 1; r < k; ++r) A[r] = BigUint(1);
    BigUint sum(0);
    for (std::uint64_t j = 0; j < s; ++j) {
        sum += A[k - 1];
        if (sum.bit_size() > cfg.ramsey_bit_cap)
            throw NumericFailure("ramsey_upper: result exceeds the bit-size cap");
        if (j + 1 < s)
            for (int r = k - 1; r >= 1; --r) {
                A[r] = A[r] * A[r - 1];
                if (A[r].bit_size() > cfg.ramsey_bit_cap)
                    throw NumericFailure("ramsey_upper: result exceeds the bit-size cap");
            }
    }
    return sum;
}

BigUint ramsey_upper(int k, int m, std::uint64_t n, const Config& cfg) {
    return ramsey_upper({k, m, BigUint(n)}, cfg);
}

namespace {

// allocation-free capped evaluation: returns the value of R_hat_k(m;n) when
// it is <= cap, and nothing otherwise (any u64 overflow certifies > cap)
std::optional<std::uint64_t> ramsey_upper_u64(int k, int m, std::uint64_t n,
                                              std::uint64_t cap) {
    std::uint64_t v = static_cast<std::uint64_t>(m);
    if (m <= k || n == 1) return v <= cap ? std::optional(v) : std::nullopt;
    if (k == 1) {
        std::uint64_t r;
        if (__builtin_mul_overflow(n, static_cast<std::uint64_t>(m - 1), &r)) return std::nullopt;
        if (__builtin_add_overflow(r, 1ULL, &r)) return std::nullopt;
        return r <= cap ? std::optional(r) : std::nullopt;
    }
    auto s_opt = ramsey_upper_u64(k - 1, m, n, cap);  // R_hat_k >= summand count s
    if (!s_opt) return std::nullopt;
    const std::uint64_t s = *s_opt;
    std::uint64_t A[8];
    A[0] = n;
    for (int r = 1; r < k; ++r) A[r] = 1;
    std::uint64_t sum = 0;
    for (std::uint64_t j = 0; j < s; ++j) {
        if (__builtin_add_overflow(sum, A[k - 1], &sum) || sum > cap) return std::nullopt;
        if (j + 1 < s)
            for (int r = k - 1; r >= 1; --r)
                if (__builtin_mul_overflow(A[r], A[r - 1], &A[r])) {
                    // the next summand alone would exceed any u64 cap
                    return std::nullopt;
                }
    }
    return sum;
}

}  // namespace

bool ramsey_upper_leq(int k, int m, const BigUint& n, const BigUint& bound, const Config& cfg) {
    check_params(k, m, n);
    if (k <= 4 && n.fits_u64() && bound.fits_u64())
        return ramsey_upper_u64(k, m, n.to_u64(), bound.to_u64()).has_value();
    if (m <= k || n == BigUint(1)) return BigUint(static_cast<std::uint64_t>(m)) <= bound;
    if (k == 1) {
        BigUint r = n * BigUint(static_cast<std::uint64_t>(m - 1));
        r += 1;
        return r <= bound;
    }
    // R_hat_k >= s = R_hat_{k-1} (every summand is >= 1), so recurse first
    if (!ramsey_upper_leq(k - 1, m, n, bound, cfg)) return false;
    BigUint s_big = ramsey_upper({k - 1, m, n}, cfg);
    const std::uint64_t s = s_big.to_u64();  // <= bound which the caller keeps desk-scale
    std::vector<BigUint> A(static_cast<std::size_t>(k));
    A[0] = n;
    for (int r = 1; r < k; ++r) A[r] = BigUint(1);
    BigUint sum(0);
    for (std::uint64_t j = 0; j < s; ++j) {
        sum += A[k - 1];
        if (sum > bound) return false;
        if (j + 1 < s)
            for (int r = k - 1; r >= 1; --r) {
                A[r] = A[r] * A[r - 1];
                if (A[r] > bound) {
                    // the next summand alone exceeds the bound
                    return false;
                }
            }
    }
    return sum <= bound;
}

std::uint64_t min_factors_bound(int k, std::uint64_t N, const Config& cfg) {
    (void)cfg;
    if (k < 1) throw InvalidInput("min_factors_bound: k must be >= 1");
    if (k > 4) throw InvalidInput("min_factors_bound: uniformity capped at 4");
    if (N < static_cast<std::uint64_t>(k) + 1)
        throw InvalidInput("min_factors_bound: need N >= k + 1");
    const std::uint64_t base = static_cast<std::uint64_t>(k) + 1;
    std::uint64_t m = 1;
    std::uint64_t colors = base;  // (k+1)^m
    while (ramsey_upper_u64(k, k + 1, colors, N).has_value()) {
        ++m;
        // colors beyond u64 implies R_hat > colors*k + 1 > N, so m is final
        if (__builtin_mul_overflow(colors, base, &colors)) break;
        if (m > 1u << 20)
            throw NumericFailure("min_factors_bound: runaway loop");  // unreachable guard
    }
    return m;
}

// ---- brute-force Ramsey oracle --------------------------------------------------------

namespace {

std::vector<std::vector<int>> all_k_subsets(int size, int k) {
    std::vector<std::vector<int>> out;
    if (k > size || k <= 0) return out;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        out.push_back(idx);
        int j = k - 1;
        while (j >= 0 && idx[j] == size - k + j) --j;
        if (j < 0) break;
        ++idx[j];
        for (int l = j + 1; l < k; ++l) idx[l] = idx[l - 1] + 1;
    }
    return out;
}

struct BruteSearcher {
    int k, m, n, size;
    std::uint64_t budget;
    std::vector<std::vector<int>> subsets;
    // for each subset index: the candidate m-sets through it, each stored as
    // the ranks of its k-subsets (flat, stride m-choose-k)
    std::vector<std::vector<int>> supersets;
    std::size_t stride = 0;
    std::vector<int> color;
    std::uint64_t nodes = 0;

    void precompute() {
        std::map<std::vector<int>, int> rank;
        for (std::size_t i = 0; i < subsets.size(); ++i) rank[subsets[i]] = static_cast<int>(i);
        auto w_subs = all_k_subsets(m, k);
        stride = w_subs.size();
        supersets.resize(subsets.size());
        for (std::size_t idx = 0; idx < subsets.size(); ++idx) {
            const std::vector<int>& T = subsets[idx];
            std::vector<int> rest;
            for (int v = 0; v < size; ++v)
                if (!std::binary_search(T.begin(), T.end(), v)) rest.push_back(v);
            for (const auto& ext : all_k_subsets(static_cast<int>(rest.size()), m - k)) {
                std::vector<int> W(T.begin(), T.end());
                for (int e : ext) W.push_back(rest[e]);
                std::sort(W.begin(), W.end());
                std::vector<int> S(k);
                for (const auto& sub : w_subs) {
                    for (int i = 0; i < k; ++i) S[i] = W[sub[i]];
                    supersets[idx].push_back(rank.at(S));
                }
            }
        }
    }

    // does assigning subsets[idx] color c complete a monochromatic m-set?
    bool creates_mono(int idx, int c) const {
        const std::vector<int>& cand = supersets[idx];
        for (std::size_t base = 0; base < cand.size(); base += stride) {
            bool mono = true;
            for (std::size_t i = 0; i < stride; ++i) {
                int r = cand[base + i];
                int col = (r == idx) ? c : color[r];
                if (col != c) {
                    mono = false;
                    break;
                }
            }
            if (mono) return true;
        }
        return false;
    }

    // returns true if a counterexample coloring was completed
    bool dfs(std::size_t idx) {
        if (idx == subsets.size()) return true;
        for (int c = 0; c < n; ++c) {
            if (++nodes > budget)
                throw NumericFailure("ramsey_brute: enumeration budget exceeded (hard cap)");
            if (creates_mono(static_cast<int>(idx), c)) continue;
            color[idx] = c;
            if (dfs(idx + 1)) return true;
            color[idx] = -1;
        }
        return false;
    }
};

}  // namespace

BruteResult ramsey_brute(int k, int m, int n, int size, const Config& cfg) {
    if (k < 1 || m < 1 || n < 1 || size < 1)
        throw InvalidInput("ramsey_brute: parameters must be positive");
    BruteResult res;
    if (m <= k) {
        // every m-subset is vacuously monochromatic
        res.outcome = size >= m ? BruteResult::Outcome::Forced
                                : BruteResult::Outcome::Counterexample;
        return res;
    }
    if (size < m) {
        // no m-subset exists at all: the empty/any coloring is a counterexample
        res.subsets = all_k_subsets(size, k);
        res.coloring.assign(res.subsets.size(), 0);
        res.outcome = BruteResult::Outcome::Counterexample;
        return res;
    }
    BruteSearcher s;
    s.k = k;
    s.m = m;
    s.n = n;
    s.size = size;
    s.budget = cfg.brute_node_budget;
    s.subsets = all_k_subsets(size, k);
    s.precompute();
    s.color.assign(s.subsets.size(), -1);
    bool counterexample = s.dfs(0);
    res.subsets = s.subsets;
    res.nodes_explored = s.nodes;
    if (counterexample) {
        res.outcome = BruteResult::Outcome::Counterexample;
        res.coloring = s.color;
    } else {
        res.outcome = BruteResult::Outcome::Forced;
    }
    return res;
}

// ---- color table ------------------------------------------------------------------------

namespace {

std::vector<std::vector<std::int64_t>> label_subsets(const std::vector<std::int64_t>& labels,
                                                     int k) {
    std::vector<std::vector<std::int64_t>> out;
    auto idx = all_k_subsets(static_cast<int>(labels.size()), k);
    for (const auto& s : idx) {
        std::vector<std::int64_t> w;
        for (int i : s) w.push_back(labels[i]);
        out.push_back(std::move(w));
    }
    return out;
}

}  // namespace

ColorTable color_table(const std::vector<std::int64_t>& S, const FactorizationData& fd, int k,
                       const Config& cfg) {
    auto fs = factor_list(fd.cone);
    auto spans = factor_spans(fd.cone);
    for (const ConeDesc* f : fs) {
        ChainLength cl = chain_length(*f, cfg);
        if (!cl.exact)
            throw InvalidInput("color_table: factor '" + f->kind_name() +
                               "' has no exact chain length (audit requires exact values)");
    }
    std::map<std::int64_t, std::size_t> row_of;
    for (std::size_t r = 0; r < fd.primal_labels.size(); ++r) row_of[fd.primal_labels[r]] = r;
    for (std::int64_t s : S)
        if (!row_of.count(s))
            throw InvalidInput("color_table: missing b table row for a label");

    ColorTable table;
    std::vector<std::int64_t> sorted = S;
    std::sort(sorted.begin(), sorted.end());
    table.subsets = label_subsets(sorted, k);
    for (const auto& T : table.subsets) {
        std::vector<long long> col;
        for (std::size_t fi = 0; fi < fs.size(); ++fi) {
            Vec bsum(spans[fi].second, 0.0);
            for (std::int64_t t : T) {
                Vec row = fd.b.row(row_of[t]);
                for (std::size_t j = 0; j < spans[fi].second; ++j)
                    bsum[j] += row[spans[fi].first + j];
            }
            MinimalFaceResult mf = minimal_face_ex(*fs[fi], bsum, cfg);
            if (mf.ambiguous) {
                table.ambiguous = true;
                table.ambiguous_entries.push_back(table.colors.size());
            }
            col.push_back(face_chain_length(*fs[fi], mf.face, cfg));
        }
        table.colors.push_back(std::move(col));
    }
    return table;
}

// ---- auditor -----------------------------------------------------------------------------

AuditVerdict audit(const NeighborlinessCertificate& cert, const FactorizationData& fd,
                   double tol, const Config& cfg) {
    const int k = cert.k;
    auto fs = factor_list(fd.cone);
    auto spans = factor_spans(fd.cone);

    // hypothesis gate: every factor must have exact chain length <= k+1
    for (const ConeDesc* f : fs) {
        ChainLength cl = chain_length(*f, cfg);
        if (!cl.exact)
            throw InvalidInput("audit: factor '" + f->kind_name() +
                               "' chain length is only bounded, not exact (refused)");
        if (cl.value > k + 1)
            throw InvalidInput("audit: factor chain length " + std::to_string(cl.value) +
                               " exceeds k+1 = " + std::to_string(k + 1));
    }

    std::vector<std::int64_t> V;
    for (const auto& r : cert.rays) V.push_back(r.label);
    std::sort(V.begin(), V.end());

    // table coverage
    std::map<std::int64_t, std::size_t> brow;
    for (std::size_t r = 0; r < fd.primal_labels.size(); ++r) brow[fd.primal_labels[r]] = r;
    std::map<std::vector<std::int64_t>, std::size_t> arow;
    for (std::size_t r = 0; r < fd.dual_labels.size(); ++r) {
        std::vector<std::int64_t> t = fd.dual_labels[r];
        std::sort(t.begin(), t.end());
        arow[t] = r;
    }
    for (std::int64_t s : V)
        if (!brow.count(s)) throw InvalidInput("audit: incomplete b table");
    std::vector<std::vector<std::int64_t>> all_T = label_subsets(V, k);
    for (const auto& T : all_T)
        if (!arow.count(T)) throw InvalidInput("audit: incomplete a table");

    validate_factorization(fd, std::max(tol, 1e-7), cfg);

    // (1) zero-pattern premise: per-factor pairings vanish for t in T
    auto block_dot = [&](const Vec& u, const Vec& v, std::size_t fi) {
        double s = 0.0;
        for (std::size_t j = 0; j < spans[fi].second; ++j)
            s += u[spans[fi].first + j] * v[spans[fi].first + j];
        return s;
    };
    for (const auto& T : all_T) {
        Vec aT = fd.a.row(arow[T]);
        for (std::int64_t t : T) {
            Vec bt = fd.b.row(brow[t]);
            for (std::size_t fi = 0; fi < fs.size(); ++fi) {
                double v = block_dot(aT, bt, fi);
                double sc = std::max(1.0, norm2(aT) * norm2(bt));
                if (std::fabs(v) > tol * sc)
                    throw InvalidInput("audit: zero premise violated at factor " +
                                       std::to_string(fi) + " (value " + std::to_string(v) +
                                       ")");
            }
        }
    }

    AuditVerdict verdict;
    verdict.table = color_table(V, fd, k, cfg);
    if (verdict.table.ambiguous) {
        verdict.kind = AuditVerdict::Kind::Inconclusive;
        verdict.note = "face rank decisions fell inside the tolerance band";
        return verdict;
    }

    // (3) direct monochromatic search over (k+1)-subsets
    std::map<std::vector<std::int64_t>, std::size_t> trow;
    for (std::size_t i = 0; i < verdict.table.subsets.size(); ++i)
        trow[verdict.table.subsets[i]] = i;
    std::vector<std::vector<std::int64_t>> all_W = label_subsets(V, k + 1);
    bool any_face_check_failed = false;
    for (const auto& W : all_W) {
        // colors of all k-subsets of W
        std::vector<std::vector<std::int64_t>> Ts = label_subsets(W, k);
        bool mono = true;
        const std::vector<long long>& c0 = verdict.table.colors[trow[Ts[0]]];
        for (const auto& T : Ts)
            if (verdict.table.colors[trow[T]] != c0) {
                mono = false;
                break;
            }
        if (!mono) continue;
        ++verdict.monochromatic_count;

        // (4) face-equality claim F(b_{T,i}) = F(b_{W,i}) for every T and factor
        bool faces_ok = true;
        for (std::size_t fi = 0; fi < fs.size() && faces_ok; ++fi) {
            Vec bW(spans[fi].second, 0.0);
            for (std::int64_t w : W) {
                Vec row = fd.b.row(brow[w]);
                for (std::size_t j = 0; j < spans[fi].second; ++j)
                    bW[j] += row[spans[fi].first + j];
            }
            FaceDesc FW = minimal_face(*fs[fi], bW, cfg);
            for (const auto& T : Ts) {
                Vec bT(spans[fi].second, 0.0);
                for (std::int64_t t : T) {
                    Vec row = fd.b.row(brow[t]);
                    for (std::size_t j = 0; j < spans[fi].second; ++j)
                        bT[j] += row[spans[fi].first + j];
                }
                FaceDesc FT = minimal_face(*fs[fi], bT, cfg);
                if (!face_eq(*fs[fi], FT, FW, cfg)) {
                    faces_ok = false;
                    break;
                }
            }
        }
        if (!faces_ok) {
            any_face_check_failed = true;
            continue;
        }

        // forced zero: for each s in W the pairing with T = W \ {s} must
        // vanish, contradicting the required-positive entry
        for (std::int64_t s : W) {
            std::vector<std::int64_t> T;
            for (std::int64_t w : W)
                if (w != s) T.push_back(w);
            Vec aT = fd.a.row(arow[T]);
            Vec bs = fd.b.row(brow[s]);
            double total = 0.0;
            Vec per(fs.size());
            for (std::size_t fi = 0; fi < fs.size(); ++fi) {
                per[fi] = block_dot(aT, bs, fi);
                total += per[fi];
            }
            double sc = std::max(1.0, norm2(aT) * norm2(bs));
            if (total <= tol * sc) {
                AuditWitness w;
                w.W = W;
                w.s = s;
                w.T = T;
                w.per_factor = per;
                w.total = total;
                // independent re-check by direct elementwise evaluation
                double re = 0.0;
                for (std::size_t j = 0; j < aT.size(); ++j) re += aT[j] * bs[j];
                w.recheck_total = re;
                if (std::fabs(re) <= tol * sc) {
                    verdict.kind = AuditVerdict::Kind::Refuted;
                    verdict.witness = w;
                    verdict.note = "required-positive pairing vanishes although s is not in T";
                    return verdict;
                }
            }
        }
    }

    if (verdict.monochromatic_count > 0) {
        verdict.kind = AuditVerdict::Kind::Inconclusive;
        verdict.note = any_face_check_failed
                           ? "monochromatic subsets found but face equality did not verify"
                           : "monochromatic subsets found but no forced zero materialized";
        return verdict;
    }
    verdict.kind = AuditVerdict::Kind::Consistent;
    verdict.note = "no monochromatic subset of size k+1";
    return verdict;
}

AuditBundle make_pigeonhole_bundle(std::uint64_t seed) {
    AuditBundle bundle;
    const int S = 5;
    Rng rng(seed);

    // certificate: the orthant in R^5 is 1-neighborly w.r.t. its extreme rays
    bundle.cert.k = 1;
    bundle.cert.family = CertFamily::Custom;
    bundle.cert.cone = ConeDesc::orthant(S);
    for (int s = 0; s < S; ++s) {
        Vec e(S, 0.0);
        e[s] = 1.0;
        bundle.cert.rays.push_back({s + 1, e});
        Vec f(S, 1.0);
        f[s] = 0.0;
        bundle.cert.certs.push_back({{s + 1}, f});
    }

    // factorization tables through two ray factors, zero premise by design:
    // b_i(s) > 0 forces a_i({s}) = 0 and vice versa
    bundle.fd.cone = ConeDesc::product({ConeDesc::orthant(1), ConeDesc::orthant(1)});
    bundle.fd.b = Matrix(S, 2);
    bundle.fd.a = Matrix(S, 2);
    for (int s = 0; s < S; ++s) {
        bundle.fd.primal_labels.push_back(s + 1);
        bundle.fd.dual_labels.push_back({s + 1});
        for (int i = 0; i < 2; ++i) {
            bool b_positive = rng.uniform() < 0.5;
            double bv = b_positive ? 0.25 + rng.uniform() : 0.0;
            double av = b_positive ? 0.0 : 0.25 + rng.uniform();
            bundle.fd.b(s, i) = bv;
            bundle.fd.a(s, i) = av;
        }
    }
    return bundle;
}

}  // namespace conelift
