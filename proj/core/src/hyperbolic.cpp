#include "conelift/hyperbolic.hpp"

#include <algorithm>
#include <cmath>

namespace conelift {

HyperbolicityCheckResult hyperbolicity_check(const MultiPoly& p, const Vec& e, int samples,
                                             std::uint64_t seed, double tol, const Config& cfg) {
    if (!p.is_homogeneous()) throw InvalidInput("hyperbolicity_check: p must be homogeneous");
    if (!(p.eval(e) > 0.0))
        throw InvalidInput("hyperbolicity_check: p(e) <= 0, not a valid direction");
    HyperbolicityCheckResult res;
    res.seed = seed;
    Rng rng(seed);
    const int n = p.nvars();
    for (int s = 0; s < samples; ++s) {
        Vec x(n);
        for (int i = 0; i < n; ++i) x[i] = rng.normal();
        double nx = norm2(x);
        if (nx < 1e-12) continue;
        for (double& v : x) v /= nx;
        UniPoly q = poly_restrict(p, e, x);
        RootResult rr = real_roots(q, tol, cfg);
        res.worst_residual = std::max(res.worst_residual, rr.reconstruction_residual);
        if (!rr.ok) {
            res.pass = false;
            res.witness = x;
            return res;
        }
    }
    return res;
}

HyperbolicSpectrum hyp_eigenvalues(const MultiPoly& p, const Vec& e, const Vec& x, double tol,
                                   const Config& cfg) {
    UniPoly q = poly_restrict(p, e, x);
    RootResult rr = real_roots(q, tol, cfg);
    if (!rr.ok)
        throw NumericFailure("hyperbolicity violated at x: residual complex part " +
                             std::to_string(rr.reconstruction_residual));
    HyperbolicSpectrum spec;
    spec.eigenvalues = rr.roots;  // ascending already
    double scale = 1.0;
    for (double v : rr.roots) scale = std::max(scale, std::fabs(v));
    double cut = tol * scale;
    for (double v : rr.roots) {
        if (std::fabs(v) > cut) ++spec.rank;
        if (std::fabs(v) > cut / cfg.ambiguity_factor && std::fabs(v) < cut * cfg.ambiguity_factor)
            spec.rank_ambiguous = true;
    }
    return spec;
}

bool hyp_member(const MultiPoly& p, const Vec& e, const Vec& x, double tol, const Config& cfg) {
    HyperbolicSpectrum s = hyp_eigenvalues(p, e, x, tol, cfg);
    if (s.eigenvalues.empty()) return true;
    double scale = 1.0;
    for (double v : s.eigenvalues) scale = std::max(scale, std::fabs(v));
    return s.eigenvalues.front() >= -tol * scale;
}

bool hyp_relint(const MultiPoly& p, const Vec& e, const Vec& x, double tol, const Config& cfg) {
    HyperbolicSpectrum s = hyp_eigenvalues(p, e, x, tol, cfg);
    if (s.eigenvalues.empty()) return true;
    double scale = 1.0;
    for (double v : s.eigenvalues) scale = std::max(scale, std::fabs(v));
    return s.eigenvalues.front() > tol * scale;
}

int hyp_rank(const MultiPoly& p, const Vec& e, const Vec& x, double tol, const Config& cfg) {
    return hyp_eigenvalues(p, e, x, tol, cfg).rank;
}

Vec elementary_minor_sums(const SymMatrix& X, const Config& cfg) {
    if (X.order() > 12) throw InvalidInput("elementary_minor_sums: order above cap of 12");
    EigResult eig = sym_eig(X, 1e-12, cfg);
    // coefficients of prod (1 + lambda_i z); E_l is the z^l coefficient
    Vec c(static_cast<std::size_t>(X.order()) + 1, 0.0);
    c[0] = 1.0;
    std::size_t used = 0;
    for (double lam : eig.values) {
        ++used;
        for (std::size_t j = used; j >= 1; --j) c[j] += lam * c[j - 1];
    }
    return Vec(c.begin() + 1, c.end());  // E_1..E_k
}

bool derivative_member(int k, int level, const SymMatrix& X, double tol, const Config& cfg) {
    if (level < 0 || level > k - 1)
        throw InvalidInput("derivative_member: level must satisfy 0 <= level <= k-1");
    if (X.order() != k) throw InvalidInput("derivative_member: order mismatch");
    Vec E = elementary_minor_sums(X, cfg);
    double scale = std::max(1.0, X.norm_inf_entry());
    double s = 1.0;
    for (int l = 1; l <= k - level; ++l) {
        s *= scale * k;  // crude magnitude of an l x l minor sum
        if (E[l - 1] < -tol * s) return false;
    }
    return true;
}

bool derivative_relint(int k, int level, const SymMatrix& X, double tol, const Config& cfg) {
    if (level < 0 || level > k - 1)
        throw InvalidInput("derivative_relint: level must satisfy 0 <= level <= k-1");
    if (X.order() != k) throw InvalidInput("derivative_relint: order mismatch");
    Vec E = elementary_minor_sums(X, cfg);
    double scale = std::max(1.0, X.norm_inf_entry());
    double s = 1.0;
    for (int l = 1; l <= k - level; ++l) {
        s *= scale * k;
        if (E[l - 1] <= tol * s) return false;
    }
    return true;
}

SymMatrix derivative_face_embed(int k, int level, const SymMatrix& Y) {
    if (Y.order() != k - level)
        throw InvalidInput("derivative_face_embed: Y must have order k - level");
    SymMatrix Z(k);
    for (int i = 0; i < Y.order(); ++i)
        for (int j = i; j < Y.order(); ++j) Z.set(i, j, Y(i, j));
    return Z;
}

MultiPoly factor_product(const FactorData& fd) {
    if (fd.factors.empty()) throw InvalidInput("factor_product: no factors");
    const int n = fd.factors.front().p.nvars();
    MultiPoly prod = MultiPoly::monomial(n, std::vector<int>(n, 0), 1.0);
    for (const auto& f : fd.factors) {
        if (f.mult < 1) throw InvalidInput("factor_product: multiplicity must be >= 1");
        prod = prod.mul(f.p.pow(f.mult));
    }
    return prod;
}

void validate_factor_data(const FactorData& fd, const MultiPoly& p, double rel_tol) {
    if (fd.factors.empty()) throw InvalidInput("FactorData: no factors");
    for (const auto& f : fd.factors) {
        if (f.p.nvars() != p.nvars()) throw InvalidInput("FactorData: variable count mismatch");
        if (!f.p.is_homogeneous()) throw InvalidInput("FactorData: factor not homogeneous");
        if (!(f.p.eval(fd.e) > 0.0)) throw InvalidInput("FactorData: factor has p_i(e) <= 0");
    }
    MultiPoly prod = factor_product(fd);
    double dist = prod.coef_distance(p);
    if (dist > rel_tol)
        throw InvalidInput("FactorData: product identity fails (relative residual " +
                           std::to_string(dist) + ")");
}

MultiPoly det_poly(int k) {
    if (k < 1 || k > 4) throw InvalidInput("det_poly: supported for 1 <= k <= 4");
    const int nvars = k * (k + 1) / 2;
    auto var = [&](int i, int j) {
        if (i > j) std::swap(i, j);
        return i * k - i * (i - 1) / 2 - i + j;
    };
    // expand det = sum over permutations
    std::vector<int> perm(k);
    for (int i = 0; i < k; ++i) perm[i] = i;
    std::vector<MultiPoly::Term> terms;
    do {
        // permutation sign
        int sign = 1;
        std::vector<bool> seen(k, false);
        for (int i = 0; i < k; ++i) {
            if (seen[i]) continue;
            int len = 0, j = i;
            while (!seen[j]) {
                seen[j] = true;
                j = perm[j];
                ++len;
            }
            if (len % 2 == 0) sign = -sign;
        }
        MultiPoly::Term t;
        t.exps.assign(nvars, 0);
        t.coef = sign;
        for (int i = 0; i < k; ++i) t.exps[var(i, perm[i])] += 1;
        terms.push_back(std::move(t));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return MultiPoly(nvars, std::move(terms));
}

Vec sym_to_hyp_coords(const SymMatrix& X) {
    const int k = X.order();
    Vec v;
    v.reserve(SymMatrix::packed_size(k));
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) v.push_back(X(i, j));
    return v;
}

SymMatrix hyp_coords_to_sym(const Vec& coords) {
    // invert n = k(k+1)/2
    int k = static_cast<int>(std::round((std::sqrt(8.0 * coords.size() + 1.0) - 1.0) / 2.0));
    if (SymMatrix::packed_size(k) != coords.size())
        throw InvalidInput("hyp_coords_to_sym: length is not a triangular number");
    SymMatrix X(k);
    std::size_t idx = 0;
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) X.set(i, j, coords[idx++]);
    return X;
}

}  // namespace conelift
