#include "conelift/cones.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "conelift/simplex.hpp"

namespace conelift {

// ---- ConeDesc factories -------------------------------------------------------

ConeDesc ConeDesc::orthant(int n) {
    if (n < 0) throw InvalidInput("orthant: dimension must be >= 0");
    ConeDesc c;
    c.kind = ConeKind::Orthant;
    c.n = n;
    return c;
}

ConeDesc ConeDesc::second_order(int ambient_dim) {
    if (ambient_dim < 2) throw InvalidInput("second_order: ambient dimension must be >= 2");
    ConeDesc c;
    c.kind = ConeKind::SecondOrder;
    c.n = ambient_dim;
    return c;
}

ConeDesc ConeDesc::psd(int k) {
    if (k < 1) throw InvalidInput("psd: order must be >= 1");
    ConeDesc c;
    c.kind = ConeKind::Psd;
    c.n = k;
    return c;
}

ConeDesc ConeDesc::exponential() {
    ConeDesc c;
    c.kind = ConeKind::Exponential;
    c.n = 3;
    return c;
}

ConeDesc ConeDesc::polyhedral(Matrix A, std::optional<Matrix> lineality) {
    if (A.cols() == 0 || A.rows() == 0)
        throw InvalidInput("polyhedral: A must be nonempty with full ambient column count");
    if (!A.finite()) throw InvalidInput("polyhedral: non-finite entries");
    ConeDesc c;
    c.kind = ConeKind::Polyhedral;
    c.n = static_cast<int>(A.cols());
    if (lineality) {
        // cached basis must lie in the kernel of A
        for (std::size_t j = 0; j < lineality->cols(); ++j) {
            Vec v = lineality->col(j);
            Vec Av = A.apply(v);
            if (norm_inf(Av) > 1e-8 * std::max(1.0, norm_inf(v)) * std::max(1.0, A.norm_inf_entry()))
                throw InvalidInput("polyhedral: lineality basis not contained in ker(A)");
        }
    }
    c.A = std::move(A);
    c.lineality = std::move(lineality);
    return c;
}

ConeDesc ConeDesc::hyperbolicity(MultiPoly p, Vec e, int min_extreme_rank) {
    if (!p.is_homogeneous()) throw InvalidInput("hyperbolicity: p must be homogeneous");
    if (static_cast<int>(e.size()) != p.nvars())
        throw InvalidInput("hyperbolicity: direction dimension mismatch");
    if (!(p.eval(e) > 0.0)) throw InvalidInput("hyperbolicity: p(e) <= 0");
    if (min_extreme_rank < 1) throw InvalidInput("hyperbolicity: min_extreme_rank must be >= 1");
    ConeDesc c;
    c.kind = ConeKind::Hyperbolicity;
    c.n = p.nvars();
    c.p = std::move(p);
    c.e = std::move(e);
    c.min_extreme_rank = min_extreme_rank;
    return c;
}

ConeDesc ConeDesc::derivative_psd(int k, int level) {
    if (k < 1) throw InvalidInput("derivative_psd: order must be >= 1");
    if (level < 0 || level > k - 1)
        throw InvalidInput("derivative_psd: level must satisfy 0 <= level <= k-1");
    ConeDesc c;
    c.kind = ConeKind::DerivativePsd;
    c.n = k;
    c.level = level;
    return c;
}

ConeDesc ConeDesc::product(std::vector<ConeDesc> factors) {
    if (factors.empty()) throw InvalidInput("product: factor list must be nonempty");
    ConeDesc c;
    c.kind = ConeKind::Product;
    c.factors = std::move(factors);
    return c;
}

std::size_t ConeDesc::ambient_dim() const {
    switch (kind) {
        case ConeKind::Orthant: return static_cast<std::size_t>(n);
        case ConeKind::SecondOrder: return static_cast<std::size_t>(n);
        case ConeKind::Psd: return static_cast<std::size_t>(n) * n;
        case ConeKind::Exponential: return 3;
        case ConeKind::Polyhedral: return A.cols();
        case ConeKind::Hyperbolicity: return static_cast<std::size_t>(n);
        case ConeKind::DerivativePsd: return static_cast<std::size_t>(n) * n;
        case ConeKind::Product: {
            std::size_t d = 0;
            for (const ConeDesc& f : factors) d += f.ambient_dim();
            return d;
        }
    }
    return 0;
}

std::string ConeDesc::kind_name() const {
    switch (kind) {
        case ConeKind::Orthant: return "orthant";
        case ConeKind::SecondOrder: return "second-order";
        case ConeKind::Psd: return "psd";
        case ConeKind::Exponential: return "exponential";
        case ConeKind::Polyhedral: return "polyhedral";
        case ConeKind::Hyperbolicity: return "hyperbolicity";
        case ConeKind::DerivativePsd: return "derivative-psd";
        case ConeKind::Product: return "product";
    }
    return "?";
}

// ---- shared helpers -------------------------------------------------------------

namespace {

void check_dim(const ConeDesc& K, const Vec& x, const char* what) {
    if (x.size() != K.ambient_dim())
        throw InvalidInput(std::string(what) + ": ambient dimension mismatch for " +
                           K.kind_name());
    require_finite(x, what);
}

std::vector<Vec> split_product(const ConeDesc& K, const Vec& x) {
    std::vector<Vec> parts;
    std::size_t off = 0;
    for (const ConeDesc& f : K.factors) {
        std::size_t d = f.ambient_dim();
        parts.emplace_back(x.begin() + off, x.begin() + off + d);
        off += d;
    }
    return parts;
}

// PSD ambient vectors are full row-major entries; significantly asymmetric
// vectors are simply not members.
std::optional<SymMatrix> try_sym(const Vec& x, int k, double tol) {
    Matrix full(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) full(i, j) = x[static_cast<std::size_t>(i) * k + j];
    double scale = std::max(1.0, full.norm_inf_entry());
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (std::fabs(full(i, j) - full(j, i)) > tol * scale) return std::nullopt;
    return SymMatrix::from_full(full, 1.0);  // symmetrized
}

double soc_tail_norm(const Vec& x) {
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) s += x[i] * x[i];
    return std::sqrt(s);
}

// exponential cone, coordinates (x, t, y): cl{ y e^{x/y} <= t, y > 0 }
bool exp_member(const Vec& v, double tol) {
    double x = v[0], t = v[1], y = v[2];
    double scale = std::max({1.0, std::fabs(x), std::fabs(t), std::fabs(y)});
    double band = tol * scale;
    if (y > band) {
        if (t <= 0.0) return false;
        // log form avoids overflow: ln y + x/y <= ln t
        return std::log(y) + x / y <= std::log(t + band) + tol;
    }
    if (y >= -band) return x <= band && t >= -band;
    return false;
}

bool exp_relint(const Vec& v, double tol) {
    double x = v[0], t = v[1], y = v[2];
    double scale = std::max({1.0, std::fabs(x), std::fabs(t), std::fabs(y)});
    double band = tol * scale;
    if (y <= band) return false;
    if (t <= band) return false;
    return std::log(y) + x / y < std::log(t) - tol;
}

// dual under <(x,t,y),(u,s,w)> = xu + ts + yw:
// u < 0: s >= -u e^{w/u - 1};   u = 0: s >= 0, w >= 0
bool exp_dual_member(const Vec& v, double tol) {
    double u = v[0], s = v[1], w = v[2];
    double scale = std::max({1.0, std::fabs(u), std::fabs(s), std::fabs(w)});
    double band = tol * scale;
    if (u < -band) {
        double expo = std::log(-u) + w / u - 1.0;  // ln of required lower bound on s
        return expo <= std::log(std::max(s, 0.0) + band) + tol;
    }
    if (u <= band) return s >= -band && w >= -band;
    return false;
}

int family_of(FaceKind k) {
    switch (k) {
        case FaceKind::Empty: return 0;
        case FaceKind::OrthantSupport: return 1;
        case FaceKind::PsdBasis: return 2;
        case FaceKind::SocZero:
        case FaceKind::SocRay:
        case FaceKind::SocFull: return 3;
        case FaceKind::PolyActive: return 4;
        case FaceKind::HypRep: return 5;
        case FaceKind::Tuple: return 6;
    }
    return -1;
}

}  // namespace

// ---- membership -----------------------------------------------------------------

bool member(const ConeDesc& K, const Vec& x, double tol, const Config& cfg) {
    check_dim(K, x, "member");
    switch (K.kind) {
        case ConeKind::Orthant: {
            double band = tol * std::max(1.0, norm_inf(x));
            for (double v : x)
                if (v < -band) return false;
            return true;
        }
        case ConeKind::SecondOrder: {
            double band = tol * std::max(1.0, norm_inf(x));
            return soc_tail_norm(x) <= x[0] + band;
        }
        case ConeKind::Psd: {
            auto S = try_sym(x, K.n, tol);
            if (!S) return false;
            EigResult eig = sym_eig(*S, 1e-12, cfg);
            double band = tol * std::max(1.0, std::fabs(eig.values.front()));
            return eig.values.back() >= -band;
        }
        case ConeKind::Exponential: return exp_member(x, tol);
        case ConeKind::Polyhedral: {
            double nx = std::max(1.0, norm2(x));
            for (std::size_t i = 0; i < K.A.rows(); ++i) {
                Vec row = K.A.row(i);
                double rn = std::max(1e-300, norm2(row));
                if (dot(row, x) < -tol * rn * nx) return false;
            }
            return true;
        }
        case ConeKind::Hyperbolicity: return hyp_member(K.p, K.e, x, tol, cfg);
        case ConeKind::DerivativePsd: {
            auto S = try_sym(x, K.n, tol);
            if (!S) return false;
            return derivative_member(K.n, K.level, *S, tol, cfg);
        }
        case ConeKind::Product: {
            auto parts = split_product(K, x);
            for (std::size_t i = 0; i < parts.size(); ++i)
                if (!member(K.factors[i], parts[i], tol, cfg)) return false;
            return true;
        }
    }
    return false;
}

bool dual_member(const ConeDesc& K, const Vec& y, double tol, const Config& cfg) {
    check_dim(K, y, "dual_member");
    switch (K.kind) {
        case ConeKind::Orthant:
        case ConeKind::SecondOrder:
        case ConeKind::Psd:
            return member(K, y, tol, cfg);  // self-dual families
        case ConeKind::Exponential: return exp_dual_member(y, tol);
        case ConeKind::Polyhedral: {
            if (K.A.rows() > 20)
                throw Unsupported("dual_member: polyhedral dual supported only for <= 20 rows");
            // y in cone(rows of A): minimize l1 residual of A^T lambda = y
            const std::size_t m = K.A.rows(), n = K.A.cols();
            Matrix E(n, m + 2 * n);
            Vec f(n);
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t i = 0; i < m; ++i) E(j, i) = K.A(i, j);
                E(j, m + j) = 1.0;
                E(j, m + n + j) = -1.0;
                f[j] = y[j];
            }
            Vec c(m + 2 * n, 0.0);
            for (std::size_t j = 0; j < 2 * n; ++j) c[m + j] = 1.0;
            LpResult lp = lp_solve(E, f, c, cfg);
            if (lp.status != LpResult::Status::Optimal)
                throw NumericFailure("dual_member: residual LP failed");
            return lp.objective <= tol * std::max(1.0, norm_inf(y)) * 10.0;
        }
        case ConeKind::Hyperbolicity:
            throw Unsupported("dual_member: dual oracle unavailable for hyperbolicity cones");
        case ConeKind::DerivativePsd:
            throw Unsupported("dual_member: dual oracle unavailable for derivative relaxations");
        case ConeKind::Product: {
            auto parts = split_product(K, y);
            for (std::size_t i = 0; i < parts.size(); ++i)
                if (!dual_member(K.factors[i], parts[i], tol, cfg)) return false;
            return true;
        }
    }
    return false;
}

bool relint_member(const ConeDesc& K, const Vec& x, double tol, const Config& cfg) {
    check_dim(K, x, "relint_member");
    switch (K.kind) {
        case ConeKind::Orthant: {
            double band = tol * std::max(1.0, norm_inf(x));
            for (double v : x)
                if (v <= band) return false;
            return true;
        }
        case ConeKind::SecondOrder: {
            double band = tol * std::max(1.0, norm_inf(x));
            return soc_tail_norm(x) < x[0] - band;
        }
        case ConeKind::Psd: {
            auto S = try_sym(x, K.n, tol);
            if (!S) return false;
            EigResult eig = sym_eig(*S, 1e-12, cfg);
            double band = tol * std::max(1.0, std::fabs(eig.values.front()));
            return eig.values.back() > band;
        }
        case ConeKind::Exponential: return exp_relint(x, tol);
        case ConeKind::Polyhedral: {
            if (!member(K, x, tol, cfg)) return false;
            std::vector<int> imp = polyhedral_implicit_rows(K.A, {}, cfg);
            std::set<int> imp_set(imp.begin(), imp.end());
            double nx = std::max(1.0, norm2(x));
            for (std::size_t i = 0; i < K.A.rows(); ++i) {
                if (imp_set.count(static_cast<int>(i))) continue;
                Vec row = K.A.row(i);
                double rn = std::max(1e-300, norm2(row));
                if (dot(row, x) <= tol * rn * nx) return false;
            }
            return true;
        }
        case ConeKind::Hyperbolicity: return hyp_relint(K.p, K.e, x, tol, cfg);
        case ConeKind::DerivativePsd: {
            auto S = try_sym(x, K.n, tol);
            if (!S) return false;
            return derivative_relint(K.n, K.level, *S, tol, cfg);
        }
        case ConeKind::Product: {
            auto parts = split_product(K, x);
            for (std::size_t i = 0; i < parts.size(); ++i)
                if (!relint_member(K.factors[i], parts[i], tol, cfg)) return false;
            return true;
        }
    }
    return false;
}

// ---- minimal faces ----------------------------------------------------------------

MinimalFaceResult minimal_face_ex(const ConeDesc& K, const Vec& x, const Config& cfg) {
    check_dim(K, x, "minimal_face");
    const double tol = cfg.tol;
    if (!member(K, x, tol, cfg)) throw InvalidInput("minimal_face: x is not a member of K");
    MinimalFaceResult res;
    const double amb = cfg.ambiguity_factor;
    switch (K.kind) {
        case ConeKind::Orthant: {
            double band = tol * std::max(1.0, norm_inf(x));
            res.face.kind = FaceKind::OrthantSupport;
            for (int i = 0; i < K.n; ++i) {
                if (x[i] > band) res.face.support.push_back(i);
                double a = std::fabs(x[i]);
                if (a > band / amb && a < band * amb) res.ambiguous = true;
            }
            return res;
        }
        case ConeKind::Psd: {
            auto S = try_sym(x, K.n, tol);
            if (!S) throw InvalidInput("minimal_face: x is not symmetric");
            EigResult eig = sym_eig(*S, 1e-12, cfg);
            double band = tol * std::max(1.0, std::fabs(eig.values.front()));
            int r = 0;
            for (double lam : eig.values) {
                if (lam > band) ++r;
                double a = std::fabs(lam);
                if (a > band / amb && a < band * amb) res.ambiguous = true;
            }
            res.face.kind = FaceKind::PsdBasis;
            res.face.basis = Matrix(K.n, r);
            for (int j = 0; j < r; ++j)
                for (int i = 0; i < K.n; ++i) res.face.basis(i, j) = eig.Q(i, j);
            return res;
        }
        case ConeKind::SecondOrder: {
            double nx = norm2(x);
            double band = tol * std::max(1.0, norm_inf(x));
            if (nx <= band) {
                res.face.kind = FaceKind::SocZero;
                if (nx > band / amb) res.ambiguous = true;
                return res;
            }
            double gap = x[0] - soc_tail_norm(x);
            double relband = tol * std::max(1.0, x[0]);
            if (std::fabs(gap) > relband / amb && std::fabs(gap) < relband * amb)
                res.ambiguous = true;
            if (gap <= relband) {
                res.face.kind = FaceKind::SocRay;
                res.face.ray = scale(1.0 / nx, x);
            } else {
                res.face.kind = FaceKind::SocFull;
            }
            return res;
        }
        case ConeKind::Polyhedral: {
            double nx = std::max(1.0, norm2(x));
            res.face.kind = FaceKind::PolyActive;
            for (std::size_t i = 0; i < K.A.rows(); ++i) {
                Vec row = K.A.row(i);
                double rn = std::max(1e-300, norm2(row));
                double v = dot(row, x) / (rn * nx);
                if (std::fabs(v) <= tol) res.face.active.push_back(static_cast<int>(i));
                if (std::fabs(v) > tol / amb && std::fabs(v) < tol * amb) res.ambiguous = true;
            }
            res.face.rep = x;
            return res;
        }
        case ConeKind::Hyperbolicity: {
            HyperbolicSpectrum s = hyp_eigenvalues(K.p, K.e, x, tol, cfg);
            res.face.kind = FaceKind::HypRep;
            res.face.rep = x;
            res.face.hyp_rank = s.rank;
            res.ambiguous = s.rank_ambiguous;
            return res;
        }
        case ConeKind::Product: {
            auto parts = split_product(K, x);
            res.face.kind = FaceKind::Tuple;
            for (std::size_t i = 0; i < parts.size(); ++i) {
                MinimalFaceResult sub = minimal_face_ex(K.factors[i], parts[i], cfg);
                res.ambiguous = res.ambiguous || sub.ambiguous;
                res.face.components.push_back(std::move(sub.face));
            }
            return res;
        }
        case ConeKind::Exponential:
        case ConeKind::DerivativePsd:
            throw Unsupported("minimal_face: face representation unavailable for " +
                              K.kind_name());
    }
    throw Unsupported("minimal_face: unhandled cone kind");
}

FaceDesc minimal_face(const ConeDesc& K, const Vec& x, const Config& cfg) {
    return minimal_face_ex(K, x, cfg).face;
}

Vec face_representative(const ConeDesc& K, const FaceDesc& F, const Config& cfg) {
    switch (F.kind) {
        case FaceKind::Empty:
            throw InvalidInput("face_representative: empty face has no representative");
        case FaceKind::OrthantSupport: {
            Vec r(K.ambient_dim(), 0.0);
            for (int i : F.support) r.at(i) = 1.0;
            return r;
        }
        case FaceKind::PsdBasis: {
            const int k = K.n;
            Matrix UUt(k, k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) {
                    double s = 0.0;
                    for (std::size_t c = 0; c < F.basis.cols(); ++c)
                        s += F.basis(i, c) * F.basis(j, c);
                    UUt(i, j) = s;
                }
            Vec r(static_cast<std::size_t>(k) * k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) r[static_cast<std::size_t>(i) * k + j] = UUt(i, j);
            return r;
        }
        case FaceKind::SocZero: return Vec(K.ambient_dim(), 0.0);
        case FaceKind::SocRay: return F.ray;
        case FaceKind::SocFull: {
            Vec r(K.ambient_dim(), 0.0);
            r[0] = 1.0;
            return r;
        }
        case FaceKind::PolyActive: {
            if (!F.rep.empty()) return F.rep;
            // solve for a relint point: active rows pinned, others strict
            std::vector<Vec> rows;
            Vec rhs;
            std::set<std::size_t> strict;
            std::set<int> act(F.active.begin(), F.active.end());
            for (std::size_t i = 0; i < K.A.rows(); ++i) {
                rows.push_back(K.A.row(i));
                rhs.push_back(0.0);
                if (act.count(static_cast<int>(i))) {
                    rows.push_back(scale(-1.0, K.A.row(i)));
                    rhs.push_back(0.0);
                } else {
                    strict.insert(rows.size() - 1);
                }
            }
            FeasiblePointResult fp = feasible_point(Matrix::from_rows(rows), rhs, strict, cfg);
            if (fp.status != FeasiblePointResult::Status::Feasible)
                throw NumericFailure("face_representative: no relint point found for active set");
            return fp.x;
        }
        case FaceKind::HypRep: return F.rep;
        case FaceKind::Tuple: {
            Vec r;
            for (std::size_t i = 0; i < F.components.size(); ++i) {
                Vec part = face_representative(K.factors.at(i), F.components[i], cfg);
                r.insert(r.end(), part.begin(), part.end());
            }
            return r;
        }
    }
    throw InvalidInput("face_representative: unhandled face kind");
}

FaceDesc face_join(const ConeDesc& K, const FaceDesc& F1, const FaceDesc& F2, const Config& cfg) {
    if (F1.kind == FaceKind::Empty) return F2;
    if (F2.kind == FaceKind::Empty) return F1;
    Vec r1 = face_representative(K, F1, cfg);
    Vec r2 = face_representative(K, F2, cfg);
    return minimal_face(K, axpy(1.0, r1, r2), cfg);
}

bool face_leq(const ConeDesc& K, const FaceDesc& F1, const FaceDesc& F2, const Config& cfg) {
    if (F1.kind == FaceKind::Empty) return true;
    if (F2.kind == FaceKind::Empty) return false;
    if (family_of(F1.kind) != family_of(F2.kind))
        throw InvalidInput("face_leq: mixed face families");
    switch (F1.kind) {
        case FaceKind::OrthantSupport:
            return std::includes(F2.support.begin(), F2.support.end(), F1.support.begin(),
                                 F1.support.end());
        case FaceKind::PsdBasis: {
            if (F1.basis.cols() > F2.basis.cols()) return false;
            for (std::size_t c = 0; c < F1.basis.cols(); ++c) {
                Vec u = F1.basis.col(c);
                Vec proj = project_onto_span(F2.basis, u);
                if (norm2(axpy(-1.0, proj, u)) > cfg.face_tol) return false;
            }
            return true;
        }
        case FaceKind::SocZero: return true;
        case FaceKind::SocRay: {
            if (F2.kind == FaceKind::SocZero) return false;
            if (F2.kind == FaceKind::SocFull) return true;
            return norm2(axpy(-1.0, F2.ray, F1.ray)) <= 10.0 * cfg.face_tol;
        }
        case FaceKind::SocFull: return F2.kind == FaceKind::SocFull;
        case FaceKind::PolyActive: {
            std::set<int> a1(F1.active.begin(), F1.active.end());
            for (int i : F2.active)
                if (!a1.count(i)) return false;
            return true;
        }
        case FaceKind::HypRep: {
            // heuristic: exact only when ranks differ (documented)
            if (F1.hyp_rank > F2.hyp_rank) return false;
            // probe: x in F(y) iff y - eps x stays in the cone for small eps
            const Vec& xx = F1.rep;
            const Vec& yy = F2.rep;
            double ny = std::max(1.0, norm2(yy));
            double nx1 = std::max(1e-12, norm2(xx));
            if (nx1 <= 1e-12) return true;  // zero rep: bottom face
            for (double eps : {1e-4, 1e-6}) {
                Vec probe = axpy(-eps * ny / nx1, xx, yy);
                if (!hyp_member(K.p, K.e, probe, cfg.tol, cfg)) return false;
            }
            return true;
        }
        case FaceKind::Tuple: {
            if (F1.components.size() != F2.components.size())
                throw InvalidInput("face_leq: tuple length mismatch");
            for (std::size_t i = 0; i < F1.components.size(); ++i)
                if (!face_leq(K.factors.at(i), F1.components[i], F2.components[i], cfg))
                    return false;
            return true;
        }
        default: break;
    }
    throw InvalidInput("face_leq: unhandled face kind");
}

bool face_eq(const ConeDesc& K, const FaceDesc& F1, const FaceDesc& F2, const Config& cfg) {
    return face_leq(K, F1, F2, cfg) && face_leq(K, F2, F1, cfg);
}

// ---- polyhedral lattice machinery ----------------------------------------------

std::vector<int> polyhedral_implicit_rows(const Matrix& A, const std::vector<int>& eq,
                                          const Config& cfg) {
    std::set<int> eq_set(eq.begin(), eq.end());
    std::vector<int> implicit;
    for (std::size_t i = 0; i < A.rows(); ++i) {
        if (eq_set.count(static_cast<int>(i))) continue;
        // feasible with row i strict?
        std::vector<Vec> rows;
        std::set<std::size_t> strict;
        for (std::size_t r = 0; r < A.rows(); ++r) {
            rows.push_back(A.row(r));
            if (r == i) strict.insert(rows.size() - 1);
            if (eq_set.count(static_cast<int>(r))) {
                rows.push_back(scale(-1.0, A.row(r)));
            }
        }
        FeasiblePointResult fp =
            feasible_point(Matrix::from_rows(rows), Vec(rows.size(), 0.0), strict, cfg);
        if (fp.status != FeasiblePointResult::Status::Feasible)
            implicit.push_back(static_cast<int>(i));
    }
    return implicit;
}

namespace {

std::vector<int> canonical_active(const Matrix& A, std::vector<int> eq, const Config& cfg) {
    std::vector<int> imp = polyhedral_implicit_rows(A, eq, cfg);
    eq.insert(eq.end(), imp.begin(), imp.end());
    std::sort(eq.begin(), eq.end());
    eq.erase(std::unique(eq.begin(), eq.end()), eq.end());
    return eq;
}

using ChainMemo = std::map<std::vector<int>, std::pair<long long, std::vector<std::vector<int>>>>;

// returns (length, maximal chain of canonical active sets, bottom first)
std::pair<long long, std::vector<std::vector<int>>> chain_rec(const Matrix& A,
                                                              const std::vector<int>& canon,
                                                              ChainMemo& memo,
                                                              const Config& cfg) {
    auto it = memo.find(canon);
    if (it != memo.end()) return it->second;
    std::pair<long long, std::vector<std::vector<int>>> best{0, {}};
    if (canon.size() == A.rows()) {
        best = {1, {canon}};
    } else {
        std::set<int> in(canon.begin(), canon.end());
        for (std::size_t i = 0; i < A.rows(); ++i) {
            if (in.count(static_cast<int>(i))) continue;
            std::vector<int> child = canon;
            child.push_back(static_cast<int>(i));
            child = canonical_active(A, child, cfg);
            auto sub = chain_rec(A, child, memo, cfg);
            if (sub.first > best.first) best = sub;
        }
        best.first += 1;
        best.second.push_back(canon);
    }
    memo[canon] = best;
    return best;
}

}  // namespace

std::pair<long long, std::vector<std::vector<int>>> polyhedral_chain(const Matrix& A,
                                                                     const std::vector<int>& eq,
                                                                     const Config& cfg) {
    if (A.cols() > 10)
        throw Unsupported("polyhedral_chain: exact lattice search capped at ambient dim 10");
    if (A.rows() > 20)
        throw Unsupported("polyhedral_chain: exact lattice search capped at 20 rows");
    ChainMemo memo;
    return chain_rec(A, canonical_active(A, eq, cfg), memo, cfg);
}

// ---- chain lengths ---------------------------------------------------------------

ChainLength chain_length(const ConeDesc& K, const Config& cfg) {
    switch (K.kind) {
        case ConeKind::Orthant: return {K.n + 1, true};
        case ConeKind::SecondOrder: return {3, true};
        case ConeKind::Psd: return {K.n + 1, true};
        case ConeKind::Exponential: return {4, false};  // dim-based bound only
        case ConeKind::Polyhedral: return {polyhedral_chain(K.A, {}, cfg).first, true};
        case ConeKind::Hyperbolicity: {
            long long d = K.p.degree();
            long long r = K.min_extreme_rank;
            long long by_rank = (r >= 2) ? d - r + 2 : d + 1;
            long long by_dim = static_cast<long long>(K.p.nvars()) + 1;
            return {std::min(by_rank, by_dim), false};
        }
        case ConeKind::DerivativePsd: {
            // degree of the defining derivative polynomial is k - level;
            // exactness is an open question, so only a bound is reported
            long long by_degree = static_cast<long long>(K.n - K.level) + 1;
            long long by_dim = static_cast<long long>(K.n) * (K.n + 1) / 2 + 1;
            return {std::min(by_degree, by_dim), false};
        }
        case ConeKind::Product: {
            long long total = 1;
            bool exact = true;
            for (const ConeDesc& f : K.factors) {
                ChainLength c = chain_length(f, cfg);
                total += c.value - 1;
                exact = exact && c.exact;
            }
            return {total, exact};
        }
    }
    return {0, false};
}

long long face_chain_length(const ConeDesc& K, const FaceDesc& F, const Config& cfg) {
    switch (F.kind) {
        case FaceKind::Empty:
            throw InvalidInput("face_chain_length: empty face");
        case FaceKind::OrthantSupport: return static_cast<long long>(F.support.size()) + 1;
        case FaceKind::PsdBasis: return static_cast<long long>(F.basis.cols()) + 1;
        case FaceKind::SocZero: return 1;
        case FaceKind::SocRay: return 2;
        case FaceKind::SocFull: return 3;
        case FaceKind::PolyActive: return polyhedral_chain(K.A, F.active, cfg).first;
        case FaceKind::HypRep:
            throw Unsupported("face_chain_length: only bounds available for hyperbolicity faces");
        case FaceKind::Tuple: {
            long long total = 1;
            for (std::size_t i = 0; i < F.components.size(); ++i)
                total += face_chain_length(K.factors.at(i), F.components[i], cfg) - 1;
            return total;
        }
    }
    throw InvalidInput("face_chain_length: unhandled face kind");
}

// ---- chain witnesses ---------------------------------------------------------------

namespace {

std::vector<FaceDesc> witness_full_chain(const ConeDesc& K, const Config& cfg) {
    switch (K.kind) {
        case ConeKind::Orthant: {
            std::vector<FaceDesc> chain;
            for (int sz = 0; sz <= K.n; ++sz) {
                FaceDesc f;
                f.kind = FaceKind::OrthantSupport;
                for (int i = 0; i < sz; ++i) f.support.push_back(i);
                chain.push_back(std::move(f));
            }
            return chain;
        }
        case ConeKind::Psd: {
            std::vector<FaceDesc> chain;
            for (int r = 0; r <= K.n; ++r) {
                FaceDesc f;
                f.kind = FaceKind::PsdBasis;
                f.basis = Matrix(K.n, r);
                for (int j = 0; j < r; ++j) f.basis(j, j) = 1.0;
                chain.push_back(std::move(f));
            }
            return chain;
        }
        case ConeKind::Polyhedral: {
            auto [len, sets] = polyhedral_chain(K.A, {}, cfg);
            (void)len;
            std::vector<FaceDesc> chain;
            for (const auto& act : sets) {
                FaceDesc f;
                f.kind = FaceKind::PolyActive;
                f.active = act;
                f.rep = face_representative(K, f, cfg);
                chain.push_back(std::move(f));
            }
            return chain;
        }
        case ConeKind::Product: {
            std::vector<std::vector<FaceDesc>> per(K.factors.size());
            for (std::size_t i = 0; i < K.factors.size(); ++i)
                per[i] = witness_full_chain(K.factors[i], cfg);
            std::vector<FaceDesc> chain;
            FaceDesc cur;
            cur.kind = FaceKind::Tuple;
            for (const auto& pc : per) cur.components.push_back(pc.front());
            chain.push_back(cur);
            for (std::size_t i = 0; i < per.size(); ++i)
                for (std::size_t s = 1; s < per[i].size(); ++s) {
                    cur.components[i] = per[i][s];
                    chain.push_back(cur);
                }
            return chain;
        }
        default:
            throw Unsupported("chain_witness: supported for orthant, PSD, polyhedral, products");
    }
}

}  // namespace

std::vector<FaceDesc> chain_witness(const ConeDesc& K, long long target, const Config& cfg) {
    ChainLength cl = chain_length(K, cfg);
    if (!cl.exact) throw Unsupported("chain_witness: chain length not exact for this family");
    if (target < 1 || target > cl.value)
        throw InvalidInput("chain_witness: target exceeds exact chain length");
    std::vector<FaceDesc> full = witness_full_chain(K, cfg);
    std::vector<FaceDesc> chain(full.begin(), full.begin() + target);
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        if (!face_leq(K, chain[i], chain[i + 1], cfg) || face_leq(K, chain[i + 1], chain[i], cfg))
            throw NumericFailure("chain_witness: produced chain failed strictness verification");
    }
    return chain;
}

// ---- subset selection ---------------------------------------------------------------

std::vector<std::size_t> subset_select(const ConeDesc& K, const std::vector<Vec>& points,
                                       const Config& cfg) {
    if (points.empty()) throw InvalidInput("subset_select: no points");
    for (const Vec& p : points)
        if (!member(K, p, cfg.tol, cfg))
            throw InvalidInput("subset_select: a point lies outside K");

    auto sum_of = [&](const std::vector<std::size_t>& idx) {
        Vec s(K.ambient_dim(), 0.0);
        for (std::size_t i : idx) s = axpy(1.0, points[i], s);
        return s;
    };

    std::vector<std::size_t> I(points.size());
    for (std::size_t i = 0; i < I.size(); ++i) I[i] = i;
    FaceDesc target = minimal_face(K, sum_of(I), cfg);

    // ascending single-pass greedy removal; once an index becomes
    // non-removable it stays non-removable, so one pass reaches
    // inclusion-minimality
    for (std::size_t idx = 0; idx < points.size(); ++idx) {
        std::vector<std::size_t> trial;
        for (std::size_t i : I)
            if (i != idx) trial.push_back(i);
        if (trial.size() == I.size()) continue;
        FaceDesc f = minimal_face(K, sum_of(trial), cfg);
        if (face_eq(K, f, target, cfg)) I = trial;
    }
    return I;
}

}  // namespace conelift
