#include "conelift/lifts.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "conelift/simplex.hpp"

namespace conelift {

// ---- structure helpers ------------------------------------------------------------

std::vector<std::pair<std::size_t, std::size_t>> factor_spans(const ConeDesc& K) {
    std::vector<std::pair<std::size_t, std::size_t>> spans;
    if (K.kind == ConeKind::Product) {
        std::size_t off = 0;
        for (const ConeDesc& f : K.factors) {
            spans.emplace_back(off, f.ambient_dim());
            off += f.ambient_dim();
        }
    } else {
        spans.emplace_back(0, K.ambient_dim());
    }
    return spans;
}

std::vector<const ConeDesc*> factor_list(const ConeDesc& K) {
    std::vector<const ConeDesc*> fs;
    if (K.kind == ConeKind::Product)
        for (const ConeDesc& f : K.factors) fs.push_back(&f);
    else
        fs.push_back(&K);
    return fs;
}

void validate_lift_desc(const LiftDesc& lift, const Config& cfg) {
    const std::size_t d = lift.K.ambient_dim();
    if (lift.pi.cols() != d) throw InvalidInput("LiftDesc: pi must have d columns");
    if (lift.L.rows() != d) throw InvalidInput("LiftDesc: L must be a basis in R^d");
    if (!lift.pi.finite() || !lift.L.finite()) throw InvalidInput("LiftDesc: non-finite entries");
    // orthonormal columns
    for (std::size_t i = 0; i < lift.L.cols(); ++i)
        for (std::size_t j = i; j < lift.L.cols(); ++j) {
            double g = dot(lift.L.col(i), lift.L.col(j));
            double want = (i == j) ? 1.0 : 0.0;
            if (std::fabs(g - want) > 1e-8)
                throw InvalidInput("LiftDesc: L columns are not orthonormal");
        }
    if (lift.witness) {
        const Vec& z = *lift.witness;
        if (z.size() != d) throw InvalidInput("LiftDesc: witness dimension mismatch");
        Vec proj = project_onto_span(lift.L, z);
        if (norm2(axpy(-1.0, proj, z)) > 1e-8 * std::max(1.0, norm2(z)))
            throw InvalidInput("LiftDesc: witness does not lie in span(L)");
        if (!relint_member(lift.K, z, cfg.tol, cfg))
            throw InvalidInput("LiftDesc: witness fails relint membership");
    }
}

// ---- cone projections --------------------------------------------------------------

namespace {

Vec project_soc(const Vec& x) {
    double t = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) t += x[i] * x[i];
    t = std::sqrt(t);
    if (t <= x[0]) return x;
    if (t <= -x[0]) return Vec(x.size(), 0.0);
    double alpha = 0.5 * (x[0] + t);
    Vec r(x.size());
    r[0] = alpha;
    for (std::size_t i = 1; i < x.size(); ++i) r[i] = alpha * x[i] / t;
    return r;
}

Vec project_psd(const Vec& x, int k, const Config& cfg) {
    // symmetrize, clamp negative eigenvalues
    Matrix full(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            full(i, j) = 0.5 * (x[static_cast<std::size_t>(i) * k + j] +
                                x[static_cast<std::size_t>(j) * k + i]);
    SymMatrix S = SymMatrix::from_full(full, 1.0);
    EigResult eig = sym_eig(S, 1e-12, cfg);
    Matrix out(k, k);
    for (int c = 0; c < k; ++c) {
        double lam = eig.values[c];
        if (lam <= 0.0) continue;
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) out(i, j) += lam * eig.Q(i, c) * eig.Q(j, c);
    }
    Vec r(static_cast<std::size_t>(k) * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) r[static_cast<std::size_t>(i) * k + j] = out(i, j);
    return r;
}

}  // namespace

Vec project_onto_cone(const ConeDesc& K, const Vec& x, const Config& cfg) {
    if (x.size() != K.ambient_dim()) throw InvalidInput("project_onto_cone: dimension mismatch");
    switch (K.kind) {
        case ConeKind::Orthant: {
            Vec r = x;
            for (double& v : r) v = std::max(0.0, v);
            return r;
        }
        case ConeKind::SecondOrder: return project_soc(x);
        case ConeKind::Psd: return project_psd(x, K.n, cfg);
        case ConeKind::Product: {
            Vec r;
            r.reserve(x.size());
            std::size_t off = 0;
            for (const ConeDesc& f : K.factors) {
                Vec part(x.begin() + off, x.begin() + off + f.ambient_dim());
                Vec proj = project_onto_cone(f, part, cfg);
                r.insert(r.end(), proj.begin(), proj.end());
                off += f.ambient_dim();
            }
            return r;
        }
        default:
            throw Unsupported("project_onto_cone: no closed-form projection for " +
                              K.kind_name());
    }
}

// ---- check_proper -------------------------------------------------------------------

namespace {

bool polyhedral_representable(const ConeDesc& K) {
    for (const ConeDesc* f : factor_list(K))
        if (f->kind != ConeKind::Orthant && f->kind != ConeKind::Polyhedral) return false;
    return true;
}

// LP search for z = L u in relint(K), K with orthant/polyhedral factors only
ProperCheckResult exact_proper_search(const LiftDesc& lift, const Config& cfg) {
    ProperCheckResult res;
    res.exact_search = true;
    const std::size_t dimL = lift.L.cols();
    std::vector<Vec> rows;
    std::set<std::size_t> strict;
    auto spans = factor_spans(lift.K);
    auto fs = factor_list(lift.K);
    for (std::size_t fi = 0; fi < fs.size(); ++fi) {
        auto [off, dim] = spans[fi];
        if (fs[fi]->kind == ConeKind::Orthant) {
            for (std::size_t i = 0; i < dim; ++i) {
                // coordinate row of L restricted to this block
                Vec row(dimL);
                for (std::size_t c = 0; c < dimL; ++c) row[c] = lift.L(off + i, c);
                rows.push_back(row);
                strict.insert(rows.size() - 1);
            }
        } else {  // polyhedral
            const Matrix& A = fs[fi]->A;
            std::vector<int> imp = polyhedral_implicit_rows(A, {}, cfg);
            std::set<int> imp_set(imp.begin(), imp.end());
            for (std::size_t r = 0; r < A.rows(); ++r) {
                Vec row(dimL, 0.0);
                for (std::size_t c = 0; c < dimL; ++c) {
                    double s = 0.0;
                    for (std::size_t i = 0; i < dim; ++i) s += A(r, i) * lift.L(off + i, c);
                    row[c] = s;
                }
                rows.push_back(row);
                if (!imp_set.count(static_cast<int>(r))) strict.insert(rows.size() - 1);
            }
        }
    }
    if (rows.empty()) {
        // only trivial factors; witness 0 works iff ambient is trivial
        res.status = ProperCheckResult::Status::FoundWitness;
        res.witness = Vec(lift.K.ambient_dim(), 0.0);
        return res;
    }
    FeasiblePointResult fp =
        feasible_point(Matrix::from_rows(rows), Vec(rows.size(), 0.0), strict, cfg);
    if (fp.status != FeasiblePointResult::Status::Feasible) return res;  // proven empty
    Vec z = lift.L.apply(fp.x);
    if (!relint_member(lift.K, z, cfg.tol, cfg)) return res;
    res.status = ProperCheckResult::Status::FoundWitness;
    res.witness = z;
    return res;
}

// alternating projection samples of K cap L
std::vector<Vec> sample_intersection(const LiftDesc& lift, int trials, std::uint64_t seed,
                                     const Config& cfg) {
    std::vector<Vec> kept;
    Rng rng(seed);
    const std::size_t dimL = lift.L.cols();
    for (int t = 0; t < trials; ++t) {
        Vec u(dimL);
        for (double& v : u) v = rng.normal();
        Vec z = lift.L.apply(u);
        bool converged = false;
        for (int it = 0; it < 400; ++it) {
            Vec zk = project_onto_cone(lift.K, z, cfg);
            Vec zl = project_onto_span(lift.L, zk);
            double gap = norm2(axpy(-1.0, zk, zl));
            z = zl;
            if (gap <= 1e-12 * std::max(1.0, norm2(z))) {
                converged = true;
                break;
            }
        }
        if (!converged) continue;
        if (norm2(z) <= 1e-9) continue;
        if (!member(lift.K, z, 1e-7, cfg)) continue;
        kept.push_back(scale(1.0 / std::max(1.0, norm2(z)), z));
    }
    return kept;
}

}  // namespace

ProperCheckResult check_proper(const LiftDesc& lift, const Config& cfg) {
    // a supplied witness is verified (validate throws on failure)
    if (lift.witness) {
        validate_lift_desc(lift, cfg);
        ProperCheckResult res;
        res.status = ProperCheckResult::Status::VerifiedWitness;
        res.witness = *lift.witness;
        return res;
    }
    LiftDesc nowit = lift;
    nowit.witness.reset();
    validate_lift_desc(nowit, cfg);
    if (polyhedral_representable(lift.K)) return exact_proper_search(lift, cfg);

    ProperCheckResult res;
    std::vector<Vec> kept = sample_intersection(lift, 40, cfg.seed, cfg);
    if (kept.empty()) return res;
    Vec avg(lift.K.ambient_dim(), 0.0);
    for (const Vec& z : kept) avg = axpy(1.0, z, avg);
    avg = scale(1.0 / static_cast<double>(kept.size()), avg);
    std::vector<Vec> candidates{avg};
    candidates.insert(candidates.end(), kept.begin(), kept.end());
    for (const Vec& z : candidates) {
        if (relint_member(lift.K, z, cfg.tol, cfg)) {
            res.status = ProperCheckResult::Status::FoundWitness;
            res.witness = z;
            return res;
        }
    }
    return res;  // NotFound, inconclusive (documented)
}

// ---- properize ----------------------------------------------------------------------

namespace {

// reduced cone + embedding matrix realizing a face as a cone in its own
// coordinates
std::pair<ConeDesc, Matrix> face_to_cone(const ConeDesc& K, const FaceDesc& F) {
    switch (F.kind) {
        case FaceKind::OrthantSupport: {
            Matrix E(K.ambient_dim(), F.support.size());
            for (std::size_t c = 0; c < F.support.size(); ++c) E(F.support[c], c) = 1.0;
            return {ConeDesc::orthant(static_cast<int>(F.support.size())), E};
        }
        case FaceKind::PsdBasis: {
            const int k = K.n;
            const int r = static_cast<int>(F.basis.cols());
            Matrix E(static_cast<std::size_t>(k) * k, static_cast<std::size_t>(r) * r);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j)
                    for (int a = 0; a < r; ++a)
                        for (int b = 0; b < r; ++b)
                            E(static_cast<std::size_t>(i) * k + j,
                              static_cast<std::size_t>(a) * r + b) = F.basis(i, a) * F.basis(j, b);
            if (r == 0) return {ConeDesc::orthant(0), Matrix(static_cast<std::size_t>(k) * k, 0)};
            return {ConeDesc::psd(r), E};
        }
        case FaceKind::SocZero:
            return {ConeDesc::orthant(0), Matrix(K.ambient_dim(), 0)};
        case FaceKind::SocRay: {
            Matrix E(K.ambient_dim(), 1);
            for (std::size_t i = 0; i < F.ray.size(); ++i) E(i, 0) = F.ray[i];
            return {ConeDesc::orthant(1), E};
        }
        case FaceKind::SocFull:
            return {ConeDesc::second_order(K.n), Matrix::identity(K.ambient_dim())};
        case FaceKind::PolyActive: {
            std::vector<Vec> eq_rows;
            for (int i : F.active) eq_rows.push_back(K.A.row(i));
            Matrix B = eq_rows.empty() ? Matrix::identity(K.ambient_dim())
                                       : nullspace(Matrix::from_rows(eq_rows));
            if (B.cols() == 0) return {ConeDesc::orthant(0), Matrix(K.ambient_dim(), 0)};
            Matrix AB = K.A.mul(B);
            return {ConeDesc::polyhedral(AB), B};
        }
        case FaceKind::Tuple: {
            std::vector<ConeDesc> cones;
            std::vector<Matrix> embeds;
            std::size_t total_rows = 0, total_cols = 0;
            for (std::size_t i = 0; i < F.components.size(); ++i) {
                auto [c, E] = face_to_cone(K.factors.at(i), F.components[i]);
                total_rows += E.rows();
                total_cols += E.cols();
                cones.push_back(std::move(c));
                embeds.push_back(std::move(E));
            }
            Matrix E(total_rows, total_cols);
            std::size_t ro = 0, co = 0;
            for (const Matrix& Ei : embeds) {
                for (std::size_t i = 0; i < Ei.rows(); ++i)
                    for (std::size_t j = 0; j < Ei.cols(); ++j) E(ro + i, co + j) = Ei(i, j);
                ro += Ei.rows();
                co += Ei.cols();
            }
            return {ConeDesc::product(std::move(cones)), E};
        }
        default:
            throw Unsupported("properize: face family not supported");
    }
}

}  // namespace

ProperizeResult properize(const LiftDesc& lift, const std::vector<Vec>& samples,
                          const Config& cfg) {
    LiftDesc base = lift;
    base.witness.reset();
    validate_lift_desc(base, cfg);
    ProperizeResult res;
    res.possibly_not_minimal = false;

    std::vector<Vec> pts = samples;
    for (const Vec& z : pts) {
        if (z.size() != lift.K.ambient_dim())
            throw InvalidInput("properize: sample dimension mismatch");
        if (!member(lift.K, z, 1e-6, cfg)) throw InvalidInput("properize: sample outside K");
        Vec proj = project_onto_span(lift.L, z);
        if (norm2(axpy(-1.0, proj, z)) > 1e-6 * std::max(1.0, norm2(z)))
            throw InvalidInput("properize: sample outside span(L)");
    }
    if (lift.witness) pts.push_back(*lift.witness);
    if (pts.empty()) {
        if (polyhedral_representable(lift.K)) {
            // exact: a relint point of K cap L exists iff check_proper finds one;
            // otherwise walk down with plain feasibility on subsets of strict rows
            ProperCheckResult pc = check_proper(base, cfg);
            if (pc.status == ProperCheckResult::Status::FoundWitness) {
                pts.push_back(pc.witness);
            } else {
                // fall back to any nonzero feasible point via per-coordinate probes
                std::vector<Vec> kept = sample_intersection(base, 40, cfg.seed, cfg);
                pts = kept;
                res.possibly_not_minimal = true;
            }
        } else {
            pts = sample_intersection(base, 60, cfg.seed, cfg);
            res.possibly_not_minimal = true;
        }
    }

    if (pts.empty()) {
        res.degenerate = true;
        res.lift = base;
        return res;
    }

    Vec sum(lift.K.ambient_dim(), 0.0);
    for (const Vec& z : pts) sum = axpy(1.0 / std::max(1.0, norm2(z)), z, sum);
    FaceDesc F = minimal_face(lift.K, sum, cfg);

    // componentwise face list
    if (F.kind == FaceKind::Tuple)
        res.faces = F.components;
    else
        res.faces = {F};
    for (std::size_t i = 0; i < res.faces.size(); ++i)
        res.face_chain_lengths.push_back(
            face_chain_length(*factor_list(lift.K)[i], res.faces[i], cfg));

    auto [reduced, E] = face_to_cone(lift.K, F);
    res.embed = E;
    LiftDesc out;
    out.K = std::move(reduced);
    out.pi = lift.pi.mul(E);
    // L' = null((I - L L^T) E): directions of the reduced ambient mapping into L
    Matrix P(E.rows(), E.cols());
    for (std::size_t j = 0; j < E.cols(); ++j) {
        Vec col = E.col(j);
        Vec proj = project_onto_span(lift.L, col);
        for (std::size_t i = 0; i < E.rows(); ++i) P(i, j) = col[i] - proj[i];
    }
    out.L = E.cols() == 0 ? Matrix(0, 0) : nullspace(P);
    if (out.L.rows() == 0) out.L = Matrix(E.cols(), 0);
    // witness: pull the relint sum back through E
    if (E.cols() > 0) {
        Vec z = lstsq(E, sum);
        Vec back = E.apply(z);
        if (norm2(axpy(-1.0, back, sum)) <= 1e-6 * std::max(1.0, norm2(sum)) &&
            relint_member(out.K, z, cfg.tol, cfg))
            out.witness = z;
    }
    res.lift = std::move(out);
    res.degenerate = (E.cols() == 0);
    return res;
}

// ---- validate_lift -------------------------------------------------------------------

LiftValidation validate_lift(const LiftDesc& lift, const std::vector<PrimalSample>& primal,
                             const std::vector<Vec>& dual_samples, double tol,
                             const Config& cfg) {
    LiftDesc base = lift;
    base.witness.reset();
    validate_lift_desc(base, cfg);
    LiftValidation rep;
    rep.primal_ok = true;
    rep.dual_ok = true;
    for (std::size_t s = 0; s < primal.size(); ++s) {
        const auto& [x, z] = primal[s];
        if (x.size() != lift.pi.rows() || z.size() != lift.K.ambient_dim())
            throw InvalidInput("validate_lift: malformed sample dimensions");
        double sc = std::max(1.0, norm2(x));
        if (!member(lift.K, z, tol, cfg)) {
            rep.primal_ok = false;
            rep.failures.push_back("sample " + std::to_string(s) + ": preimage outside K");
            continue;
        }
        Vec proj = project_onto_span(lift.L, z);
        double r1 = norm2(axpy(-1.0, proj, z));
        double r2 = norm2(axpy(-1.0, lift.pi.apply(z), x));
        double r = std::max(r1 / std::max(1.0, norm2(z)), r2 / sc);
        rep.max_primal_residual = std::max(rep.max_primal_residual, r);
        if (r > tol) {
            rep.primal_ok = false;
            rep.failures.push_back("sample " + std::to_string(s) + ": projection residual " +
                                   std::to_string(r));
        }
    }
    // one-sided containment evidence: conic combinations of known K cap L
    // points must satisfy the supplied dual constraints after projection
    std::vector<Vec> gens;
    for (const auto& ps : primal) gens.push_back(ps.preimage);
    if (lift.witness) gens.push_back(*lift.witness);
    Rng rng(cfg.seed);
    for (int trial = 0; trial < 64 && !gens.empty(); ++trial) {
        Vec z(lift.K.ambient_dim(), 0.0);
        for (const Vec& g : gens) z = axpy(rng.uniform(), g, z);
        Vec img = lift.pi.apply(z);
        for (std::size_t dy = 0; dy < dual_samples.size(); ++dy) {
            double v = dot(dual_samples[dy], img);
            double sc = tol * std::max(1.0, norm2(dual_samples[dy]) * norm2(img));
            rep.worst_dual_value = std::min(rep.worst_dual_value, v);
            if (v < -sc) {
                rep.dual_ok = false;
                rep.failures.push_back("dual sample " + std::to_string(dy) +
                                       ": negative pairing " + std::to_string(v));
            }
        }
    }
    return rep;
}

// ---- factorization -------------------------------------------------------------------

DualDecomposition decompose_dual(const ConeDesc& K, const Matrix& L, const Vec& v,
                                 const Config& cfg) {
    // find a in K* with v - a in L-perp, via Dykstra between K* and the
    // affine set v + L-perp; orthant/SOC/PSD factors are self-dual so the
    // dual projection is the primal one
    DualDecomposition out;
    Vec x = v;
    Vec p(v.size(), 0.0);
    Vec a = v;
    double scale_v = std::max(1.0, norm2(v));
    for (int it = 0; it < cfg.dykstra_iter_cap; ++it) {
        Vec y = project_onto_cone(K, axpy(1.0, p, x), cfg);
        p = axpy(-1.0, y, axpy(1.0, p, x));
        // affine projection: x = y - P_L(y - v)
        Vec diff = axpy(-1.0, v, y);
        Vec proj = project_onto_span(L, diff);
        x = axpy(-1.0, proj, y);
        a = y;
        out.iterations = it + 1;
        double resid = norm2(proj);
        out.residual = resid / scale_v;
        if (out.residual <= cfg.dykstra_tol) {
            out.converged = true;
            break;
        }
    }
    out.a = a;
    return out;
}

void validate_factorization(const FactorizationData& fd, double tol, const Config& cfg) {
    const std::size_t d = fd.cone.ambient_dim();
    if (fd.b.cols() != d || fd.a.cols() != d)
        throw InvalidInput("FactorizationData: table width mismatch");
    if (fd.b.rows() != fd.primal_labels.size() || fd.a.rows() != fd.dual_labels.size())
        throw InvalidInput("FactorizationData: label count mismatch");
    auto spans = factor_spans(fd.cone);
    auto fs = factor_list(fd.cone);
    for (std::size_t r = 0; r < fd.b.rows(); ++r) {
        Vec row = fd.b.row(r);
        for (std::size_t fi = 0; fi < fs.size(); ++fi) {
            Vec part(row.begin() + spans[fi].first,
                     row.begin() + spans[fi].first + spans[fi].second);
            if (!member(*fs[fi], part, tol, cfg))
                throw InvalidInput("FactorizationData: b(" +
                                   std::to_string(fd.primal_labels[r]) + ") outside factor " +
                                   std::to_string(fi));
        }
    }
    for (std::size_t r = 0; r < fd.a.rows(); ++r) {
        Vec row = fd.a.row(r);
        for (std::size_t fi = 0; fi < fs.size(); ++fi) {
            Vec part(row.begin() + spans[fi].first,
                     row.begin() + spans[fi].first + spans[fi].second);
            if (!dual_member(*fs[fi], part, tol, cfg))
                throw InvalidInput("FactorizationData: a(T_" + std::to_string(r) +
                                   ") outside dual of factor " + std::to_string(fi));
        }
    }
}

FactorizeOutcome factorize(const LiftDesc& lift, const std::vector<PrimalSample>& primal,
                           const std::vector<Vec>& dual_samples, double tol, const Config& cfg) {
    ProperCheckResult pc = check_proper(lift, cfg);
    if (pc.status == ProperCheckResult::Status::NotFound)
        throw InvalidInput("factorize: lift is not proper (no witness)");

    FactorizeOutcome out;
    out.data.cone = lift.K;
    const std::size_t d = lift.K.ambient_dim();
    out.data.b = Matrix(primal.size(), d);
    out.data.a = Matrix(dual_samples.size(), d);

    for (std::size_t s = 0; s < primal.size(); ++s) {
        const auto& [x, z] = primal[s];
        if (z.size() != d || x.size() != lift.pi.rows())
            throw InvalidInput("factorize: malformed primal sample");
        if (!member(lift.K, z, 1e-6, cfg))
            throw InvalidInput("factorize: preimage outside K at sample " + std::to_string(s));
        if (norm2(axpy(-1.0, lift.pi.apply(z), x)) > 1e-6 * std::max(1.0, norm2(x)))
            throw InvalidInput("factorize: pi(preimage) != x at sample " + std::to_string(s));
        out.data.primal_labels.push_back(static_cast<std::int64_t>(s));
        for (std::size_t j = 0; j < d; ++j) out.data.b(s, j) = z[j];
    }

    for (std::size_t t = 0; t < dual_samples.size(); ++t) {
        Vec v = lift.pi.apply_transpose(dual_samples[t]);
        DualDecomposition dec = decompose_dual(lift.K, lift.L, v, cfg);
        out.max_decomposition_residual = std::max(out.max_decomposition_residual, dec.residual);
        out.max_iterations = std::max(out.max_iterations, dec.iterations);
        if (!dec.converged)
            throw NumericFailure("factorize: decomposition not found (tolerance); residual " +
                                 std::to_string(dec.residual) + " after " +
                                 std::to_string(dec.iterations) + " iterations");
        out.data.dual_labels.push_back({static_cast<std::int64_t>(t)});
        for (std::size_t j = 0; j < d; ++j) out.data.a(t, j) = dec.a[j];
    }

    // bilinear identity on every cross pair
    for (std::size_t s = 0; s < primal.size(); ++s)
        for (std::size_t t = 0; t < dual_samples.size(); ++t) {
            double want = dot(primal[s].x, dual_samples[t]);
            double got = dot(out.data.b.row(s), out.data.a.row(t));
            double sc = std::max(1.0, norm2(primal[s].x) * norm2(dual_samples[t]));
            double resid = std::fabs(want - got) / sc;
            out.max_identity_residual = std::max(out.max_identity_residual, resid);
        }
    if (out.max_identity_residual > 10.0 * tol)
        throw NumericFailure("factorize: bilinear identity residual " +
                             std::to_string(out.max_identity_residual) + " exceeds 10*tol");
    return out;
}

// ---- SDD ------------------------------------------------------------------------------

SddResult sdd_decompose(const SymMatrix& X, double tol, const Config& cfg) {
    (void)cfg;
    SddResult res;
    const int k = X.order();
    if (k < 2) throw InvalidInput("sdd_decompose: order must be >= 2");
    const double scale = std::max(1.0, X.norm_inf_entry());
    Vec weights(k, 0.0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (j != i) weights[i] += std::fabs(X(i, j));
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            SddBlock blk;
            blk.i = i;
            blk.j = j;
            blk.b = X(i, j);
            blk.a = weights[i] > 0.0 ? X(i, i) * std::fabs(X(i, j)) / weights[i]
                                     : X(i, i) / static_cast<double>(k - 1);
            blk.c = weights[j] > 0.0 ? X(j, j) * std::fabs(X(i, j)) / weights[j]
                                     : X(j, j) / static_cast<double>(k - 1);
            bool psd = blk.a >= -tol * scale && blk.c >= -tol * scale &&
                       blk.a * blk.c - blk.b * blk.b >= -tol * scale * scale;
            if (!psd) {
                res.ok = false;
                res.reason = "splitting failed: block (" + std::to_string(i + 1) + "," +
                             std::to_string(j + 1) + ") is not PSD";
                res.blocks.clear();
                return res;
            }
            res.blocks.push_back(blk);
        }
    res.ok = true;
    return res;
}

SymMatrix sdd_reassemble(int k, const std::vector<SddBlock>& blocks) {
    SymMatrix X(k);
    for (const SddBlock& b : blocks) {
        X.set(b.i, b.i, X(b.i, b.i) + b.a);
        X.set(b.j, b.j, X(b.j, b.j) + b.c);
        X.set(b.i, b.j, X(b.i, b.j) + b.b);
    }
    return X;
}

LiftDesc sdd_demo_lift(int k) {
    if (k < 2) throw InvalidInput("sdd_demo_lift: order must be >= 2");
    const int m = k * (k - 1) / 2;
    const std::size_t d = static_cast<std::size_t>(4) * m;
    LiftDesc lift;
    std::vector<ConeDesc> factors(m, ConeDesc::psd(2));
    lift.K = ConeDesc::product(std::move(factors));
    lift.pi = Matrix(static_cast<std::size_t>(k) * k, d);
    int blk = 0;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j, ++blk) {
            std::size_t off = static_cast<std::size_t>(4) * blk;
            lift.pi(static_cast<std::size_t>(i) * k + i, off + 0) = 1.0;  // block (0,0) -> X_ii
            lift.pi(static_cast<std::size_t>(i) * k + j, off + 1) = 1.0;  // block (0,1) -> X_ij
            lift.pi(static_cast<std::size_t>(j) * k + i, off + 2) = 1.0;  // block (1,0) -> X_ji
            lift.pi(static_cast<std::size_t>(j) * k + j, off + 3) = 1.0;  // block (1,1) -> X_jj
        }
    lift.L = Matrix::identity(d);
    SddResult id = sdd_decompose(SymMatrix::identity(k));
    lift.witness = sdd_preimage(k, id.blocks);
    return lift;
}

Vec sdd_preimage(int k, const std::vector<SddBlock>& blocks) {
    const int m = k * (k - 1) / 2;
    Vec z(static_cast<std::size_t>(4) * m, 0.0);
    auto block_index = [&](int i, int j) {
        // position of pair (i,j), i<j in row-major pair order
        return (i * (2 * k - i - 1)) / 2 + (j - i - 1);
    };
    for (const SddBlock& b : blocks) {
        std::size_t off = static_cast<std::size_t>(4) * block_index(b.i, b.j);
        z[off + 0] = b.a;
        z[off + 1] = b.b;
        z[off + 2] = b.b;
        z[off + 3] = b.c;
    }
    return z;
}

// ---- hyperbolic factor lift ------------------------------------------------------------

FactorLift factor_lift(const FactorData& fd) {
    MultiPoly p = factor_product(fd);
    validate_factor_data(fd, p);  // verifies p_i(e) > 0 and the product identity
    const int n = p.nvars();
    const std::size_t m = fd.factors.size();
    FactorLift out;
    std::vector<ConeDesc> cones;
    for (const auto& f : fd.factors) {
        cones.push_back(ConeDesc::hyperbolicity(f.p, fd.e));
        out.factor_chain_bounds.push_back(f.p.degree() + 1);
    }
    out.lift.K = m == 1 ? cones[0] : ConeDesc::product(std::move(cones));
    const std::size_t d = static_cast<std::size_t>(n) * m;
    out.lift.pi = Matrix(n, d);
    for (int i = 0; i < n; ++i) out.lift.pi(i, i) = 1.0;  // first block
    out.lift.L = Matrix(d, n);
    const double inv = 1.0 / std::sqrt(static_cast<double>(m));
    for (std::size_t blk = 0; blk < m; ++blk)
        for (int i = 0; i < n; ++i) out.lift.L(blk * n + i, i) = inv;
    // diagonal embedding of e is a relint witness when e is interior to
    // every factor cone (it is: all eigenvalues of e equal 1)
    Vec w(d);
    for (std::size_t blk = 0; blk < m; ++blk)
        for (int i = 0; i < n; ++i) w[blk * n + i] = fd.e[i];
    out.lift.witness = w;
    return out;
}

}  // namespace conelift
