#include "conelift/poly.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace conelift {

// ---- UniPoly ----------------------------------------------------------------

void UniPoly::normalize(double drop_tol) {
    while (c_.size() > 1 && std::fabs(c_.back()) <= drop_tol) c_.pop_back();
}

UniPoly UniPoly::from_roots(const Vec& roots, double lead) {
    Vec c{lead};
    for (double r : roots) {
        Vec next(c.size() + 1, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= r * c[i];
        }
        c = next;
    }
    return UniPoly(c);
}

double UniPoly::eval(double t) const {
    double v = 0.0;
    for (std::size_t i = c_.size(); i-- > 0;) v = v * t + c_[i];
    return v;
}

UniPoly UniPoly::derivative() const {
    if (degree() == 0) return UniPoly();
    Vec d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<double>(i);
    return UniPoly(d);
}

UniPoly UniPoly::mul(const UniPoly& other) const {
    if (is_zero() || other.is_zero()) return UniPoly();
    Vec r(c_.size() + other.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < other.c_.size(); ++j) r[i + j] += c_[i] * other.c_[j];
    return UniPoly(r);
}

UniPoly UniPoly::add(const UniPoly& other) const {
    Vec r(std::max(c_.size(), other.c_.size()), 0.0);
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < other.c_.size(); ++i) r[i] += other.c_[i];
    return UniPoly(r);
}

UniPoly UniPoly::scaled(double alpha) const {
    Vec r = c_;
    for (double& v : r) v *= alpha;
    return UniPoly(r);
}

UniPoly UniPoly::deflate(double r, double* remainder) const {
    if (degree() == 0) {
        if (remainder) *remainder = c_[0];
        return UniPoly();
    }
    Vec q(c_.size() - 1, 0.0);
    double carry = c_.back();
    for (std::size_t i = c_.size() - 1; i-- > 0;) {
        q[i] = carry;
        carry = c_[i] + r * carry;
    }
    if (remainder) *remainder = carry;
    Vec qc(q.begin(), q.end());
    return UniPoly(qc);
}

// ---- Sturm machinery ---------------------------------------------------------

namespace {

// remainder of a / b, both nonzero, deg a >= deg b
Vec poly_rem(Vec a, const Vec& b) {
    const std::size_t db = b.size() - 1;
    while (a.size() > db && !(a.size() == 1 && a[0] == 0.0)) {
        double f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        a.pop_back();
        // trim exact zeros introduced by cancellation
        while (a.size() > 1 && a.back() == 0.0) a.pop_back();
    }
    return a;
}

void normalize_inf(Vec& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    if (m > 0.0)
        for (double& x : v) x /= m;
}

struct SturmChain {
    std::vector<Vec> seq;   // normalized chain S0, S1, ...
    Vec gcd_like;           // last member when the chain terminated early (deg >= 1), else empty
};

SturmChain build_sturm(const UniPoly& q, double term_tol) {
    SturmChain ch;
    Vec s0 = q.coeffs();
    normalize_inf(s0);
    ch.seq.push_back(s0);
    if (q.degree() == 0) return ch;
    Vec s1 = q.derivative().coeffs();
    normalize_inf(s1);
    ch.seq.push_back(s1);
    while (ch.seq.back().size() > 1) {
        Vec r = poly_rem(ch.seq[ch.seq.size() - 2], ch.seq.back());
        double rn = 0.0;
        for (double x : r) rn = std::max(rn, std::fabs(x));
        if (rn <= term_tol) {
            // remainder vanished: the last member behaves as gcd(q, q').
            // The chain ending at the gcd still counts distinct roots of q.
            ch.gcd_like = ch.seq.back();
            break;
        }
        for (double& x : r) x = -x;
        normalize_inf(r);
        // tiny leading coefficients would blow up the next pseudo-division
        while (r.size() > 1 && std::fabs(r.back()) <= 1e-12) r.pop_back();
        ch.seq.push_back(std::move(r));
    }
    return ch;
}

double eval_coeffs(const Vec& c, double t) {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * t + c[i];
    return v;
}

// long-division quotient of a by b (remainder discarded; callers divide by a
// near-exact factor)
Vec poly_quot(const Vec& a, const Vec& b) {
    if (a.size() < b.size()) return Vec{0.0};
    Vec rem = a;
    Vec quot(a.size() - b.size() + 1, 0.0);
    for (std::size_t i = quot.size(); i-- > 0;) {
        double f = rem[i + b.size() - 1] / b.back();
        quot[i] = f;
        for (std::size_t j = 0; j < b.size(); ++j) rem[i + j] -= f * b[j];
    }
    return quot;
}

int variations_at(const SturmChain& ch, double t) {
    int count = 0, prev = 0;
    for (const Vec& s : ch.seq) {
        double v = eval_coeffs(s, t);
        int sg = (v > 0.0) - (v < 0.0);
        if (sg == 0) continue;
        if (prev != 0 && sg != prev) ++count;
        prev = sg;
    }
    return count;
}

// multiplicity-robust Newton: iterate on q/q' so multiple roots stay quadratic
double polish_root(const UniPoly& q, const UniPoly& dq, const UniPoly& ddq, double t0,
                   double lo, double hi) {
    double t = t0;
    for (int it = 0; it < 60; ++it) {
        double f = q.eval(t), d = dq.eval(t), dd = ddq.eval(t);
        double denom = d * d - f * dd;
        if (denom == 0.0 || !std::isfinite(denom)) break;
        double step = f * d / denom;
        double next = t - step;
        if (!std::isfinite(next) || next < lo - (hi - lo) || next > hi + (hi - lo)) break;
        t = next;
        if (std::fabs(step) <= 1e-15 * (1.0 + std::fabs(t))) break;
    }
    return t;
}

}  // namespace

RootResult real_roots_impl(const UniPoly& q, double tol, const Config& cfg,
                           double root_bound) {
    RootResult res;
    const int d = q.degree();
    const double bound = root_bound;
    const double cluster_width = cfg.cluster_factor * tol * std::max(1.0, bound);
    const UniPoly dq = q.derivative();
    const UniPoly ddq = dq.derivative();

    SturmChain chain = build_sturm(q, 1e-11);

    // Every Euclid-chain member is divisible by gcd(q, q'), so variation
    // counts are unreliable near a multiple root. With a nontrivial gcd,
    // isolate distinct roots on the square-free part instead.
    std::vector<double> merged;
    if (!chain.gcd_like.empty()) {
        UniPoly qsf{poly_quot(q.coeffs(), chain.gcd_like)};
        if (qsf.degree() >= 1) {
            RootResult sf = real_roots(qsf, tol, cfg);
            for (const auto& [r, m] : sf.clusters) {
                (void)m;
                merged.push_back(r);
            }
        }
    } else {
        double lo = -bound * (1.0 + 1e-6) - 1e-12, hi = bound * (1.0 + 1e-6) + 1e-12;
        // isolate distinct real roots by variation-count bisection
        std::vector<double> distinct;
        struct Seg {
            double a, b;
            int va, vb;
        };
        std::vector<Seg> stack{{lo, hi, variations_at(chain, lo), variations_at(chain, hi)}};
        while (!stack.empty()) {
            Seg s = stack.back();
            stack.pop_back();
            int count = s.va - s.vb;
            if (count <= 0) continue;
            if (count == 1 || s.b - s.a <= cluster_width) {
                double mid = 0.5 * (s.a + s.b);
                if (count == 1) {
                    // bisect further for a good Newton seed
                    double a = s.a, b = s.b;
                    int va = s.va;
                    for (int it = 0; it < 80 && b - a > tol * std::max(1.0, bound); ++it) {
                        double m = 0.5 * (a + b);
                        int vm = variations_at(chain, m);
                        if (va - vm >= 1)
                            b = m;
                        else {
                            a = m;
                            va = vm;
                        }
                    }
                    mid = polish_root(q, dq, ddq, 0.5 * (a + b), s.a, s.b);
                }
                distinct.push_back(mid);
                continue;
            }
            double m = 0.5 * (s.a + s.b);
            int vm = variations_at(chain, m);
            stack.push_back({s.a, m, s.va, vm});
            stack.push_back({m, s.b, vm, s.vb});
        }
        std::sort(distinct.begin(), distinct.end());

        // merge clusters closer than the documented clustering knob
        for (double r : distinct) {
            if (!merged.empty() && r - merged.back() <= cluster_width)
                merged.back() = 0.5 * (merged.back() + r);
            else
                merged.push_back(r);
        }
    }

    // Multiplicities by peeling: repeatedly polish the best candidate on the
    // current quotient and deflate. Re-polishing on the quotient keeps the
    // locations from drifting as factors come off.
    std::vector<double> peeled;
    {
        UniPoly cur = q;
        const double accept = std::max(std::sqrt(tol), 1e-8);
        int guard = 0;
        while (cur.degree() >= 1 && guard++ <= 2 * d) {
            if (cur.degree() == 1) {
                double r = -cur.coeffs()[0] / cur.coeffs()[1];
                peeled.push_back(r);
                cur = cur.deflate(r);
                continue;
            }
            UniPoly dcur = cur.derivative();
            UniPoly ddcur = dcur.derivative();
            double best = 0.0, best_val = std::numeric_limits<double>::infinity();
            double cscale = std::max(1.0, cur.norm_inf());
            for (double c0 : merged) {
                double r = polish_root(cur, dcur, ddcur, c0, c0 - 1.0, c0 + 1.0);
                double denom = cscale * std::pow(std::max(1.0, std::fabs(r)), cur.degree());
                double v = std::fabs(cur.eval(r)) / denom;
                if (std::isfinite(r) && v < best_val) {
                    best_val = v;
                    best = r;
                }
            }
            if (!(best_val <= accept)) break;
            peeled.push_back(best);
            cur = cur.deflate(best);
        }

        // leftover quotient: near-real complex pairs sit at critical points
        double qscale = std::max(1.0, cur.norm_inf());
        int guard2 = 0;
        while (cur.degree() >= 2 && guard2++ < d) {
            RootResult crit = real_roots(cur.derivative(), tol, cfg);
            bool placed = false;
            for (const auto& [c, m] : crit.clusters) {
                (void)m;
                if (std::fabs(cur.eval(c)) <= std::sqrt(tol) * qscale * (1.0 + std::fabs(c))) {
                    peeled.push_back(c);
                    peeled.push_back(c);
                    cur = cur.deflate(c).deflate(c);
                    placed = true;
                    break;
                }
            }
            if (!placed) break;
        }
        if (cur.degree() == 1) peeled.push_back(-cur.coeffs()[0] / cur.coeffs()[1]);
    }
    std::sort(peeled.begin(), peeled.end());

    // Group peeled roots into clusters over a ladder of window widths and
    // keep the coarsest grouping that still reconstructs q: machine noise
    // splits an m-fold root into simple roots scattered ~eps^(1/m) wide
    // (which also reconstructs), and the multiplicity reading is preferred
    // whenever it is consistent. Bad merges fail the reconstruction check
    // and are discarded.
    double best_resid = std::numeric_limits<double>::infinity();
    std::size_t best_count = static_cast<std::size_t>(-1);
    bool best_valid = false;
    std::vector<std::pair<double, int>> best_clusters;
    for (double widen : {1.0, 1e2, 1e4, 1e6}) {
        double window = widen * std::max(cluster_width, 1e-7 * (1.0 + bound));
        std::vector<std::pair<double, int>> clusters;
        for (double r : peeled) {
            if (!clusters.empty() && r - clusters.back().first <= window) {
                auto& [loc, m] = clusters.back();
                loc = (loc * m + r) / (m + 1);
                ++m;
            } else {
                clusters.emplace_back(r, 1);
            }
        }
        // a root of multiplicity m is simple and well conditioned for the
        // (m-1)-th derivative; re-polish there for full accuracy
        for (auto& [loc, m] : clusters) {
            if (m < 2 || m > d) continue;
            UniPoly g = q;
            for (int k = 1; k < m; ++k) g = g.derivative();
            UniPoly dg = g.derivative();
            double t = loc;
            for (int it = 0; it < 50; ++it) {
                double gv = g.eval(t), dv = dg.eval(t);
                if (dv == 0.0 || !std::isfinite(dv)) break;
                double step = gv / dv;
                t -= step;
                if (std::fabs(step) <= 1e-16 * (1.0 + std::fabs(t))) break;
            }
            if (std::isfinite(t) && std::fabs(t - loc) <= 1e3 * window + 1e-6 * (1.0 + std::fabs(loc)))
                loc = t;
        }
        // reconstruction residual for this grouping
        Vec flat;
        for (const auto& [loc, m] : clusters)
            for (int k = 0; k < m; ++k) flat.push_back(loc);
        UniPoly rebuilt = UniPoly::from_roots(flat, q.lead());
        double resid = 0.0;
        const Vec& qc = q.coeffs();
        const Vec& rc = rebuilt.coeffs();
        double qn = std::max(1.0, q.norm_inf());
        for (std::size_t i = 0; i < std::max(qc.size(), rc.size()); ++i) {
            double a = i < qc.size() ? qc[i] : 0.0;
            double b = i < rc.size() ? rc[i] : 0.0;
            resid = std::max(resid, std::fabs(a - b) / qn);
        }
        bool valid = resid <= tol * (1.0 + d);
        bool better;
        if (valid && best_valid)
            better = clusters.size() < best_count ||
                     (clusters.size() == best_count && resid < best_resid);
        else if (valid != best_valid)
            better = valid;
        else
            better = resid < best_resid;
        if (better) {
            best_resid = resid;
            best_count = clusters.size();
            best_valid = valid;
            best_clusters = clusters;
        }
    }

    res.clusters = best_clusters;
    for (const auto& [loc, m] : best_clusters)
        for (int k = 0; k < m; ++k) res.roots.push_back(loc);
    res.reconstruction_residual = best_resid;
    res.ok = static_cast<int>(res.roots.size()) == d && best_resid <= tol * (1.0 + d);
    return res;
}

RootResult real_roots(const UniPoly& q, double tol, const Config& cfg) {
    if (q.is_zero()) throw InvalidInput("real_roots: zero polynomial");
    const int d = q.degree();
    if (d == 0) return RootResult{};  // nonzero constant: no roots

    // root-magnitude bound: the smaller of Cauchy and Fujiwara
    double cauchy = 0.0;
    for (int i = 0; i < d; ++i) cauchy = std::max(cauchy, std::fabs(q.coeffs()[i] / q.lead()));
    cauchy += 1.0;
    double fujiwara = 0.0;
    for (int i = 1; i <= d; ++i) {
        double ratio = std::fabs(q.coeffs()[d - i] / q.lead());
        if (ratio > 0.0) fujiwara = std::max(fujiwara, std::pow(ratio, 1.0 / i));
    }
    fujiwara *= 2.0;
    double R = std::max(1e-3, std::min(cauchy, fujiwara));
    if (R <= 2.0) return real_roots_impl(q, tol, cfg, R);

    // substitute t -> R t so the roots land in [-1, 1]: this keeps the
    // cluster width and the chain termination test meaningful regardless of
    // the coefficient spread
    Vec cs = q.coeffs();
    double div = 1.0;
    for (int i = d; i >= 0; --i) {
        cs[i] /= div;  // c_i * R^(i-d)
        div *= R;
    }
    RootResult inner = real_roots_impl(UniPoly(cs), tol, cfg, 1.0);
    RootResult res;
    for (auto [loc, m] : inner.clusters) {
        loc *= R;
        // final polish in original coordinates on the (m-1)-th derivative
        UniPoly g = q;
        for (int k = 1; k < m; ++k) g = g.derivative();
        UniPoly dg = g.derivative();
        double t = loc;
        for (int it = 0; it < 50; ++it) {
            double gv = g.eval(t), dv = dg.eval(t);
            if (dv == 0.0 || !std::isfinite(dv)) break;
            double step = gv / dv;
            t -= step;
            if (std::fabs(step) <= 1e-16 * (1.0 + std::fabs(t))) break;
        }
        if (std::isfinite(t) && std::fabs(t - loc) <= 1e-5 * (1.0 + std::fabs(loc))) loc = t;
        res.clusters.emplace_back(loc, m);
        for (int k = 0; k < m; ++k) res.roots.push_back(loc);
    }
    UniPoly rebuilt = UniPoly::from_roots(res.roots, q.lead());
    double resid = 0.0;
    double qn = std::max(1.0, q.norm_inf());
    const Vec& qc = q.coeffs();
    const Vec& rc = rebuilt.coeffs();
    for (std::size_t i = 0; i < std::max(qc.size(), rc.size()); ++i) {
        double a = i < qc.size() ? qc[i] : 0.0;
        double b = i < rc.size() ? rc[i] : 0.0;
        resid = std::max(resid, std::fabs(a - b) / qn);
    }
    res.reconstruction_residual = resid;
    res.ok = inner.ok && static_cast<int>(res.roots.size()) == d && resid <= tol * (1.0 + d);
    return res;
}

// ---- MultiPoly ----------------------------------------------------------------

MultiPoly::MultiPoly(int nvars, std::vector<Term> terms) : nvars_(nvars), terms_(std::move(terms)) {
    if (nvars < 0) throw InvalidInput("MultiPoly: negative variable count");
    for (const Term& t : terms_) {
        if (static_cast<int>(t.exps.size()) != nvars)
            throw InvalidInput("MultiPoly: exponent vector length mismatch");
        for (int e : t.exps)
            if (e < 0) throw InvalidInput("MultiPoly: negative exponent");
        if (!std::isfinite(t.coef)) throw InvalidInput("MultiPoly: non-finite coefficient");
    }
    canonicalize();
}

void MultiPoly::canonicalize() {
    std::map<std::vector<int>, double> acc;
    for (const Term& t : terms_) acc[t.exps] += t.coef;
    terms_.clear();
    for (auto& [e, c] : acc)
        if (c != 0.0) terms_.push_back({e, c});
}

int MultiPoly::degree() const {
    int d = 0;
    for (const Term& t : terms_) {
        int s = 0;
        for (int e : t.exps) s += e;
        d = std::max(d, s);
    }
    return d;
}

bool MultiPoly::is_homogeneous() const {
    if (terms_.empty()) return true;
    int d = -1;
    for (const Term& t : terms_) {
        int s = 0;
        for (int e : t.exps) s += e;
        if (d < 0) d = s;
        if (s != d) return false;
    }
    return true;
}

double MultiPoly::eval(const Vec& x) const {
    if (static_cast<int>(x.size()) != nvars_)
        throw InvalidInput("MultiPoly::eval: dimension mismatch");
    double s = 0.0;
    for (const Term& t : terms_) {
        double m = t.coef;
        for (int i = 0; i < nvars_; ++i)
            for (int k = 0; k < t.exps[i]; ++k) m *= x[i];
        s += m;
    }
    return s;
}

MultiPoly MultiPoly::mul(const MultiPoly& other) const {
    if (other.nvars_ != nvars_) throw InvalidInput("MultiPoly::mul: variable count mismatch");
    std::vector<Term> out;
    out.reserve(terms_.size() * other.terms_.size());
    for (const Term& a : terms_)
        for (const Term& b : other.terms_) {
            Term t;
            t.exps.resize(nvars_);
            for (int i = 0; i < nvars_; ++i) t.exps[i] = a.exps[i] + b.exps[i];
            t.coef = a.coef * b.coef;
            out.push_back(std::move(t));
        }
    return MultiPoly(nvars_, std::move(out));
}

MultiPoly MultiPoly::pow(int e) const {
    if (e < 0) throw InvalidInput("MultiPoly::pow: negative exponent");
    MultiPoly r = monomial(nvars_, std::vector<int>(nvars_, 0), 1.0);
    for (int i = 0; i < e; ++i) r = r.mul(*this);
    return r;
}

MultiPoly MultiPoly::add(const MultiPoly& other) const {
    if (other.nvars_ != nvars_) throw InvalidInput("MultiPoly::add: variable count mismatch");
    std::vector<Term> out = terms_;
    out.insert(out.end(), other.terms_.begin(), other.terms_.end());
    return MultiPoly(nvars_, std::move(out));
}

MultiPoly MultiPoly::scaled(double alpha) const {
    std::vector<Term> out = terms_;
    for (Term& t : out) t.coef *= alpha;
    return MultiPoly(nvars_, std::move(out));
}

double MultiPoly::max_abs_coef() const {
    double m = 0.0;
    for (const Term& t : terms_) m = std::max(m, std::fabs(t.coef));
    return m;
}

double MultiPoly::coef_distance(const MultiPoly& other) const {
    if (other.nvars_ != nvars_) throw InvalidInput("MultiPoly::coef_distance: variable mismatch");
    std::map<std::vector<int>, double> acc;
    for (const Term& t : terms_) acc[t.exps] += t.coef;
    for (const Term& t : other.terms_) acc[t.exps] -= t.coef;
    double scale = std::max({1e-300, max_abs_coef(), other.max_abs_coef()});
    double m = 0.0;
    for (auto& [e, c] : acc) m = std::max(m, std::fabs(c));
    return m / scale;
}

MultiPoly MultiPoly::monomial(int nvars, const std::vector<int>& exps, double coef) {
    return MultiPoly(nvars, {Term{exps, coef}});
}

// ---- restriction --------------------------------------------------------------

UniPoly poly_restrict(const MultiPoly& p, const Vec& e, const Vec& x) {
    if (static_cast<int>(e.size()) != p.nvars() || static_cast<int>(x.size()) != p.nvars())
        throw InvalidInput("poly_restrict: dimension mismatch");
    require_finite(e, "poly_restrict: e");
    require_finite(x, "poly_restrict: x");
    if (!p.is_homogeneous()) throw InvalidInput("poly_restrict: p must be homogeneous");
    double pe = p.eval(e);
    if (!(pe > 0.0))
        throw InvalidInput("poly_restrict: p(e) <= 0, not a hyperbolicity direction");
    const int d = p.degree();
    if (d == 0) return UniPoly::constant(pe);

    // Chebyshev nodes on [-R, R], R = |x|_2 + 1, for conditioning
    const double R = norm2(x) + 1.0;
    const int m = d + 1;
    Vec nodes(m), values(m);
    for (int j = 0; j < m; ++j) {
        nodes[j] = R * std::cos(M_PI * (2.0 * j + 1.0) / (2.0 * m));
        Vec arg(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) arg[i] = nodes[j] * e[i] - x[i];
        values[j] = p.eval(arg);
    }

    // Newton divided differences, then expand to monomial coefficients
    Vec dd = values;
    for (int level = 1; level < m; ++level)
        for (int j = m - 1; j >= level; --j)
            dd[j] = (dd[j] - dd[j - 1]) / (nodes[j] - nodes[j - level]);

    Vec coeff(m, 0.0);
    Vec basis{1.0};  // prod_{i<level}(t - nodes[i])
    coeff[0] = dd[0];
    for (int level = 1; level < m; ++level) {
        Vec next(basis.size() + 1, 0.0);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            next[i + 1] += basis[i];
            next[i] -= nodes[level - 1] * basis[i];
        }
        basis = next;
        for (std::size_t i = 0; i < basis.size(); ++i) coeff[i] += dd[level] * basis[i];
    }
    return UniPoly(coeff);
}

}  // namespace conelift
