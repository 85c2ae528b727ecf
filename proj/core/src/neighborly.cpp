#include "conelift/neighborly.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace conelift {

namespace {

constexpr double kExactIntMax = 9007199254740992.0;  // 2^53

std::int64_t checked_mul(std::int64_t a, std::int64_t b, const char* what) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw InvalidInput(std::string(what) + ": overflow");
    return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b, const char* what) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw InvalidInput(std::string(what) + ": overflow");
    return r;
}

std::int64_t ipow_checked(std::int64_t base, int e, const char* what) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) r = checked_mul(r, base, what);
    if (std::fabs(static_cast<double>(r)) > kExactIntMax)
        throw InvalidInput(std::string(what) + ": value beyond exact double-integer range");
    return r;
}

bool is_exact_integer(double v) {
    return std::fabs(v) <= kExactIntMax && v == std::nearbyint(v);
}

void check_label(std::int64_t i, const char* what) {
    if (i < 1) throw InvalidInput(std::string(what) + ": labels must be positive integers");
    if (i > 50) throw InvalidInput(std::string(what) + ": label above conditioning cap of 50");
}

std::vector<std::vector<std::int64_t>> k_subsets(const std::vector<std::int64_t>& labels, int k) {
    std::vector<std::vector<std::int64_t>> out;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    const int n = static_cast<int>(labels.size());
    if (k > n || k <= 0) return out;
    while (true) {
        std::vector<std::int64_t> w(k);
        for (int i = 0; i < k; ++i) w[i] = labels[idx[i]];
        out.push_back(std::move(w));
        int j = k - 1;
        while (j >= 0 && idx[j] == n - k + j) --j;
        if (j < 0) break;
        ++idx[j];
        for (int l = j + 1; l < k; ++l) idx[l] = idx[l - 1] + 1;
    }
    return out;
}

}  // namespace

SymMatrix moment_ray(int k, std::int64_t i) {
    if (k < 1) throw InvalidInput("moment_ray: k must be >= 1");
    check_label(i, "moment_ray");
    ipow_checked(i, k, "moment_ray");  // overflow guard on i^k
    Vec v(static_cast<std::size_t>(k) + 1);
    double pw = 1.0;
    for (int j = 0; j <= k; ++j) {
        v[j] = pw;
        pw *= static_cast<double>(i);
    }
    double n2 = dot(v, v);
    SymMatrix m = SymMatrix::outer(v);
    return m.scaled(1.0 / n2);
}

std::vector<std::int64_t> moment_coeffs(const std::vector<std::int64_t>& W) {
    if (W.empty()) throw InvalidInput("moment_coeffs: empty subset");
    std::vector<std::int64_t> c{1};
    for (std::int64_t r : W) {
        check_label(r, "moment_coeffs");
        std::vector<std::int64_t> next(c.size() + 1, 0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i + 1] = checked_add(next[i + 1], c[i], "moment_coeffs");
            next[i] = checked_add(next[i], checked_mul(-r, c[i], "moment_coeffs"),
                                  "moment_coeffs");
        }
        c = next;
    }
    for (std::int64_t v : c)
        if (std::fabs(static_cast<double>(v)) > kExactIntMax)
            throw InvalidInput("moment_coeffs: coefficient beyond exact double-integer range");
    return c;
}

SymMatrix moment_certificate(int k, const std::vector<std::int64_t>& W) {
    if (static_cast<int>(W.size()) != k)
        throw InvalidInput("moment_certificate: |W| must equal k");
    std::vector<std::int64_t> c = moment_coeffs(W);
    Vec cd(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) cd[i] = static_cast<double>(c[i]);
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i; j < c.size(); ++j)
            checked_mul(c[i], c[j], "moment_certificate");  // entry overflow guard
    return SymMatrix::outer(cd);
}

Vec pointeval_ray(int d, std::int64_t i) {
    if (d < 1) throw InvalidInput("pointeval_ray: d must be >= 1");
    check_label(i, "pointeval_ray");
    ipow_checked(i, 2 * d, "pointeval_ray");
    Vec v(static_cast<std::size_t>(2 * d) + 1);
    double pw = 1.0;
    for (int j = 0; j <= 2 * d; ++j) {
        v[j] = pw;
        pw *= static_cast<double>(i);
    }
    return scale(1.0 / norm2(v), v);
}

UniPoly pointeval_certificate(int d, const std::vector<std::int64_t>& W) {
    if (static_cast<int>(W.size()) != d)
        throw InvalidInput("pointeval_certificate: |W| must equal d");
    std::vector<std::int64_t> c = moment_coeffs(W);  // prod (t - i)
    // square it in integers
    std::vector<std::int64_t> q(2 * c.size() - 1, 0);
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < c.size(); ++j)
            q[i + j] = checked_add(q[i + j], checked_mul(c[i], c[j], "pointeval_certificate"),
                                   "pointeval_certificate");
    Vec qd(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (std::fabs(static_cast<double>(q[i])) > kExactIntMax)
            throw InvalidInput("pointeval_certificate: coefficient beyond exact range");
        qd[i] = static_cast<double>(q[i]);
    }
    return UniPoly(qd);
}

NeighborlinessCertificate make_moment_bundle(int k, int N) {
    if (N < k) throw InvalidInput("make_moment_bundle: need |V| >= k");
    NeighborlinessCertificate cert;
    cert.k = k;
    cert.family = CertFamily::PsdMoment;
    cert.cone = ConeDesc::psd(k + 1);
    std::vector<std::int64_t> labels;
    for (std::int64_t i = 1; i <= N; ++i) {
        labels.push_back(i);
        cert.rays.push_back({i, moment_ray(k, i).full_vec()});
    }
    for (auto& W : k_subsets(labels, k))
        cert.certs.push_back({W, moment_certificate(k, W).full_vec()});
    return cert;
}

NeighborlinessCertificate make_pointeval_bundle(int d, int N) {
    if (N < d) throw InvalidInput("make_pointeval_bundle: need |V| >= d");
    NeighborlinessCertificate cert;
    cert.k = d;
    cert.family = CertFamily::PointEval;
    std::vector<std::int64_t> labels;
    for (std::int64_t i = 1; i <= N; ++i) {
        labels.push_back(i);
        cert.rays.push_back({i, pointeval_ray(d, i)});
    }
    for (auto& W : k_subsets(labels, d))
        cert.certs.push_back({W, pointeval_certificate(d, W).coeffs()});
    return cert;
}

std::string family_name(CertFamily f) {
    switch (f) {
        case CertFamily::PsdMoment: return "psd-moment";
        case CertFamily::PointEval: return "point-eval";
        case CertFamily::Custom: return "custom";
    }
    return "?";
}

CertFamily family_from_name(const std::string& name) {
    if (name == "psd-moment") return CertFamily::PsdMoment;
    if (name == "point-eval") return CertFamily::PointEval;
    if (name == "custom") return CertFamily::Custom;
    throw InvalidInput("unknown certificate family: " + name);
}

namespace {

// exact signed inner product <f, v_i v_i^T> * |v_i|^2 for the moment family,
// provided f has exact integer entries; returns nullopt when inexact
std::optional<__int128> moment_pairing_exact(const Vec& f, int k, std::int64_t label) {
    const int n = k + 1;
    if (f.size() != static_cast<std::size_t>(n) * n) return std::nullopt;
    double fmax = 0.0;
    for (double v : f) {
        if (!is_exact_integer(v)) return std::nullopt;
        fmax = std::max(fmax, std::fabs(v));
    }
    // coarse magnitude guard against 128-bit overflow
    double vmax = std::pow(static_cast<double>(label), k);
    if (fmax * vmax * vmax * n * n > 1e36) return std::nullopt;
    std::vector<__int128> vi(n);
    __int128 pw = 1;
    for (int j = 0; j < n; ++j) {
        vi[j] = pw;
        pw *= label;
    }
    __int128 s = 0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            __int128 term = static_cast<__int128>(static_cast<std::int64_t>(f[a * n + b]));
            term *= vi[a];
            term *= vi[b];
            s += term;
        }
    return s;
}

std::optional<__int128> pointeval_pairing_exact(const Vec& f, std::int64_t label) {
    for (double v : f)
        if (!is_exact_integer(v)) return std::nullopt;
    // q(label) by Horner in 128-bit, guarding against overflow coarsely
    __int128 acc = 0;
    const __int128 cap = static_cast<__int128>(1) << 100;
    for (std::size_t i = f.size(); i-- > 0;) {
        acc = acc * label + static_cast<std::int64_t>(f[i]);
        if (acc > cap || acc < -cap) return std::nullopt;
    }
    return acc;
}

bool dual_check(const NeighborlinessCertificate& cert, const Vec& f, double tol,
                const Config& cfg) {
    switch (cert.family) {
        case CertFamily::PsdMoment: {
            ConeDesc psd = cert.cone ? *cert.cone : ConeDesc::psd(cert.k + 1);
            return member(psd, f, tol, cfg);  // self-dual
        }
        case CertFamily::PointEval: {
            // nonnegativity on R: even degree, positive lead, and q >= -tol at
            // every critical point
            UniPoly q{f};
            if (q.degree() % 2 != 0 || q.lead() <= 0.0) return false;
            if (q.degree() == 0) return q.coeffs()[0] >= 0.0;
            RootResult crit = real_roots(q.derivative(), cfg.tol, cfg);
            double scale = std::max(1.0, q.norm_inf());
            for (const auto& [c, m] : crit.clusters) {
                (void)m;
                if (q.eval(c) < -tol * scale) return false;
            }
            return true;
        }
        case CertFamily::Custom: {
            if (!cert.cone)
                throw InvalidInput("verify_neighborly: custom family requires a cone reference");
            return dual_member(*cert.cone, f, tol, cfg);
        }
    }
    return false;
}

}  // namespace

VerifyReport verify_neighborly(const NeighborlinessCertificate& cert, double tol,
                               const Config& cfg) {
    VerifyReport rep;
    rep.partial = cert.partial;
    rep.exact_arithmetic = true;
    if (cert.k < 1) throw InvalidInput("verify_neighborly: k must be >= 1");
    if (static_cast<int>(cert.rays.size()) < cert.k)
        throw InvalidInput("verify_neighborly: |V| >= k violated");

    // ray normalization invariant
    for (const auto& ray : cert.rays) {
        double n = norm2(ray.vec);
        if (std::fabs(n - 1.0) > 1e-10)
            rep.violations.push_back({{}, ray.label, "ray-norm", n});
    }

    // completeness in full mode
    std::vector<std::int64_t> labels;
    for (const auto& r : cert.rays) labels.push_back(r.label);
    std::sort(labels.begin(), labels.end());
    std::map<std::vector<std::int64_t>, const Vec*> table;
    for (const auto& c : cert.certs) {
        std::vector<std::int64_t> w = c.W;
        std::sort(w.begin(), w.end());
        table[w] = &c.f;
    }
    std::vector<std::vector<std::int64_t>> wanted = k_subsets(labels, cert.k);
    if (!cert.partial) {
        for (const auto& w : wanted)
            if (!table.count(w)) {
                throw InvalidInput("verify_neighborly: missing certificate for a k-subset");
            }
    }

    for (const auto& [W, fptr] : table) {
        const Vec& f = *fptr;
        ++rep.subsets_checked;
        if (!dual_check(cert, f, tol, cfg)) {
            rep.violations.push_back({W, 0, "dual", 0.0});
        }
        for (const auto& ray : cert.rays) {
            bool in_W = std::binary_search(W.begin(), W.end(), ray.label);
            // exact integer pairing when the family structure allows it
            std::optional<__int128> exact;
            if (cert.family == CertFamily::PsdMoment)
                exact = moment_pairing_exact(f, cert.k, ray.label);
            else if (cert.family == CertFamily::PointEval)
                exact = pointeval_pairing_exact(f, ray.label);
            double val;
            bool is_zero, is_pos;
            if (exact) {
                is_zero = (*exact == 0);
                is_pos = (*exact > 0);
                val = static_cast<double>(*exact);
            } else {
                rep.exact_arithmetic = false;
                val = dot(f, ray.vec);
                double sc = tol * std::max(1.0, norm2(f) * norm2(ray.vec));
                is_zero = std::fabs(val) <= sc;
                is_pos = val > sc;
            }
            if (in_W && !is_zero) {
                ++rep.zero_violations;
                rep.violations.push_back({W, ray.label, "zero", val});
            } else if (!in_W && !is_pos) {
                ++rep.positive_violations;
                rep.violations.push_back({W, ray.label, "positive", val});
            }
        }
    }
    rep.pass = rep.violations.empty();
    return rep;
}

}  // namespace conelift
