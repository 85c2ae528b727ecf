#include "conelift/json_io.hpp"

#include <fstream>

namespace conelift {

json vec_to_json(const Vec& v) { return json(v); }

Vec vec_from_json(const json& j) {
    if (!j.is_array()) throw InvalidInput("expected a JSON array of numbers");
    Vec v = j.get<Vec>();
    require_finite(v, "vector");
    return v;
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(json(m.row(i)));
    return rows;
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_array()) throw InvalidInput("expected a JSON array of rows");
    std::vector<Vec> rows;
    for (const auto& r : j) rows.push_back(vec_from_json(r));
    return Matrix::from_rows(rows);
}

json multipoly_to_json(const MultiPoly& p) {
    json terms = json::array();
    for (const auto& t : p.terms()) terms.push_back({{"exps", t.exps}, {"coef", t.coef}});
    return {{"nvars", p.nvars()}, {"terms", terms}};
}

MultiPoly multipoly_from_json(const json& j) {
    int nvars = j.at("nvars").get<int>();
    std::vector<MultiPoly::Term> terms;
    for (const auto& t : j.at("terms")) {
        MultiPoly::Term term;
        term.exps = t.at("exps").get<std::vector<int>>();
        term.coef = t.at("coef").get<double>();
        terms.push_back(std::move(term));
    }
    return MultiPoly(nvars, std::move(terms));
}

json sym_to_json(const SymMatrix& s) { return matrix_to_json(s.full()); }

SymMatrix sym_from_json(const json& j, double sym_tol) {
    return SymMatrix::from_full(matrix_from_json(j), sym_tol);
}

json cone_to_json(const ConeDesc& K) {
    json j;
    j["kind"] = K.kind_name();
    switch (K.kind) {
        case ConeKind::Orthant: j["n"] = K.n; break;
        case ConeKind::SecondOrder: j["dim"] = K.n; break;
        case ConeKind::Psd: j["k"] = K.n; break;
        case ConeKind::Exponential: break;
        case ConeKind::Polyhedral:
            j["A"] = matrix_to_json(K.A);
            if (K.lineality) j["lineality"] = matrix_to_json(*K.lineality);
            break;
        case ConeKind::Hyperbolicity:
            j["p"] = multipoly_to_json(K.p);
            j["e"] = vec_to_json(K.e);
            if (K.min_extreme_rank > 1) j["min_extreme_rank"] = K.min_extreme_rank;
            break;
        case ConeKind::DerivativePsd:
            j["k"] = K.n;
            j["level"] = K.level;
            break;
        case ConeKind::Product: {
            json fs = json::array();
            for (const ConeDesc& f : K.factors) fs.push_back(cone_to_json(f));
            j["factors"] = fs;
            break;
        }
    }
    return j;
}

ConeDesc cone_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "orthant") return ConeDesc::orthant(j.at("n").get<int>());
    if (kind == "second-order") return ConeDesc::second_order(j.at("dim").get<int>());
    if (kind == "psd") return ConeDesc::psd(j.at("k").get<int>());
    if (kind == "exponential") return ConeDesc::exponential();
    if (kind == "polyhedral") {
        std::optional<Matrix> lin;
        if (j.contains("lineality")) lin = matrix_from_json(j.at("lineality"));
        return ConeDesc::polyhedral(matrix_from_json(j.at("A")), std::move(lin));
    }
    if (kind == "hyperbolicity") {
        int mer = j.value("min_extreme_rank", 1);
        return ConeDesc::hyperbolicity(multipoly_from_json(j.at("p")),
                                       vec_from_json(j.at("e")), mer);
    }
    if (kind == "derivative-psd")
        return ConeDesc::derivative_psd(j.at("k").get<int>(), j.at("level").get<int>());
    if (kind == "product") {
        std::vector<ConeDesc> fs;
        for (const auto& f : j.at("factors")) fs.push_back(cone_from_json(f));
        return ConeDesc::product(std::move(fs));
    }
    throw InvalidInput("unknown cone kind: " + kind);
}

json face_to_json(const ConeDesc& K, const FaceDesc& F, const Config& cfg) {
    json j;
    switch (F.kind) {
        case FaceKind::Empty: j["family"] = "empty"; return j;
        case FaceKind::OrthantSupport:
            j["family"] = "orthant";
            j["support"] = F.support;
            break;
        case FaceKind::PsdBasis:
            j["family"] = "psd";
            j["basis"] = matrix_to_json(F.basis);
            break;
        case FaceKind::SocZero:
            j["family"] = "second-order";
            j["type"] = "zero";
            break;
        case FaceKind::SocRay:
            j["family"] = "second-order";
            j["type"] = "ray";
            j["ray"] = vec_to_json(F.ray);
            break;
        case FaceKind::SocFull:
            j["family"] = "second-order";
            j["type"] = "full";
            break;
        case FaceKind::PolyActive:
            j["family"] = "polyhedral";
            j["active"] = F.active;
            break;
        case FaceKind::HypRep:
            j["family"] = "hyperbolicity";
            j["rank"] = F.hyp_rank;
            break;
        case FaceKind::Tuple: {
            j["family"] = "product";
            json comps = json::array();
            for (std::size_t i = 0; i < F.components.size(); ++i)
                comps.push_back(face_to_json(K.factors.at(i), F.components[i], cfg));
            j["components"] = comps;
            return j;  // components carry their own reps
        }
    }
    j["rep"] = vec_to_json(face_representative(K, F, cfg));
    return j;
}

FaceDesc face_from_json(const json& j) {
    FaceDesc f;
    const std::string fam = j.at("family").get<std::string>();
    if (fam == "empty") return f;
    if (fam == "orthant") {
        f.kind = FaceKind::OrthantSupport;
        f.support = j.at("support").get<std::vector<int>>();
    } else if (fam == "psd") {
        f.kind = FaceKind::PsdBasis;
        f.basis = matrix_from_json(j.at("basis"));
    } else if (fam == "second-order") {
        const std::string type = j.at("type").get<std::string>();
        if (type == "zero") f.kind = FaceKind::SocZero;
        else if (type == "ray") {
            f.kind = FaceKind::SocRay;
            f.ray = vec_from_json(j.at("ray"));
        } else if (type == "full") f.kind = FaceKind::SocFull;
        else throw InvalidInput("unknown second-order face type: " + type);
    } else if (fam == "polyhedral") {
        f.kind = FaceKind::PolyActive;
        f.active = j.at("active").get<std::vector<int>>();
        if (j.contains("rep")) f.rep = vec_from_json(j.at("rep"));
    } else if (fam == "hyperbolicity") {
        f.kind = FaceKind::HypRep;
        f.hyp_rank = j.at("rank").get<long long>();
        if (j.contains("rep")) f.rep = vec_from_json(j.at("rep"));
    } else if (fam == "product") {
        f.kind = FaceKind::Tuple;
        for (const auto& c : j.at("components")) f.components.push_back(face_from_json(c));
    } else {
        throw InvalidInput("unknown face family: " + fam);
    }
    return f;
}

json certificate_to_json(const NeighborlinessCertificate& cert) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["k"] = cert.k;
    j["family"] = family_name(cert.family);
    if (cert.cone) j["cone"] = cone_to_json(*cert.cone);
    if (cert.partial) j["partial"] = true;
    json rays = json::array();
    for (const auto& r : cert.rays)
        rays.push_back({{"label", r.label}, {"vec", vec_to_json(r.vec)}});
    j["rays"] = rays;
    json certs = json::array();
    for (const auto& c : cert.certs)
        certs.push_back({{"W", c.W}, {"f", vec_to_json(c.f)}});
    j["certs"] = certs;
    return j;
}

NeighborlinessCertificate certificate_from_json(const json& j) {
    NeighborlinessCertificate cert;
    cert.k = j.at("k").get<int>();
    cert.family = family_from_name(j.at("family").get<std::string>());
    if (j.contains("cone")) cert.cone = cone_from_json(j.at("cone"));
    cert.partial = j.value("partial", false);
    for (const auto& r : j.at("rays"))
        cert.rays.push_back(
            {r.at("label").get<std::int64_t>(), vec_from_json(r.at("vec"))});
    for (const auto& c : j.at("certs"))
        cert.certs.push_back(
            {c.at("W").get<std::vector<std::int64_t>>(), vec_from_json(c.at("f"))});
    return cert;
}

json verify_report_to_json(const VerifyReport& rep) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["pass"] = rep.pass;
    j["partial"] = rep.partial;
    j["exact_arithmetic"] = rep.exact_arithmetic;
    j["subsets_checked"] = rep.subsets_checked;
    json viols = json::array();
    for (const auto& v : rep.violations)
        viols.push_back({{"W", v.W}, {"ray", v.ray_label}, {"kind", v.kind}, {"value", v.value}});
    j["violations"] = viols;
    return j;
}

json lift_to_json(const LiftDesc& lift) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["pi"] = matrix_to_json(lift.pi);
    j["L"] = matrix_to_json(lift.L);
    j["K"] = cone_to_json(lift.K);
    if (lift.witness) j["witness"] = vec_to_json(*lift.witness);
    return j;
}

LiftDesc lift_from_json(const json& j) {
    LiftDesc lift;
    lift.pi = matrix_from_json(j.at("pi"));
    lift.L = matrix_from_json(j.at("L"));
    lift.K = cone_from_json(j.at("K"));
    if (j.contains("witness")) lift.witness = vec_from_json(j.at("witness"));
    validate_lift_desc(lift);
    return lift;
}

json factorization_to_json(const FactorizationData& fd) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["cone"] = cone_to_json(fd.cone);
    j["primal_labels"] = fd.primal_labels;
    j["dual_labels"] = fd.dual_labels;
    j["b"] = matrix_to_json(fd.b);
    j["a"] = matrix_to_json(fd.a);
    return j;
}

FactorizationData factorization_from_json(const json& j) {
    FactorizationData fd;
    fd.cone = cone_from_json(j.at("cone"));
    fd.primal_labels = j.at("primal_labels").get<std::vector<std::int64_t>>();
    fd.dual_labels = j.at("dual_labels").get<std::vector<std::vector<std::int64_t>>>();
    fd.b = matrix_from_json(j.at("b"));
    fd.a = matrix_from_json(j.at("a"));
    return fd;
}

json factor_data_to_json(const FactorData& fd) {
    json factors = json::array();
    for (const auto& f : fd.factors)
        factors.push_back({{"p", multipoly_to_json(f.p)}, {"mult", f.mult}});
    return {{"schema_version", kSchemaVersion}, {"e", vec_to_json(fd.e)}, {"factors", factors}};
}

FactorData factor_data_from_json(const json& j) {
    FactorData fd;
    fd.e = vec_from_json(j.at("e"));
    for (const auto& f : j.at("factors"))
        fd.factors.push_back({multipoly_from_json(f.at("p")), f.at("mult").get<int>()});
    return fd;
}

json audit_bundle_to_json(const AuditBundle& bundle) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["certificate"] = certificate_to_json(bundle.cert);
    j["factorization"] = factorization_to_json(bundle.fd);
    return j;
}

AuditBundle audit_bundle_from_json(const json& j) {
    AuditBundle bundle;
    bundle.cert = certificate_from_json(j.at("certificate"));
    bundle.fd = factorization_from_json(j.at("factorization"));
    return bundle;
}

json audit_verdict_to_json(const AuditVerdict& verdict) {
    json j;
    j["schema_version"] = kSchemaVersion;
    switch (verdict.kind) {
        case AuditVerdict::Kind::Consistent: j["verdict"] = "consistent"; break;
        case AuditVerdict::Kind::Refuted: j["verdict"] = "refuted"; break;
        case AuditVerdict::Kind::Inconclusive: j["verdict"] = "inconclusive"; break;
    }
    j["note"] = verdict.note;
    j["monochromatic_count"] = verdict.monochromatic_count;
    if (verdict.witness) {
        const AuditWitness& w = *verdict.witness;
        j["witness"] = {{"W", w.W},         {"s", w.s},
                        {"T", w.T},         {"per_factor", vec_to_json(w.per_factor)},
                        {"total", w.total}, {"recheck_total", w.recheck_total}};
    }
    return j;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open file: " + path);
    return json::parse(in);  // nlohmann reports byte offsets on malformed input
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot open file for writing: " + path);
    out << j.dump(2) << "\n";
}

}  // namespace conelift
