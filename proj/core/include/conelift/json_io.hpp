#ifndef CONELIFT_JSON_IO_HPP
#define CONELIFT_JSON_IO_HPP

#include <json.hpp>
#include <string>

#include "conelift/cones.hpp"
#include "conelift/hyperbolic.hpp"
#include "conelift/lifts.hpp"
#include "conelift/neighborly.hpp"
#include "conelift/obstruction.hpp"
#include "conelift/poly.hpp"

namespace conelift {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// vectors and matrices
json vec_to_json(const Vec& v);
Vec vec_from_json(const json& j);
json matrix_to_json(const Matrix& m);        // nested row arrays
Matrix matrix_from_json(const json& j);

// MultiPoly: {"nvars": n, "terms": [{"exps": [...], "coef": c}, ...]}
json multipoly_to_json(const MultiPoly& p);
MultiPoly multipoly_from_json(const json& j);

// SymMatrix: row-major full matrix; symmetry validated on load
json sym_to_json(const SymMatrix& s);
SymMatrix sym_from_json(const json& j, double sym_tol = 1e-9);

// ConeDesc: {"kind": "psd", "k": 3} | {"kind": "product", "factors": [...]} | ...
json cone_to_json(const ConeDesc& K);
ConeDesc cone_from_json(const json& j);

// FaceDesc, serialized with a representative point when available
json face_to_json(const ConeDesc& K, const FaceDesc& F, const Config& cfg = default_config());
FaceDesc face_from_json(const json& j);

// certificate bundle
json certificate_to_json(const NeighborlinessCertificate& cert);
NeighborlinessCertificate certificate_from_json(const json& j);
json verify_report_to_json(const VerifyReport& rep);

// lifts and factorizations
json lift_to_json(const LiftDesc& lift);
LiftDesc lift_from_json(const json& j);
json factorization_to_json(const FactorizationData& fd);
FactorizationData factorization_from_json(const json& j);
json factor_data_to_json(const FactorData& fd);
FactorData factor_data_from_json(const json& j);

// audit bundle and verdict
json audit_bundle_to_json(const AuditBundle& bundle);
AuditBundle audit_bundle_from_json(const json& j);
json audit_verdict_to_json(const AuditVerdict& verdict);

// file helpers
json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

}  // namespace conelift

#endif
