#ifndef CONELIFT_NEIGHBORLY_HPP
#define CONELIFT_NEIGHBORLY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conelift/cones.hpp"
#include "conelift/linalg.hpp"
#include "conelift/poly.hpp"

namespace conelift {

// ---- explicit families ----------------------------------------------------------

/// Normalized moment ray v_i v_i^T / |v_i|^2 with v_i = (1, i, ..., i^k);
/// unit trace, rank one, order k+1. Labels capped at 50 and guarded against
/// exceeding exact double-integer range.
SymMatrix moment_ray(int k, std::int64_t i);

/// Integer coefficients (ascending) of prod_{i in W} (t - i); |W| = k.
std::vector<std::int64_t> moment_coeffs(const std::vector<std::int64_t>& W);

/// f_W = c(W) c(W)^T for the moment family; entries are exact integers.
SymMatrix moment_certificate(int k, const std::vector<std::int64_t>& W);

/// Normalized point-evaluation ray (1, i, ..., i^{2d}) / norm.
Vec pointeval_ray(int d, std::int64_t i);

/// q_W(t) = prod_{i in W} (t - i)^2, a nonnegative polynomial of degree 2d
/// vanishing exactly on W among positive integers; |W| = d.
UniPoly pointeval_certificate(int d, const std::vector<std::int64_t>& W);

// ---- certificates ------------------------------------------------------------------

enum class CertFamily { PsdMoment, PointEval, Custom };

std::string family_name(CertFamily f);
CertFamily family_from_name(const std::string& name);

/// A k-neighborliness certificate: labeled normalized extreme rays V plus a
/// dual functional f_W for every k-subset W of labels (or a declared partial
/// collection).
struct NeighborlinessCertificate {
    int k = 1;
    CertFamily family = CertFamily::Custom;
    struct Ray {
        std::int64_t label = 0;
        Vec vec;  // normalized, in the ambient coordinates of the cone
    };
    std::vector<Ray> rays;
    struct Entry {
        std::vector<std::int64_t> W;  // sorted labels, |W| = k
        Vec f;
    };
    std::vector<Entry> certs;
    std::optional<ConeDesc> cone;  // the cone C itself; required for Custom
    bool partial = false;
};

/// Complete self-verifying moment bundle for k and labels 1..N.
NeighborlinessCertificate make_moment_bundle(int k, int N);
/// Complete point-evaluation bundle for degree d and labels 1..N.
NeighborlinessCertificate make_pointeval_bundle(int d, int N);

struct VerifyViolation {
    std::vector<std::int64_t> W;
    std::int64_t ray_label = 0;  // 0 when the violation is not tied to a ray
    std::string kind;            // "zero", "positive", "dual", "ray-norm", "missing"
    double value = 0.0;
};

struct VerifyReport {
    bool pass = false;
    bool partial = false;
    bool exact_arithmetic = false;  // integer fast path used for every subset
    std::size_t subsets_checked = 0;
    std::size_t zero_violations = 0;
    std::size_t positive_violations = 0;
    std::vector<VerifyViolation> violations;
};

/// Checks dual membership of every f_W and the Def-1.3 sign pattern:
/// <f_W, v> = 0 (within tol * scale) for v in W, and > tol * scale for
/// v in V \ W. The psd-moment and point-eval families are decided in exact
/// 64/128-bit integer arithmetic whenever the stored data is integral.
VerifyReport verify_neighborly(const NeighborlinessCertificate& cert, double tol,
                               const Config& cfg = default_config());

}  // namespace conelift

#endif
