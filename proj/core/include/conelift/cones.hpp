#ifndef CONELIFT_CONES_HPP
#define CONELIFT_CONES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conelift/config.hpp"
#include "conelift/hyperbolic.hpp"
#include "conelift/linalg.hpp"
#include "conelift/poly.hpp"

namespace conelift {

enum class ConeKind {
    Orthant,        // R_+^n (n = 0 allowed internally: the trivial cone {0})
    SecondOrder,    // {(x0, xbar) : |xbar|_2 <= x0}, ambient dim >= 2
    Psd,            // k x k PSD matrices, ambient = k^2 row-major entries
    Exponential,    // cl{(x,t,y) : y e^{x/y} <= t, y > 0} in R^3
    Polyhedral,     // {x : A x >= 0}, optional cached lineality basis
    Hyperbolicity,  // Lambda_+(p, e) in the p-variable space
    DerivativePsd,  // E_1 >= 0, ..., E_{k-level} >= 0 over k x k symmetric
    Product,
};

/// Tagged description of a closed convex cone.
struct ConeDesc {
    ConeKind kind = ConeKind::Orthant;
    int n = 0;                         // orthant n / SOC ambient / PSD & DerivativePsd order
    int level = 0;                     // DerivativePsd level
    int min_extreme_rank = 1;          // Hyperbolicity: caller-asserted min extreme-ray rank
    Matrix A;                          // Polyhedral
    std::optional<Matrix> lineality;   // Polyhedral: optional basis of Lin(C)
    MultiPoly p;                       // Hyperbolicity
    Vec e;                             // Hyperbolicity
    std::vector<ConeDesc> factors;     // Product

    static ConeDesc orthant(int n);
    static ConeDesc second_order(int ambient_dim);
    static ConeDesc psd(int k);
    static ConeDesc exponential();
    static ConeDesc polyhedral(Matrix A, std::optional<Matrix> lineality = std::nullopt);
    static ConeDesc hyperbolicity(MultiPoly p, Vec e, int min_extreme_rank = 1);
    static ConeDesc derivative_psd(int k, int level);
    static ConeDesc product(std::vector<ConeDesc> factors);

    std::size_t ambient_dim() const;
    std::string kind_name() const;
};

enum class FaceKind {
    Empty,
    OrthantSupport,
    PsdBasis,
    SocZero,
    SocRay,
    SocFull,
    PolyActive,
    HypRep,
    Tuple,
};

/// Family-specific face representation. Every nonempty face can synthesize a
/// relative-interior representative in the cone's ambient coordinates.
struct FaceDesc {
    FaceKind kind = FaceKind::Empty;
    std::vector<int> support;          // OrthantSupport, sorted
    Matrix basis;                      // PsdBasis: order x rank, orthonormal columns
    Vec ray;                           // SocRay: unit boundary direction
    std::vector<int> active;           // PolyActive: canonical active rows, sorted
    Vec rep;                           // PolyActive / HypRep representative
    long long hyp_rank = -1;           // HypRep
    std::vector<FaceDesc> components;  // Tuple

    static FaceDesc empty() { return FaceDesc{}; }
};

// ---- membership oracles -------------------------------------------------------

bool member(const ConeDesc& K, const Vec& x, double tol,
            const Config& cfg = default_config());
/// Closed-form duals only: orthant/SOC/PSD self-dual, exponential closed form,
/// polyhedral via generators (A limited to 20 rows). Hyperbolicity and
/// derivative cones throw Unsupported ("dual oracle unavailable").
bool dual_member(const ConeDesc& K, const Vec& y, double tol,
                 const Config& cfg = default_config());
bool relint_member(const ConeDesc& K, const Vec& x, double tol,
                   const Config& cfg = default_config());

// ---- faces ---------------------------------------------------------------------

struct MinimalFaceResult {
    FaceDesc face;
    bool ambiguous = false;  // a rank/support decision fell in the tolerance band
};

/// Smallest face of K containing x (x must be a member).
FaceDesc minimal_face(const ConeDesc& K, const Vec& x, const Config& cfg = default_config());
MinimalFaceResult minimal_face_ex(const ConeDesc& K, const Vec& x,
                                  const Config& cfg = default_config());

/// Relative-interior representative of a nonempty face.
Vec face_representative(const ConeDesc& K, const FaceDesc& F,
                        const Config& cfg = default_config());

/// Lattice join: equals minimal_face at the sum of relint representatives.
FaceDesc face_join(const ConeDesc& K, const FaceDesc& F1, const FaceDesc& F2,
                   const Config& cfg = default_config());

/// Inclusion test F1 subseteq F2, family-specific. Mixed families throw.
bool face_leq(const ConeDesc& K, const FaceDesc& F1, const FaceDesc& F2,
              const Config& cfg = default_config());
bool face_eq(const ConeDesc& K, const FaceDesc& F1, const FaceDesc& F2,
             const Config& cfg = default_config());

// ---- chains ----------------------------------------------------------------------

struct ChainLength {
    long long value = 0;
    bool exact = false;
};

/// Maximum length of a chain of nonempty faces, or an upper bound
/// (exact flag distinguishes). Exact families: orthant, SOC, PSD,
/// polyhedral (ambient dim <= 10), products of exact families.
ChainLength chain_length(const ConeDesc& K, const Config& cfg = default_config());

/// Exact chain length of a face of K; throws for families where only
/// bounds are available (hyperbolicity representations).
long long face_chain_length(const ConeDesc& K, const FaceDesc& F,
                            const Config& cfg = default_config());

/// Strict chain F_1 < ... < F_target of nonempty faces, verified by
/// face_leq. Supported for orthant, PSD, polyhedral and products of these.
std::vector<FaceDesc> chain_witness(const ConeDesc& K, long long target,
                                    const Config& cfg = default_config());

/// Greedy inclusion-minimal subset I with F(sum_{i in I} x_i) =
/// F(sum_i x_i); |I| <= l(F(sum)) - 1 by the chain-length bound.
/// Indices are 0-based, ascending removal order.
std::vector<std::size_t> subset_select(const ConeDesc& K, const std::vector<Vec>& points,
                                       const Config& cfg = default_config());

// ---- polyhedral helpers (exposed for tests) ---------------------------------------

/// Rows that vanish identically on {x : Ax >= 0, A_eq x = 0}.
std::vector<int> polyhedral_implicit_rows(const Matrix& A, const std::vector<int>& eq,
                                          const Config& cfg = default_config());

/// Exact chain length of the polyhedral cone {x in C : A_eq x = 0} by
/// recursive active-set search, plus one maximal chain of active sets.
std::pair<long long, std::vector<std::vector<int>>> polyhedral_chain(
    const Matrix& A, const std::vector<int>& eq, const Config& cfg = default_config());

}  // namespace conelift

#endif
