#ifndef CONELIFT_SIMPLEX_HPP
#define CONELIFT_SIMPLEX_HPP

#include <set>
#include <vector>

#include "conelift/config.hpp"
#include "conelift/linalg.hpp"

namespace conelift {

/// Outcome of the dense two-phase simplex on
///   minimize c.z  subject to  E z = f,  z >= 0.
struct LpResult {
    enum class Status { Optimal, Infeasible, Unbounded, IterLimit };
    Status status = Status::Infeasible;
    Vec z;
    double objective = 0.0;
};

LpResult lp_solve(const Matrix& E, const Vec& f, const Vec& c,
                  const Config& cfg = default_config());

/// Feasibility of E z = f, z >= 0 (phase one only); fills z on success.
bool lp_feasible_eq_nonneg(const Matrix& E, const Vec& f, Vec* z = nullptr,
                           const Config& cfg = default_config());

/// Outcome of feasible_point. `Infeasible` is proof-free: it reports that no
/// point with the requested strict margins was located at the configured
/// slack, not a certificate of emptiness (tolerance semantics documented in
/// the README).
struct FeasiblePointResult {
    enum class Status { Feasible, Infeasible } status = Status::Infeasible;
    Vec x;
    double margin = 0.0;  // achieved strict-row margin (after row normalization)
};

/// Searches for x with A x >= b, rows in `strict_rows` satisfied with margin
/// >= cfg.strict_slack (rows are normalized by their 2-norm first). Column
/// count capped at 64.
FeasiblePointResult feasible_point(const Matrix& A, const Vec& b,
                                   const std::set<std::size_t>& strict_rows,
                                   const Config& cfg = default_config());

}  // namespace conelift

#endif
