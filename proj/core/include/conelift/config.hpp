#ifndef CONELIFT_CONFIG_HPP
#define CONELIFT_CONFIG_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace conelift {

/// Base error type for the whole library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Input violates a documented precondition or invariant.
class InvalidInput : public Error {
public:
    explicit InvalidInput(const std::string& what) : Error(what) {}
};

/// An iterative method hit its cap, or a tolerance target could not be met.
class NumericFailure : public Error {
public:
    explicit NumericFailure(const std::string& what) : Error(what) {}
};

/// A requested oracle has no implementation for the given cone family.
class Unsupported : public Error {
public:
    explicit Unsupported(const std::string& what) : Error(what) {}
};

/// All tolerances and iteration caps flow through this single structure.
/// Tolerances are absolute, scaled by input magnitude at the point of use.
struct Config {
    double tol = 1e-9;             // base tolerance
    double face_tol = 1e-8;        // subspace / principal-angle comparisons
    double cluster_factor = 1e2;   // real_roots clusters roots within cluster_factor*tol
    double ambiguity_factor = 50;  // near-threshold band triggering "ambiguous" rank calls
    double strict_slack = 1e-7;    // margin required of strict rows in feasible_point
    int jacobi_sweep_cap = 100;
    int simplex_iter_cap = 20000;
    int dykstra_iter_cap = 100000;
    double dykstra_tol = 1e-9;
    int hyp_samples = 200;         // random directions for hyperbolicity_check
    std::uint64_t seed = 0x5eed5eedULL;
    std::uint64_t ramsey_loop_cap = 1u << 24;  // max summands materialized by ramsey_upper
    std::uint64_t ramsey_bit_cap = 1u << 21;   // max bit length of a ramsey_upper result
    std::uint64_t brute_node_budget = 1u << 25;  // colorings explored by ramsey_brute
};

/// Default-constructed configuration shared by convenience overloads.
inline const Config& default_config() {
    static const Config cfg{};
    return cfg;
}

/// Deterministic RNG: xoshiro-free, fully specified here so that seeded runs
/// are reproducible independent of the standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t next_u64() {
        // splitmix64
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller (one value per call, cached pair).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 <= 1e-300) u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return n ? next_u64() % n : 0; }

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace conelift

#endif
