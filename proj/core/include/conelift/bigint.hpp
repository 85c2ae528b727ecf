#ifndef CONELIFT_BIGINT_HPP
#define CONELIFT_BIGINT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "conelift/config.hpp"

namespace conelift {

/// Unsigned big integer on 32-bit limbs, little endian. Supports exactly the
/// arithmetic the Ramsey bounds need: add, multiply, compare, decimal
/// output.
class BigUint {
public:
    BigUint() : limbs_{0} {}
    explicit BigUint(std::uint64_t v);
    static BigUint from_decimal(const std::string& s);

    bool is_zero() const { return limbs_.size() == 1 && limbs_[0] == 0; }
    std::size_t bit_size() const;
    /// Value as u64; throws InvalidInput if it does not fit.
    std::uint64_t to_u64() const;
    bool fits_u64() const;

    BigUint& operator+=(const BigUint& o);
    BigUint& operator+=(std::uint64_t v) { return *this += BigUint(v); }
    BigUint operator+(const BigUint& o) const;
    BigUint operator*(const BigUint& o) const;
    BigUint& operator*=(const BigUint& o) { return *this = *this * o; }
    BigUint pow(std::uint64_t e) const;

    int compare(const BigUint& o) const;  // -1 / 0 / +1
    bool operator<(const BigUint& o) const { return compare(o) < 0; }
    bool operator<=(const BigUint& o) const { return compare(o) <= 0; }
    bool operator>(const BigUint& o) const { return compare(o) > 0; }
    bool operator>=(const BigUint& o) const { return compare(o) >= 0; }
    bool operator==(const BigUint& o) const { return compare(o) == 0; }
    bool operator!=(const BigUint& o) const { return compare(o) != 0; }

    std::string to_decimal() const;

private:
    void trim();
    std::vector<std::uint32_t> limbs_;
};

}  // namespace conelift

#endif
