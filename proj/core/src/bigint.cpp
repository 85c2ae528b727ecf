#include "conelift/bigint.hpp"

#include <algorithm>

namespace conelift {

BigUint::BigUint(std::uint64_t v) {
    limbs_.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
    if (v >> 32) limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
}

void BigUint::trim() {
    while (limbs_.size() > 1 && limbs_.back() == 0) limbs_.pop_back();
}

BigUint BigUint::from_decimal(const std::string& s) {
    if (s.empty()) throw InvalidInput("BigUint::from_decimal: empty string");
    BigUint r(0);
    BigUint ten(10);
    for (char c : s) {
        if (c < '0' || c > '9') throw InvalidInput("BigUint::from_decimal: non-digit");
        r = r * ten;
        r += static_cast<std::uint64_t>(c - '0');
    }
    return r;
}

std::size_t BigUint::bit_size() const {
    if (is_zero()) return 0;
    std::size_t bits = (limbs_.size() - 1) * 32;
    std::uint32_t top = limbs_.back();
    while (top) {
        ++bits;
        top >>= 1;
    }
    return bits;
}

bool BigUint::fits_u64() const { return bit_size() <= 64; }

std::uint64_t BigUint::to_u64() const {
    if (!fits_u64()) throw InvalidInput("BigUint::to_u64: value does not fit");
    std::uint64_t v = limbs_[0];
    if (limbs_.size() > 1) v |= static_cast<std::uint64_t>(limbs_[1]) << 32;
    return v;
}

BigUint& BigUint::operator+=(const BigUint& o) {
    std::uint64_t carry = 0;
    std::size_t n = std::max(limbs_.size(), o.limbs_.size());
    limbs_.resize(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t s = carry + limbs_[i] + (i < o.limbs_.size() ? o.limbs_[i] : 0);
        limbs_[i] = static_cast<std::uint32_t>(s & 0xffffffffu);
        carry = s >> 32;
    }
    if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
    return *this;
}

BigUint BigUint::operator+(const BigUint& o) const {
    BigUint r = *this;
    r += o;
    return r;
}

BigUint BigUint::operator*(const BigUint& o) const {
    BigUint r;
    r.limbs_.assign(limbs_.size() + o.limbs_.size(), 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        if (limbs_[i] == 0) continue;
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < o.limbs_.size(); ++j) {
            std::uint64_t cur = r.limbs_[i + j] +
                                static_cast<std::uint64_t>(limbs_[i]) * o.limbs_[j] + carry;
            r.limbs_[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
        }
        std::size_t pos = i + o.limbs_.size();
        while (carry) {
            std::uint64_t cur = r.limbs_[pos] + carry;
            r.limbs_[pos] = static_cast<std::uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
            ++pos;
        }
    }
    r.trim();
    return r;
}

BigUint BigUint::pow(std::uint64_t e) const {
    BigUint base = *this;
    BigUint r(1);
    while (e) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

int BigUint::compare(const BigUint& o) const {
    if (limbs_.size() != o.limbs_.size())
        return limbs_.size() < o.limbs_.size() ? -1 : 1;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        if (limbs_[i] != o.limbs_[i]) return limbs_[i] < o.limbs_[i] ? -1 : 1;
    }
    return 0;
}

std::string BigUint::to_decimal() const {
    if (is_zero()) return "0";
    std::vector<std::uint32_t> work(limbs_.rbegin(), limbs_.rend());  // big endian
    std::string out;
    while (!(work.size() == 1 && work[0] == 0)) {
        // divide by 10^9 in place
        std::uint64_t rem = 0;
        for (std::size_t i = 0; i < work.size(); ++i) {
            std::uint64_t cur = (rem << 32) | work[i];
            work[i] = static_cast<std::uint32_t>(cur / 1000000000u);
            rem = cur % 1000000000u;
        }
        while (work.size() > 1 && work.front() == 0) work.erase(work.begin());
        std::string chunk = std::to_string(rem);
        bool last = (work.size() == 1 && work[0] == 0);
        if (!last) chunk = std::string(9 - chunk.size(), '0') + chunk;
        out = chunk + out;
    }
    return out;
}

}  // namespace conelift
