#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace acmatch {

// Unsigned arbitrary-precision integer, little-endian 32-bit limbs.
// Surjection counts grow factorially, so 64-bit arithmetic is not enough;
// this covers the handful of operations the rank/unrank machinery needs.
class BigUint {
  public:
    BigUint() = default;
    BigUint(std::uint64_t value);  // NOLINT(google-explicit-constructor)

    static BigUint from_decimal(const std::string& text);

    bool is_zero() const { return limbs_.empty(); }
    bool fits_u64() const { return limbs_.size() <= 2; }
    std::uint64_t to_u64() const;  // DomainError if the value does not fit

    BigUint& operator+=(const BigUint& other);
    BigUint& operator-=(const BigUint& other);  // DomainError on underflow
    BigUint& operator*=(const BigUint& other);

    friend BigUint operator+(BigUint a, const BigUint& b) { return a += b; }
    friend BigUint operator-(BigUint a, const BigUint& b) { return a -= b; }
    friend BigUint operator*(BigUint a, const BigUint& b) { return a *= b; }

    // Quotient in place, returns the remainder.
    std::uint32_t divmod_u32(std::uint32_t divisor);

    int compare(const BigUint& other) const;
    friend bool operator==(const BigUint& a, const BigUint& b) { return a.compare(b) == 0; }
    friend bool operator!=(const BigUint& a, const BigUint& b) { return a.compare(b) != 0; }
    friend bool operator<(const BigUint& a, const BigUint& b) { return a.compare(b) < 0; }
    friend bool operator<=(const BigUint& a, const BigUint& b) { return a.compare(b) <= 0; }
    friend bool operator>(const BigUint& a, const BigUint& b) { return a.compare(b) > 0; }
    friend bool operator>=(const BigUint& a, const BigUint& b) { return a.compare(b) >= 0; }

    std::string to_string() const;

  private:
    void trim();
    std::vector<std::uint32_t> limbs_;  // no leading zero limbs; empty == 0
};

BigUint pow_u32(std::uint32_t base, std::uint32_t exponent);
BigUint binomial(std::uint32_t n, std::uint32_t k);
BigUint factorial(std::uint32_t n);

}  // namespace acmatch
