#include "acmatch/bigint.hpp"

#include <algorithm>

#include "acmatch/error.hpp"

namespace acmatch {

BigUint::BigUint(std::uint64_t value) {
    if (value != 0) {
        limbs_.push_back(static_cast<std::uint32_t>(value));
        if (value >> 32) {
            limbs_.push_back(static_cast<std::uint32_t>(value >> 32));
        }
    }
}

BigUint BigUint::from_decimal(const std::string& text) {
    if (text.empty()) {
        throw DomainError("BigUint: empty decimal string");
    }
    BigUint result;
    for (char c : text) {
        if (c < '0' || c > '9') {
            throw DomainError("BigUint: bad decimal digit");
        }
        result *= BigUint(10);
        result += BigUint(static_cast<std::uint64_t>(c - '0'));
    }
    return result;
}

std::uint64_t BigUint::to_u64() const {
    if (limbs_.size() > 2) {
        throw DomainError("BigUint: value does not fit in 64 bits");
    }
    std::uint64_t value = 0;
    if (limbs_.size() > 1) value = static_cast<std::uint64_t>(limbs_[1]) << 32;
    if (!limbs_.empty()) value |= limbs_[0];
    return value;
}

void BigUint::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) {
        limbs_.pop_back();
    }
}

BigUint& BigUint::operator+=(const BigUint& other) {
    const std::size_t n = std::max(limbs_.size(), other.limbs_.size());
    limbs_.resize(n, 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t sum = carry + limbs_[i];
        if (i < other.limbs_.size()) sum += other.limbs_[i];
        limbs_[i] = static_cast<std::uint32_t>(sum);
        carry = sum >> 32;
    }
    if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
    return *this;
}

BigUint& BigUint::operator-=(const BigUint& other) {
    if (compare(other) < 0) {
        throw DomainError("BigUint: subtraction underflow");
    }
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        std::int64_t diff = static_cast<std::int64_t>(limbs_[i]) - borrow;
        if (i < other.limbs_.size()) diff -= other.limbs_[i];
        if (diff < 0) {
            diff += (std::int64_t{1} << 32);
            borrow = 1;
        } else {
            borrow = 0;
        }
        limbs_[i] = static_cast<std::uint32_t>(diff);
    }
    trim();
    return *this;
}

BigUint& BigUint::operator*=(const BigUint& other) {
    if (is_zero() || other.is_zero()) {
        limbs_.clear();
        return *this;
    }
    std::vector<std::uint32_t> product(limbs_.size() + other.limbs_.size(), 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < other.limbs_.size(); ++j) {
            std::uint64_t cur = product[i + j] +
                                static_cast<std::uint64_t>(limbs_[i]) * other.limbs_[j] + carry;
            product[i + j] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        std::size_t k = i + other.limbs_.size();
        while (carry) {
            std::uint64_t cur = product[k] + carry;
            product[k] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
            ++k;
        }
    }
    limbs_ = std::move(product);
    trim();
    return *this;
}

std::uint32_t BigUint::divmod_u32(std::uint32_t divisor) {
    if (divisor == 0) {
        throw DomainError("BigUint: division by zero");
    }
    std::uint64_t rem = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        std::uint64_t cur = (rem << 32) | limbs_[i];
        limbs_[i] = static_cast<std::uint32_t>(cur / divisor);
        rem = cur % divisor;
    }
    trim();
    return static_cast<std::uint32_t>(rem);
}

int BigUint::compare(const BigUint& other) const {
    if (limbs_.size() != other.limbs_.size()) {
        return limbs_.size() < other.limbs_.size() ? -1 : 1;
    }
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        if (limbs_[i] != other.limbs_[i]) {
            return limbs_[i] < other.limbs_[i] ? -1 : 1;
        }
    }
    return 0;
}

std::string BigUint::to_string() const {
    if (is_zero()) return "0";
    BigUint scratch = *this;
    std::string digits;
    while (!scratch.is_zero()) {
        std::uint32_t chunk = scratch.divmod_u32(1'000'000'000u);
        for (int i = 0; i < 9; ++i) {
            digits.push_back(static_cast<char>('0' + chunk % 10));
            chunk /= 10;
        }
    }
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    std::reverse(digits.begin(), digits.end());
    return digits;
}

BigUint pow_u32(std::uint32_t base, std::uint32_t exponent) {
    BigUint result{1};
    BigUint b{base};
    while (exponent) {
        if (exponent & 1u) result *= b;
        b *= b;
        exponent >>= 1u;
    }
    return result;
}

BigUint binomial(std::uint32_t n, std::uint32_t k) {
    if (k > n) return BigUint{0};
    if (k > n - k) k = n - k;
    BigUint result{1};
    for (std::uint32_t i = 1; i <= k; ++i) {
        result *= BigUint{n - k + i};
        result.divmod_u32(i);  // exact at every step
    }
    return result;
}

BigUint factorial(std::uint32_t n) {
    BigUint result{1};
    for (std::uint32_t i = 2; i <= n; ++i) {
        result *= BigUint{i};
    }
    return result;
}

}  // namespace acmatch
