#include "acmatch/surjection.hpp"

#include <algorithm>

#include "acmatch/error.hpp"

namespace acmatch {

namespace {

// Number of ways to fill `slots` positions with values from [k] so that
// `missing` designated values are all covered:
//   sum_{j=0..missing} (-1)^j C(missing, j) (k-j)^slots
// Zero when missing > slots, which the alternating sum yields on its own.
BigUint completion_count(std::size_t slots, std::size_t missing, std::size_t k) {
    BigUint positive{0};
    BigUint negative{0};
    for (std::size_t j = 0; j <= missing; ++j) {
        BigUint term = binomial(static_cast<std::uint32_t>(missing), static_cast<std::uint32_t>(j));
        term *= pow_u32(static_cast<std::uint32_t>(k - j), static_cast<std::uint32_t>(slots));
        if (j % 2 == 0) {
            positive += term;
        } else {
            negative += term;
        }
    }
    return positive - negative;
}

void check_domain(std::size_t n, std::size_t k) {
    if (k == 0 || k > n) {
        throw DomainError("surjection: need 1 <= k <= n, got n=" + std::to_string(n) +
                          " k=" + std::to_string(k));
    }
}

}  // namespace

Surjection Surjection::make(std::size_t n, std::size_t k, std::vector<std::uint32_t> values) {
    check_domain(n, k);
    if (values.size() != n) {
        throw DomainError("surjection: expected " + std::to_string(n) + " values");
    }
    std::vector<bool> seen(k, false);
    for (std::uint32_t v : values) {
        if (v < 1 || v > k) {
            throw DomainError("surjection: value out of range");
        }
        seen[v - 1] = true;
    }
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) {
        throw DomainError("surjection: image does not cover [k]");
    }
    return Surjection{n, k, std::move(values)};
}

BigUint surjection_count(std::size_t n, std::size_t k) {
    check_domain(n, k);
    return completion_count(n, k, k);
}

Surjection unrank(std::size_t n, std::size_t k, const BigUint& index) {
    check_domain(n, k);
    if (index < BigUint{1} || index > surjection_count(n, k)) {
        throw DomainError("surjection: rank out of range");
    }
    BigUint remaining = index;
    std::vector<std::uint32_t> values;
    values.reserve(n);
    std::vector<bool> covered(k, false);
    std::size_t covered_count = 0;
    for (std::size_t pos = 0; pos < n; ++pos) {
        for (std::uint32_t v = 1; v <= k; ++v) {
            const std::size_t missing =
                k - covered_count - (covered[v - 1] ? 0 : 1);
            BigUint completions = completion_count(n - pos - 1, missing, k);
            if (remaining <= completions) {
                values.push_back(v);
                if (!covered[v - 1]) {
                    covered[v - 1] = true;
                    ++covered_count;
                }
                break;
            }
            remaining -= completions;
        }
    }
    return Surjection{n, k, std::move(values)};
}

BigUint rank(const Surjection& s) {
    Surjection checked = Surjection::make(s.n, s.k, s.values);  // validates
    BigUint result{1};
    std::vector<bool> covered(s.k, false);
    std::size_t covered_count = 0;
    for (std::size_t pos = 0; pos < s.n; ++pos) {
        for (std::uint32_t v = 1; v < checked.values[pos]; ++v) {
            const std::size_t missing =
                s.k - covered_count - (covered[v - 1] ? 0 : 1);
            result += completion_count(s.n - pos - 1, missing, s.k);
        }
        const std::uint32_t chosen = checked.values[pos];
        if (!covered[chosen - 1]) {
            covered[chosen - 1] = true;
            ++covered_count;
        }
    }
    return result;
}

std::vector<TermPtr> apply_surjection(const Surjection& s, const TermPtr& u) {
    if (!u->is_app() || !u->symbol().is_ac()) {
        throw DomainError("apply_surjection: subject must be an AC application");
    }
    if (u->args().size() != s.n) {
        throw DomainError("apply_surjection: subject arity " + std::to_string(u->args().size()) +
                          " does not match surjection domain " + std::to_string(s.n));
    }
    std::vector<std::vector<TermPtr>> groups(s.k);
    for (std::size_t j = 0; j < s.n; ++j) {
        groups[s.values[j] - 1].push_back(u->args()[j]);
    }
    std::vector<TermPtr> result;
    result.reserve(s.k);
    for (std::vector<TermPtr>& group : groups) {
        if (group.size() == 1) {
            result.push_back(std::move(group.front()));
        } else {
            result.push_back(Term::app(u->symbol(), std::move(group)));
        }
    }
    return result;
}

}  // namespace acmatch
