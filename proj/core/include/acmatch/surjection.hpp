#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "acmatch/bigint.hpp"
#include "acmatch/term.hpp"

namespace acmatch {

// A surjective function [n] -> [k], stored as the value tuple
// (s(1), ..., s(n)) with 1-based values.
struct Surjection {
    std::size_t n = 0;
    std::size_t k = 0;
    std::vector<std::uint32_t> values;

    // Validates surjectivity and value ranges.
    static Surjection make(std::size_t n, std::size_t k, std::vector<std::uint32_t> values);
};

// |S_{n,k}|, by inclusion-exclusion over uncovered values.
// DomainError unless 1 <= k <= n.
BigUint surjection_count(std::size_t n, std::size_t k);

// The i-th surjection in lexicographic order of value tuples, 1-based.
// DomainError if i is out of [1, |S_{n,k}|].
Surjection unrank(std::size_t n, std::size_t k, const BigUint& index);

// Inverse of unrank: rank(unrank(n, k, i)) == i.
BigUint rank(const Surjection& s);

// Groups the n arguments of an AC application into k terms: position j of
// the subject goes to group s(j).  A group with a single member is that
// member; larger groups become an application of the subject's AC symbol
// with members in increasing position order, which keeps each group flat.
// DomainError if u is not an AC application of arity s.n.
std::vector<TermPtr> apply_surjection(const Surjection& s, const TermPtr& u);

}  // namespace acmatch
