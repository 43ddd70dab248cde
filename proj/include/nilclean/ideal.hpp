#pragma once

/// Two-sided ideals as explicit closed element sets, plus the closure and
/// power computations the radical and lifting code build on.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "nilclean/errors.hpp"
#include "nilclean/ring.hpp"

namespace nilclean {

struct Ideal {
    RingHandle ring;
    std::vector<std::uint64_t> elements;    // sorted ascending, contains zero
    std::vector<std::uint64_t> generators;  // may be empty
    /// Nil index when known: least s with I^s = 0. Constructors that can
    /// only bound it store the bound; lifting needs no more.
    std::optional<std::uint64_t> nil_index;

    std::uint64_t size() const { return elements.size(); }
    bool contains(std::uint64_t x) const {
        return std::binary_search(elements.begin(), elements.end(), x);
    }
    bool is_zero() const { return elements.size() == 1 && elements[0] == ring->zero(); }
    bool is_full() const { return elements.size() == ring->order(); }
};

inline Ideal zero_ideal(RingHandle r) {
    std::uint64_t z = r->zero();
    return Ideal{std::move(r), {z}, {}, 1};
}

/// Closure of a seed set under addition. In a finite additive group this is
/// the generated subgroup (inverses come for free).
inline std::vector<std::uint64_t> additive_closure(const Ring& r,
                                                   const std::vector<std::uint64_t>& seed) {
    std::unordered_set<std::uint64_t> seen;
    std::deque<std::uint64_t> work;
    std::vector<std::uint64_t> members;
    auto push = [&](std::uint64_t x) {
        if (seen.insert(x).second) {
            work.push_back(x);
            members.push_back(x);
        }
    };
    push(r.zero());
    for (std::uint64_t x : seed) push(x);
    while (!work.empty()) {
        std::uint64_t x = work.front();
        work.pop_front();
        for (std::size_t i = 0; i < members.size(); ++i) push(r.add(x, members[i]));
    }
    std::sort(members.begin(), members.end());
    return members;
}

/// Two-sided ideal generated by `gens`: closure under addition and left and
/// right multiplication by every ring element.
inline Ideal ideal_closure(RingHandle ring, std::vector<std::uint64_t> gens) {
    const Ring& r = *ring;
    std::unordered_set<std::uint64_t> seen;
    std::deque<std::uint64_t> work;
    std::vector<std::uint64_t> members;
    auto push = [&](std::uint64_t x) {
        if (seen.insert(x).second) {
            work.push_back(x);
            members.push_back(x);
        }
    };
    push(r.zero());
    for (std::uint64_t g : gens) push(g);
    while (!work.empty()) {
        std::uint64_t x = work.front();
        work.pop_front();
        for (std::size_t i = 0; i < members.size(); ++i) push(r.add(x, members[i]));
        for (std::uint64_t s = 0; s < r.order(); ++s) {
            push(r.mul(s, x));
            push(r.mul(x, s));
        }
    }
    std::sort(members.begin(), members.end());
    return Ideal{std::move(ring), std::move(members), std::move(gens), std::nullopt};
}

struct IdealViolation {
    std::string property;
    std::vector<std::uint64_t> indices;
};

/// Exhaustively checks the Ideal invariants: contains zero, closed under
/// addition, negation and two-sided multiplication by the whole ring.
inline std::optional<IdealViolation> ideal_invariant_violation(const Ideal& I) {
    const Ring& r = *I.ring;
    if (!I.contains(r.zero())) return IdealViolation{"contains_zero", {}};
    if (!std::is_sorted(I.elements.begin(), I.elements.end()))
        return IdealViolation{"sorted", {}};
    for (std::uint64_t a : I.elements) {
        if (!I.contains(r.neg(a))) return IdealViolation{"negation_closed", {a}};
        for (std::uint64_t b : I.elements)
            if (!I.contains(r.add(a, b))) return IdealViolation{"addition_closed", {a, b}};
        for (std::uint64_t s = 0; s < r.order(); ++s) {
            if (!I.contains(r.mul(s, a))) return IdealViolation{"left_absorbing", {s, a}};
            if (!I.contains(r.mul(a, s))) return IdealViolation{"right_absorbing", {a, s}};
        }
    }
    return std::nullopt;
}

/// Additive span of pairwise products {a*b : a in A, b in B}.
inline std::vector<std::uint64_t> ideal_product_elements(const Ring& r,
                                                         const std::vector<std::uint64_t>& A,
                                                         const std::vector<std::uint64_t>& B) {
    std::vector<std::uint64_t> prods;
    prods.reserve(A.size() * B.size());
    for (std::uint64_t a : A)
        for (std::uint64_t b : B) prods.push_back(r.mul(a, b));
    return additive_closure(r, prods);
}

/// Least s with I^s = {0}, where I^{k+1} is the additive span of I^k * I.
/// Powers shrink monotonically, so stabilisation at a nonzero set means the
/// ideal is not nil.
inline std::optional<std::uint64_t> ideal_nil_index(const Ideal& I) {
    const Ring& r = *I.ring;
    std::vector<std::uint64_t> power = I.elements;
    std::uint64_t s = 1;
    while (true) {
        if (power.size() == 1 && power[0] == r.zero()) return s;
        std::vector<std::uint64_t> next = ideal_product_elements(r, power, I.elements);
        if (next.size() == power.size()) return std::nullopt;
        power = std::move(next);
        ++s;
    }
}

/// M_n(I) inside M_n(R): all matrices with every entry in I, enumerated in
/// canonical (ascending-index) order. The nil-index slot carries the bound
/// n*s, which is what lifting and nilpotency certification need.
inline Ideal matrix_ideal(const std::shared_ptr<const MatrixRing>& mn, const Ideal& base_ideal) {
    if (!same_ring(*mn->base(), *base_ideal.ring))
        throw RingMismatchError("matrix_ideal: ideal lives in a different base ring");
    const std::uint32_t nn = mn->dimension() * mn->dimension();
    const std::uint64_t k = base_ideal.size();
    auto count = detail::checked_pow(k, nn);
    if (!count || *count > (std::uint64_t{1} << 26))
        throw CapExceeded("matrix ideal enumeration", count ? *count : ~std::uint64_t{0},
                          std::uint64_t{1} << 26);
    std::vector<std::uint64_t> members(*count);
    std::vector<std::uint64_t> digits(nn, 0);
    std::uint64_t entries[64];
    for (std::uint64_t c = 0; c < *count; ++c) {
        for (std::uint32_t t = 0; t < nn; ++t) entries[t] = base_ideal.elements[digits[t]];
        members[c] = mn->encode(entries);
        for (std::uint32_t t = nn; t-- > 0;) {  // odometer, last entry fastest
            if (++digits[t] < k) break;
            digits[t] = 0;
        }
    }
    // digits ascend lexicographically and encode is monotone, so members is sorted
    std::optional<std::uint64_t> bound;
    if (base_ideal.nil_index) bound = *base_ideal.nil_index * mn->dimension();
    return Ideal{mn, std::move(members), {}, bound};
}

}  // namespace nilclean
