#pragma once

/// Element- and ring-level predicates: idempotent, nilpotent, unit, central,
/// Boolean, abelian, connected, exchange, local, and ideal generation.
///
/// Ring-level scans are exhaustive and gated by a cap; they report the
/// smallest-index witness, independent of worker count.

#include <cstdint>
#include <mutex>
#include <optional>
#include <unordered_set>
#include <vector>

#include "nilclean/errors.hpp"
#include "nilclean/ideal.hpp"
#include "nilclean/parallel.hpp"
#include "nilclean/ring.hpp"

namespace nilclean {

struct NilpotencyResult {
    bool is_nilpotent = false;
    std::uint64_t index = 0;  // smallest k with a^k = 0; zero has index 1
};

inline bool is_idempotent(const Ring& r, std::uint64_t a) { return r.mul(a, a) == a; }
inline bool is_idempotent(const Element& a) { return is_idempotent(*a.ring(), a.index()); }

/// Power iteration with repeat detection: the power sequence of a finite-ring
/// element is eventually periodic, and the element is nilpotent exactly when
/// zero shows up before the first repeat.
inline NilpotencyResult nilpotency_by_cycle(const Ring& r, std::uint64_t a) {
    std::unordered_set<std::uint64_t> seen;
    std::uint64_t x = a;
    std::uint64_t k = 1;
    while (true) {
        if (x == r.zero()) return {true, k};
        if (!seen.insert(x).second) return {false, 0};
        x = r.mul(x, a);
        ++k;
    }
}

// ---------------------------------------------------------------------------
// Units
// ---------------------------------------------------------------------------

namespace detail {

inline std::optional<std::uint64_t> zmod_inverse(std::uint64_t a, std::uint64_t m) {
    if (m == 1) return 0;
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (r != 1) return std::nullopt;
    return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(m) : t);
}

}  // namespace detail

/// Determinant over a commutative base by cofactor expansion along the first
/// row. Exact for any commutative finite ring; no division involved.
inline std::uint64_t determinant(const Matrix& m) {
    const Ring& r = *m.base();
    const std::uint32_t n = m.dimension();
    if (n == 1) return m.at(0, 0);
    if (n == 2)
        return r.sub(r.mul(m.at(0, 0), m.at(1, 1)), r.mul(m.at(0, 1), m.at(1, 0)));
    std::uint64_t det = r.zero();
    for (std::uint32_t j = 0; j < n; ++j) {
        Matrix minor(m.base(), n - 1);
        for (std::uint32_t i = 1; i < n; ++i) {
            std::uint32_t col = 0;
            for (std::uint32_t k = 0; k < n; ++k) {
                if (k == j) continue;
                minor.at(i - 1, col++) = m.at(i, k);
            }
        }
        std::uint64_t term = r.mul(m.at(0, j), determinant(minor));
        det = (j % 2 == 0) ? r.add(det, term) : r.sub(det, term);
    }
    return det;
}

inline Matrix adjugate(const Matrix& m) {
    const Ring& r = *m.base();
    const std::uint32_t n = m.dimension();
    Matrix adj(m.base(), n);
    if (n == 1) {
        adj.at(0, 0) = r.one();
        return adj;
    }
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j) {
            Matrix minor(m.base(), n - 1);
            std::uint32_t row = 0;
            for (std::uint32_t a = 0; a < n; ++a) {
                if (a == i) continue;
                std::uint32_t col = 0;
                for (std::uint32_t b = 0; b < n; ++b) {
                    if (b == j) continue;
                    minor.at(row, col++) = m.at(a, b);
                }
                ++row;
            }
            std::uint64_t c = determinant(minor);
            adj.at(j, i) = ((i + j) % 2 == 0) ? c : r.neg(c);  // transpose of cofactors
        }
    return adj;
}

inline std::optional<std::uint64_t> inverse_of(const Ring& r, std::uint64_t a,
                                               std::uint64_t scan_cap = kDefaultScanCap);

/// Inverse of a matrix over a commutative base: invertible iff det is a unit,
/// with the adjugate supplying the inverse. Both products are checked.
inline std::optional<Matrix> matrix_inverse(const Matrix& m,
                                            std::uint64_t scan_cap = kDefaultScanCap) {
    const Ring& base = *m.base();
    std::uint64_t det = determinant(m);
    auto det_inv = inverse_of(base, det, scan_cap);
    if (!det_inv) return std::nullopt;
    Matrix inv = adjugate(m);
    for (std::uint32_t i = 0; i < m.dimension(); ++i)
        for (std::uint32_t j = 0; j < m.dimension(); ++j)
            inv.at(i, j) = base.mul(*det_inv, inv.at(i, j));
    if (!(m * inv).is_identity() || !(inv * m).is_identity())
        throw RingError("adjugate inverse failed verification; base ring not commutative?");
    return inv;
}

/// Two-sided inverse when it exists. Kind-specific routes (gcd for Z/m,
/// nonzero power for fields, componentwise for products, determinant plus
/// adjugate for matrices over commutative rings); exhaustive search gated by
/// scan_cap otherwise. Every route verifies both products against one.
inline std::optional<std::uint64_t> inverse_of(const Ring& r, std::uint64_t a,
                                               std::uint64_t scan_cap) {
    auto verified = [&](std::uint64_t b) -> std::optional<std::uint64_t> {
        if (r.mul(a, b) != r.one() || r.mul(b, a) != r.one())
            throw RingError("inverse candidate failed two-sided verification in " +
                            r.spec_string());
        return b;
    };
    switch (r.kind()) {
        case RingKind::zmod: {
            auto inv = detail::zmod_inverse(a, r.order());
            if (!inv) return std::nullopt;
            return verified(*inv);
        }
        case RingKind::galois_field: {
            if (a == r.zero()) return r.order() == 1 ? verified(a) : std::nullopt;
            return verified(r.pow(a, r.order() - 2));
        }
        case RingKind::product: {
            const auto& p = static_cast<const ProductRing&>(r);
            auto parts = p.split(a);
            for (std::size_t i = 0; i < parts.size(); ++i) {
                auto inv = inverse_of(*p.factors()[i], parts[i], scan_cap);
                if (!inv) return std::nullopt;
                parts[i] = *inv;
            }
            return verified(p.join(parts));
        }
        case RingKind::trivial_extension: {
            const auto& t = static_cast<const TrivialExtensionRing&>(r);
            const Ring& base = *t.base();
            std::uint64_t digits[33];
            t.split(a, digits);
            auto inv_a = inverse_of(base, digits[0], scan_cap);
            if (!inv_a) return std::nullopt;
            std::uint64_t out[33];
            out[0] = *inv_a;
            for (std::uint32_t i = 1; i <= t.generator_count(); ++i)
                out[i] = base.neg(base.mul(base.mul(*inv_a, digits[i]), *inv_a));
            return verified(t.join(out));
        }
        case RingKind::matrix_ring: {
            const auto& mr = static_cast<const MatrixRing&>(r);
            if (mr.base()->known_commutative()) {
                auto inv =
                    matrix_inverse(matrix_from_index(mr.base(), mr.dimension(), a), scan_cap);
                if (!inv) return std::nullopt;
                return verified(mr.encode(inv->entries().data()));
            }
            break;  // fall through to exhaustive search
        }
        default:
            break;
    }
    if (r.order() > scan_cap) throw CapExceeded("unit search", r.order(), scan_cap);
    for (std::uint64_t b = 0; b < r.order(); ++b)
        if (r.mul(a, b) == r.one() && r.mul(b, a) == r.one()) return b;
    return std::nullopt;
}

inline std::optional<Element> is_unit(const Element& a, std::uint64_t scan_cap = kDefaultScanCap) {
    auto inv = inverse_of(*a.ring(), a.index(), scan_cap);
    if (!inv) return std::nullopt;
    return Element(a.ring(), *inv);
}

/// Per-element inverse table (kNoInverse where absent), cached on the ring.
inline const std::vector<std::uint64_t>& unit_table(const RingHandle& r,
                                                    std::uint64_t scan_cap = kDefaultScanCap) {
    if (r->order() > scan_cap) throw CapExceeded("unit table", r->order(), scan_cap);
    auto& cache = r->cache();
    std::call_once(cache.units_once, [&] {
        std::vector<std::uint64_t> table(r->order());
        chunked_scan<std::uint64_t>(
            0, r->order(),
            [&](std::uint64_t a) {
                auto inv = inverse_of(*r, a, scan_cap);
                return inv ? *inv : kNoInverse;
            },
            [&](std::uint64_t a, std::uint64_t& inv) {
                table[a] = inv;
                return true;
            });
        cache.inverses = std::move(table);
    });
    return cache.inverses;
}

// ---------------------------------------------------------------------------
// Nilpotency with the commutative-matrix fast path
// ---------------------------------------------------------------------------

/// Nilpotent elements of a commutative ring (its nilradical), with the nil
/// index of that ideal. Cached on the ring.
inline const Ideal& nilradical(const RingHandle& r, std::uint64_t cap = kDefaultScanCap) {
    if (!r->known_commutative())
        throw RingError("nilradical is only computed for commutative rings");
    if (r->order() > cap) throw CapExceeded("nilradical scan", r->order(), cap);
    auto& cache = r->cache();
    std::call_once(cache.nilradical_once, [&] {
        std::vector<std::uint64_t> members;
        for (std::uint64_t a = 0; a < r->order(); ++a)
            if (nilpotency_by_cycle(*r, a).is_nilpotent) members.push_back(a);
        auto ideal = std::make_shared<Ideal>(Ideal{r, std::move(members), {}, std::nullopt});
        ideal->nil_index = ideal_nil_index(*ideal);
        cache.nilradical_nil_index = ideal->nil_index;
        cache.nilradical = std::move(ideal);
    });
    return *cache.nilradical;
}

/// Matrix nilpotency. Over a commutative base of manageable size, A is
/// nilpotent iff A^(n*s) = 0 with s the nil index of the base nilradical
/// (entries of A^n land in the nilradical once the reduced image vanishes);
/// otherwise falls back to power iteration with repeat detection on entry
/// vectors.
inline NilpotencyResult matrix_nilpotency(const Matrix& A,
                                          std::uint64_t base_cap = kDefaultScanCap) {
    const RingHandle& base = A.base();
    if (base->known_commutative() && base->order() <= base_cap) {
        const Ideal& nil = nilradical(base, base_cap);
        const std::uint64_t s = nil.nil_index.value();  // finite commutative: always nil
        const std::uint64_t bound = std::uint64_t{A.dimension()} * s;
        if (!A.pow(bound).is_zero()) return {false, 0};
        Matrix p = A;
        for (std::uint64_t k = 1; k <= bound; ++k) {
            if (p.is_zero()) return {true, k};
            p = p * A;
        }
        return {true, bound};  // unreachable: pow(bound) was zero
    }
    struct VecHash {
        std::size_t operator()(const std::vector<std::uint64_t>& v) const {
            std::size_t h = v.size();
            for (std::uint64_t x : v) h ^= std::hash<std::uint64_t>{}(x) + 0x9e3779b97f4a7c15ull +
                                           (h << 6) + (h >> 2);
            return h;
        }
    };
    std::unordered_set<std::vector<std::uint64_t>, VecHash> seen;
    Matrix x = A;
    std::uint64_t k = 1;
    while (true) {
        if (x.is_zero()) return {true, k};
        if (!seen.insert(x.entries()).second) return {false, 0};
        x = x * A;
        ++k;
    }
}

/// Dispatching nilpotency test on ring elements.
inline NilpotencyResult is_nilpotent(const Ring& r, std::uint64_t a,
                                     std::uint64_t base_cap = kDefaultScanCap) {
    if (r.kind() == RingKind::matrix_ring) {
        const auto& mr = static_cast<const MatrixRing&>(r);
        if (mr.base()->known_commutative() && mr.base()->order() <= base_cap)
            return matrix_nilpotency(matrix_from_index(mr.base(), mr.dimension(), a), base_cap);
    }
    return nilpotency_by_cycle(r, a);
}

inline NilpotencyResult is_nilpotent(const Element& a,
                                     std::uint64_t base_cap = kDefaultScanCap) {
    return is_nilpotent(*a.ring(), a.index(), base_cap);
}

// ---------------------------------------------------------------------------
// Ring-level predicates
// ---------------------------------------------------------------------------

inline bool is_central(const Ring& r, std::uint64_t a) {
    for (std::uint64_t x = 0; x < r.order(); ++x)
        if (r.mul(a, x) != r.mul(x, a)) return false;
    return true;
}

struct AbelianReport {
    bool abelian = true;
    std::optional<std::uint64_t> witness_idempotent;  // smallest non-central idempotent
    std::optional<std::uint64_t> witness_partner;     // smallest element it fails against
};

inline AbelianReport ring_is_abelian(const Ring& r, std::uint64_t cap = kDefaultScanCap) {
    if (r.order() > cap) throw CapExceeded("abelian scan", r.order(), cap);
    for (std::uint64_t e = 0; e < r.order(); ++e) {
        if (!is_idempotent(r, e)) continue;
        for (std::uint64_t x = 0; x < r.order(); ++x)
            if (r.mul(e, x) != r.mul(x, e)) return {false, e, x};
    }
    return {};
}

struct BooleanReport {
    bool boolean = true;
    std::optional<std::uint64_t> witness;  // smallest non-idempotent element
};

inline BooleanReport ring_is_boolean(const Ring& r, std::uint64_t cap = kDefaultScanCap) {
    if (r.order() > cap) throw CapExceeded("boolean scan", r.order(), cap);
    for (std::uint64_t a = 0; a < r.order(); ++a)
        if (!is_idempotent(r, a)) return {false, a};
    return {};
}

inline bool ring_is_connected(const Ring& r, std::uint64_t cap = kDefaultScanCap) {
    if (r.order() > cap) throw CapExceeded("connected scan", r.order(), cap);
    for (std::uint64_t a = 0; a < r.order(); ++a)
        if (is_idempotent(r, a) && a != r.zero() && a != r.one()) return false;
    return true;
}

inline bool ring_is_commutative(const Ring& r, std::uint64_t cap = kDefaultScanCap) {
    if (r.known_commutative()) return true;
    if (r.order() > cap) throw CapExceeded("commutativity scan", r.order(), cap);
    for (std::uint64_t a = 0; a < r.order(); ++a)
        for (std::uint64_t b = a + 1; b < r.order(); ++b)
            if (r.mul(a, b) != r.mul(b, a)) return false;
    return true;
}

/// Exchange property: for every a there is an idempotent e in aR with
/// 1 - e in (1-a)R. Membership is decided by enumerating both sets.
inline bool ring_is_exchange(const Ring& r, std::uint64_t cap = kDefaultScanCap) {
    const std::uint64_t n = r.order();
    if (n > cap) throw CapExceeded("exchange scan", n, cap);
    std::vector<std::uint64_t> idempotents;
    for (std::uint64_t e = 0; e < n; ++e)
        if (is_idempotent(r, e)) idempotents.push_back(e);
    std::vector<char> in_aR(n), in_bR(n);
    for (std::uint64_t a = 0; a < n; ++a) {
        std::fill(in_aR.begin(), in_aR.end(), 0);
        std::fill(in_bR.begin(), in_bR.end(), 0);
        const std::uint64_t b = r.sub(r.one(), a);
        for (std::uint64_t x = 0; x < n; ++x) {
            in_aR[r.mul(a, x)] = 1;
            in_bR[r.mul(b, x)] = 1;
        }
        bool found = false;
        for (std::uint64_t e : idempotents)
            if (in_aR[e] && in_bR[r.sub(r.one(), e)]) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

/// Local ring: for every a, a or 1 - a is invertible.
inline bool is_local_ring(const Ring& r, std::uint64_t cap = kDefaultScanCap) {
    if (r.order() > cap) throw CapExceeded("local scan", r.order(), cap);
    for (std::uint64_t a = 0; a < r.order(); ++a) {
        if (inverse_of(r, a, cap)) continue;
        if (!inverse_of(r, r.sub(r.one(), a), cap)) return false;
    }
    return true;
}

inline Ideal ideal_generated_by(const RingHandle& r, std::vector<std::uint64_t> gens,
                                std::uint64_t cap = kDefaultScanCap) {
    if (r->order() > cap) throw CapExceeded("ideal closure", r->order(), cap);
    return ideal_closure(r, std::move(gens));
}

inline bool is_full_ideal(const Ideal& I) { return I.is_full(); }

}  // namespace nilclean
