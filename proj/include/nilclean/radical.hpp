#pragma once

/// Jacobson radical, the maximal-ideal intersection, the ideal lattice,
/// quotient rings, and nilpotency of matrix ideals.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <vector>

#include "nilclean/errors.hpp"
#include "nilclean/ideal.hpp"
#include "nilclean/parallel.hpp"
#include "nilclean/predicates.hpp"
#include "nilclean/ring.hpp"

namespace nilclean {

/// J(R) = { x : 1 - x*s is a unit for every s }, computed exhaustively via
/// quasi-regularity. The symmetric left condition and the Ideal invariants
/// are re-verified on the result; both hold for any ring, so a violation
/// means broken arithmetic. The nil index is computed eagerly (finite rings
/// are artinian, so it exists, but it is computed rather than assumed).
inline const Ideal& jacobson_radical(const RingHandle& r, std::uint64_t cap = kDefaultScanCap) {
    const std::uint64_t n = r->order();
    if (n > cap) throw CapExceeded("radical scan", n, cap);
    auto& cache = r->cache();
    std::call_once(cache.radical_once, [&] {
        const auto& units = unit_table(r, cap);
        const std::uint64_t one = r->one();
        std::vector<std::uint64_t> members;
        chunked_scan<char>(
            0, n,
            [&](std::uint64_t x) -> char {
                for (std::uint64_t s = 0; s < n; ++s)
                    if (units[r->sub(one, r->mul(x, s))] == kNoInverse) return 0;
                return 1;
            },
            [&](std::uint64_t x, char in) {
                if (in) members.push_back(x);
                return true;
            });
        for (std::uint64_t x : members)
            for (std::uint64_t s = 0; s < n; ++s)
                if (units[r->sub(one, r->mul(s, x))] == kNoInverse)
                    throw RingError("radical asymmetry: left quasi-regularity failed for " +
                                    std::to_string(x) + " in " + r->spec_string());
        auto J = std::make_shared<Ideal>(Ideal{r, std::move(members), {}, std::nullopt});
        if (auto v = ideal_invariant_violation(*J))
            throw RingError("radical of " + r->spec_string() + " violates ideal invariant " +
                            v->property);
        J->nil_index = ideal_nil_index(*J);
        cache.jacobson = std::move(J);
    });
    return *cache.jacobson;
}

// ---------------------------------------------------------------------------
// Ideal lattice
// ---------------------------------------------------------------------------

/// All two-sided ideals, by closure of generator sets grown from single
/// elements and one-element extensions. Practical only for small rings;
/// refuses above the lattice cap instead of sampling. Output is ordered by
/// (size, elements), independent of discovery order.
inline std::vector<Ideal> enumerate_ideals(const RingHandle& r,
                                           std::uint64_t lattice_cap = kDefaultLatticeCap) {
    const std::uint64_t n = r->order();
    if (n > lattice_cap) throw CapExceeded("ideal lattice", n, lattice_cap);
    std::map<std::vector<std::uint64_t>, Ideal> found;
    std::vector<const std::vector<std::uint64_t>*> work;
    auto record = [&](Ideal I) -> bool {
        auto [it, fresh] = found.try_emplace(I.elements, Ideal{});
        if (fresh) {
            it->second = std::move(I);
            work.push_back(&it->first);
        }
        return fresh;
    };
    for (std::uint64_t x = 0; x < n; ++x) record(ideal_closure(r, {x}));
    while (!work.empty()) {
        const std::vector<std::uint64_t> members = *work.back();
        work.pop_back();
        if (members.size() == n) continue;
        for (std::uint64_t x = 0; x < n; ++x) {
            if (std::binary_search(members.begin(), members.end(), x)) continue;
            std::vector<std::uint64_t> seed = members;
            seed.push_back(x);
            record(ideal_closure(r, std::move(seed)));
        }
    }
    std::vector<Ideal> out;
    out.reserve(found.size());
    for (auto& [key, ideal] : found) out.push_back(std::move(ideal));
    std::sort(out.begin(), out.end(), [](const Ideal& a, const Ideal& b) {
        if (a.elements.size() != b.elements.size()) return a.elements.size() < b.elements.size();
        return a.elements < b.elements;
    });
    return out;
}

inline std::vector<Ideal> maximal_ideals(const RingHandle& r,
                                         std::uint64_t lattice_cap = kDefaultLatticeCap) {
    std::vector<Ideal> all = enumerate_ideals(r, lattice_cap);
    std::vector<Ideal> maximal;
    for (const Ideal& I : all) {
        if (I.is_full()) continue;
        bool top = true;
        for (const Ideal& J : all) {
            if (J.is_full() || J.elements.size() <= I.elements.size()) continue;
            if (std::includes(J.elements.begin(), J.elements.end(), I.elements.begin(),
                              I.elements.end())) {
                top = false;
                break;
            }
        }
        if (top) maximal.push_back(I);
    }
    return maximal;
}

/// J*(R): intersection of all maximal two-sided ideals. For the order-1 ring
/// there are none and the empty intersection is the whole ring.
inline Ideal j_star(const RingHandle& r, std::uint64_t lattice_cap = kDefaultLatticeCap) {
    std::vector<Ideal> maximal = maximal_ideals(r, lattice_cap);
    std::vector<std::uint64_t> acc;
    if (maximal.empty()) {
        acc.resize(r->order());
        for (std::uint64_t i = 0; i < r->order(); ++i) acc[i] = i;
    } else {
        acc = maximal.front().elements;
        for (std::size_t i = 1; i < maximal.size(); ++i) {
            std::vector<std::uint64_t> next;
            std::set_intersection(acc.begin(), acc.end(), maximal[i].elements.begin(),
                                  maximal[i].elements.end(), std::back_inserter(next));
            acc = std::move(next);
        }
    }
    return Ideal{r, std::move(acc), {}, std::nullopt};
}

// ---------------------------------------------------------------------------
// Quotient rings
// ---------------------------------------------------------------------------

inline constexpr std::uint64_t kHomomorphismCheckLimit = 4096;

/// R/I with smallest-index coset representatives. The projection is verified
/// to be a surjective ring homomorphism (exhaustively, up to a size limit)
/// and the quotient re-passes the axioms check when small enough.
class QuotientRing final : public Ring {
public:
    static std::shared_ptr<const QuotientRing> make(RingHandle base, Ideal ideal) {
        if (!same_ring(*base, *ideal.ring))
            throw RingMismatchError("quotient: ideal lives in a different ring");
        if (auto v = ideal_invariant_violation(ideal))
            throw RingError("quotient: ideal violates invariant " + v->property);

        const std::uint64_t n = base->order();
        std::vector<std::uint64_t> rep_of(n, kNoInverse);
        std::vector<std::uint64_t> reps;
        for (std::uint64_t x = 0; x < n; ++x) {
            if (rep_of[x] != kNoInverse) continue;
            // ascending scan: x is the smallest member of its coset
            reps.push_back(x);
            for (std::uint64_t i : ideal.elements) rep_of[base->add(x, i)] = x;
        }
        if (reps.size() * ideal.elements.size() != n)
            throw RingError("quotient: cosets do not partition the ring");

        auto q = std::shared_ptr<QuotientRing>(
            new QuotientRing(std::move(base), std::move(ideal), std::move(reps),
                             std::move(rep_of)));
        q->cache_tables_if_small();
        q->verify_construction();
        return detail::intern_ring<QuotientRing>(std::move(q));
    }

    const RingHandle& base() const { return base_; }
    const Ideal& ideal() const { return ideal_; }
    const std::vector<std::uint64_t>& representatives() const { return reps_; }

    std::uint64_t project(std::uint64_t base_idx) const {
        const std::uint64_t rep = rep_of_[base_idx];
        return static_cast<std::uint64_t>(
            std::lower_bound(reps_.begin(), reps_.end(), rep) - reps_.begin());
    }
    std::uint64_t representative(std::uint64_t q_idx) const { return reps_[q_idx]; }

private:
    QuotientRing(RingHandle base, Ideal ideal, std::vector<std::uint64_t> reps,
                 std::vector<std::uint64_t> rep_of)
        : Ring(RingKind::quotient_ring, reps.size(), 0,
               static_cast<std::uint64_t>(
                   std::lower_bound(reps.begin(), reps.end(), rep_of[base->one()]) - reps.begin()),
               base->known_commutative(), quotient_spec(*base, ideal)),
          base_(std::move(base)), ideal_(std::move(ideal)), reps_(std::move(reps)),
          rep_of_(std::move(rep_of)) {}

    static std::string quotient_spec(const Ring& base, const Ideal& ideal) {
        std::string s = base.spec_string() + "/{";
        if (ideal.elements.size() <= 16) {
            for (std::size_t i = 0; i < ideal.elements.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(ideal.elements[i]);
            }
        } else {
            std::uint64_t h = 1469598103934665603ull;  // FNV-1a over the element set
            for (std::uint64_t e : ideal.elements) {
                h ^= e;
                h *= 1099511628211ull;
            }
            s += "|I|=" + std::to_string(ideal.elements.size()) + ";fnv=" + std::to_string(h);
        }
        return s + "}";
    }

    void verify_construction() const {
        if (order() <= kDefaultAxiomsCap) {
            AxiomsReport rep = ring_axioms_check(*this);
            if (!rep.passed)
                throw RingError("quotient " + spec_string() + " failed axiom " + rep.axiom);
        }
        if (base_->order() <= kHomomorphismCheckLimit) {
            for (std::uint64_t a = 0; a < base_->order(); ++a)
                for (std::uint64_t b = 0; b < base_->order(); ++b) {
                    if (project(base_->add(a, b)) != add(project(a), project(b)) ||
                        project(base_->mul(a, b)) != mul(project(a), project(b)))
                        throw RingError("quotient projection is not a homomorphism at (" +
                                        std::to_string(a) + "," + std::to_string(b) + ")");
                }
        }
    }

    std::uint64_t add_impl(std::uint64_t a, std::uint64_t b) const override {
        return project(base_->add(reps_[a], reps_[b]));
    }
    std::uint64_t mul_impl(std::uint64_t a, std::uint64_t b) const override {
        return project(base_->mul(reps_[a], reps_[b]));
    }
    std::uint64_t neg_impl(std::uint64_t a) const override {
        return project(base_->neg(reps_[a]));
    }

    RingHandle base_;
    Ideal ideal_;
    std::vector<std::uint64_t> reps_;
    std::vector<std::uint64_t> rep_of_;
};

inline std::shared_ptr<const QuotientRing> quotient_ring(RingHandle base, Ideal ideal) {
    return QuotientRing::make(std::move(base), std::move(ideal));
}

// ---------------------------------------------------------------------------
// Matrix ideals
// ---------------------------------------------------------------------------

struct MatrixIdealNilReport {
    bool nil = false;
    std::uint64_t ideal_nil_index = 0;  // s for the base ideal
    std::uint64_t bound = 0;            // n * s
    std::uint64_t spot_checks = 0;
};

/// M_n(I) is nil with A^(n*s) = 0 for every matrix with entries in a nil
/// ideal of index s: (M_n(I))^k sits inside M_n(I^k). The bound is also
/// spot-verified on random matrices; a failure there is an arithmetic bug,
/// not a mathematical possibility.
inline MatrixIdealNilReport matrix_ideal_is_nil(const RingHandle& r, const Ideal& I,
                                                std::uint32_t n,
                                                std::uint64_t spot_checks = 100) {
    if (!same_ring(*r, *I.ring))
        throw RingMismatchError("matrix_ideal_is_nil: ideal lives in a different ring");
    std::optional<std::uint64_t> s = I.nil_index ? I.nil_index : ideal_nil_index(I);
    if (!s) return {false, 0, 0, 0};
    const std::uint64_t bound = *s * n;
    std::mt19937_64 rng(0x6e696c636c65616eull);  // fixed seed: reports are reproducible
    std::uniform_int_distribution<std::size_t> pick(0, I.elements.size() - 1);
    for (std::uint64_t c = 0; c < spot_checks; ++c) {
        Matrix A(r, n);
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = 0; j < n; ++j) A.at(i, j) = I.elements[pick(rng)];
        if (!A.pow(bound).is_zero())
            throw RingError("matrix ideal nil bound violated in " + r->spec_string());
    }
    return {true, *s, bound, spot_checks};
}

}  // namespace nilclean
