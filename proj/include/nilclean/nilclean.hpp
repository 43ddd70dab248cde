#pragma once

/// Nil-clean factorization engines: the exhaustive oracle, idempotent lifting
/// modulo nil ideals, Boolean-atom splitting, and the structured pipeline
/// that builds a factorization from the radical and the Boolean quotient.
///
/// Witnesses re-verify from raw arithmetic at construction. Oracle scans
/// report the smallest-index answer and charge their visit budget in
/// canonical order, so outcomes are identical for any worker count.

#include <array>
#include <atomic>
#include <bit>
#include <cstdint>
#include <mutex>
#include <optional>
#include <unordered_set>
#include <variant>
#include <vector>

#include "nilclean/errors.hpp"
#include "nilclean/ideal.hpp"
#include "nilclean/parallel.hpp"
#include "nilclean/predicates.hpp"
#include "nilclean/radical.hpp"
#include "nilclean/ring.hpp"

namespace nilclean {

enum class WitnessMethod { oracle, structured };

inline const char* witness_method_name(WitnessMethod m) {
    return m == WitnessMethod::oracle ? "oracle" : "structured";
}

/// A verified factorization target = e + w with e idempotent and w nilpotent
/// of the recorded index.
struct NilCleanWitness {
    RingHandle ring;
    std::uint64_t target;
    std::uint64_t e;
    std::uint64_t w;
    std::uint64_t w_nil_index;
    WitnessMethod method;
};

inline void verify_witness(const NilCleanWitness& wit) {
    const Ring& r = *wit.ring;
    if (r.mul(wit.e, wit.e) != wit.e) throw RingError("witness: e is not idempotent");
    if (r.add(wit.e, wit.w) != wit.target) throw RingError("witness: e + w != target");
    if (wit.w_nil_index < 1) throw RingError("witness: nil index must be >= 1");
    if (r.pow(wit.w, wit.w_nil_index) != r.zero())
        throw RingError("witness: w^index != 0");
    if (wit.w_nil_index == 1) {
        if (wit.w != r.zero()) throw RingError("witness: index 1 but w != 0");
    } else if (r.pow(wit.w, wit.w_nil_index - 1) == r.zero()) {
        throw RingError("witness: nil index is not minimal");
    }
}

/// Negative certificate: no idempotent works for this element. Re-verifiable
/// by re-running the scan over the full idempotent list.
struct NonNilCleanCertificate {
    RingHandle ring;
    std::uint64_t target;
    std::uint64_t idempotents_scanned;
};

using DecomposeOutcome = std::variant<NilCleanWitness, NonNilCleanCertificate>;

// ---------------------------------------------------------------------------
// Oracle
// ---------------------------------------------------------------------------

/// Ascending list of solutions of e^2 = e, memoized per ring. The budget is
/// checked against the ring order before consulting the cache, so refusals do
/// not depend on cache warmth.
inline const std::vector<std::uint64_t>& enumerate_idempotents(
    const RingHandle& r, std::uint64_t budget = kDefaultOracleBudget) {
    if (r->order() > budget)
        throw BudgetExceeded("idempotent enumeration over " + r->spec_string(), budget,
                             r->order());
    auto& cache = r->cache();
    std::call_once(cache.idempotents_once, [&] {
        std::vector<std::uint64_t> found;
        chunked_scan<char>(
            0, r->order(),
            [&](std::uint64_t e) -> char { return is_idempotent(*r, e); },
            [&](std::uint64_t e, char hit) {
                if (hit) found.push_back(e);
                return true;
            });
        cache.idempotents = std::move(found);
    });
    return cache.idempotents;
}

namespace detail {

struct TrialOutcome {
    bool decomposed = false;
    bool skipped = false;  // pruned by branch-and-bound; never reaches the fold
    std::uint64_t e = 0, w = 0, w_index = 0;
    std::uint64_t trials = 0;  // idempotents tried, for budget accounting
};

/// Smallest-index idempotent whose difference is nilpotent.
inline TrialOutcome try_decompose(const Ring& r, const std::vector<std::uint64_t>& idems,
                                  std::uint64_t a) {
    TrialOutcome out;
    for (std::uint64_t e : idems) {
        ++out.trials;
        const std::uint64_t w = r.sub(a, e);
        NilpotencyResult nil = is_nilpotent(r, w);
        if (nil.is_nilpotent) {
            out.decomposed = true;
            out.e = e;
            out.w = w;
            out.w_index = nil.index;
            return out;
        }
    }
    return out;
}

struct BudgetMeter {
    std::string context;
    std::uint64_t limit;
    std::uint64_t used = 0;
    void charge(std::uint64_t amount) {
        used += amount;
        if (used > limit) throw BudgetExceeded(context, limit, used);
    }
};

}  // namespace detail

/// Oracle factorization of one element: the smallest-index idempotent that
/// works, or the negative certificate after scanning the whole list.
inline DecomposeOutcome decompose_bruteforce(const Element& a,
                                             std::uint64_t budget = kDefaultOracleBudget) {
    const auto& idems = enumerate_idempotents(a.ring(), budget);
    detail::TrialOutcome t = detail::try_decompose(*a.ring(), idems, a.index());
    if (!t.decomposed)
        return NonNilCleanCertificate{a.ring(), a.index(), idems.size()};
    NilCleanWitness wit{a.ring(), a.index(), t.e, t.w, t.w_index, WitnessMethod::oracle};
    verify_witness(wit);
    return wit;
}

struct NilCleanDecision {
    bool nil_clean = false;
    std::optional<NonNilCleanCertificate> certificate;
    std::uint64_t elements_checked = 0;
    std::uint64_t visits = 0;  // canonical budget consumption
};

/// Exhaustive nil-cleanness of a whole ring. Scan order is ascending index
/// with a scalar-matrix prefix on matrix rings; the certificate is the
/// smallest-index failing element unless first_found is set, in which case
/// the first failure in scan order is reported.
inline NilCleanDecision ring_is_nil_clean(const RingHandle& r,
                                          std::uint64_t budget = kDefaultOracleBudget,
                                          bool first_found = false,
                                          bool scalar_heuristic = true) {
    const Ring& ring = *r;
    const std::uint64_t n = ring.order();
    detail::BudgetMeter meter{"nil-clean scan over " + ring.spec_string(), budget};
    const auto& idems = enumerate_idempotents(r, budget);
    meter.charge(n);  // the enumeration scan

    NilCleanDecision out;

    // Known failing element, used to prune the scan. The fold below only ever
    // consumes elements at or below the smallest failure, so pruning the rest
    // changes wall time but not the certificate or the budget accounting.
    std::atomic<std::uint64_t> best_failure{~std::uint64_t{0}};

    // Heuristic prefix: scalar matrices give fast counterexamples.
    if (scalar_heuristic && ring.kind() == RingKind::matrix_ring) {
        const auto& mr = static_cast<const MatrixRing&>(ring);
        const Ring& base = *mr.base();
        std::uint64_t entries[64];
        for (std::uint64_t s = 0; s < base.order(); ++s) {
            const std::uint32_t dim = mr.dimension();
            for (std::uint32_t i = 0; i < dim; ++i)
                for (std::uint32_t j = 0; j < dim; ++j)
                    entries[i * dim + j] = i == j ? s : base.zero();
            const std::uint64_t idx = mr.encode(entries);
            detail::TrialOutcome t = detail::try_decompose(ring, idems, idx);
            meter.charge(t.trials);
            if (!t.decomposed) {
                if (first_found) {
                    out.certificate = NonNilCleanCertificate{r, idx, idems.size()};
                    out.elements_checked = s + 1;
                    out.visits = meter.used;
                    return out;
                }
                best_failure.store(idx, std::memory_order_relaxed);
                break;  // a failure exists; the main scan will find the smallest
            }
        }
    }

    bool failed = false;
    std::uint64_t checked = 0;
    chunked_scan<detail::TrialOutcome>(
        0, n,
        [&](std::uint64_t a) {
            if (a > best_failure.load(std::memory_order_relaxed))
                return detail::TrialOutcome{false, true, 0, 0, 0, 0};
            detail::TrialOutcome t = detail::try_decompose(ring, idems, a);
            if (!t.decomposed) {
                std::uint64_t seen = best_failure.load(std::memory_order_relaxed);
                while (a < seen &&
                       !best_failure.compare_exchange_weak(seen, a, std::memory_order_relaxed)) {
                }
            }
            return t;
        },
        [&](std::uint64_t a, detail::TrialOutcome& t) {
            if (t.skipped)
                throw RingError("scan pruning reached the fold; this cannot happen");
            meter.charge(t.trials);
            ++checked;
            if (!t.decomposed) {
                out.certificate = NonNilCleanCertificate{r, a, idems.size()};
                failed = true;
                return false;
            }
            return true;
        });

    out.nil_clean = !failed;
    out.elements_checked = checked;
    out.visits = meter.used;
    return out;
}

// ---------------------------------------------------------------------------
// Idempotent lifting modulo a nil ideal
// ---------------------------------------------------------------------------

namespace detail {

inline std::uint64_t lift_iteration_bound(std::uint64_t s) {
    // each step squares the defect, so ceil(log2 s) + 1 steps suffice
    return (s <= 1 ? 0 : std::bit_width(s - 1)) + 1;
}

}  // namespace detail

struct LiftResult {
    Element e;
    std::uint64_t iterations;
};

/// Lifts b with b^2 - b in I (nil of index s) to an idempotent congruent to b
/// via e <- 3e^2 - 2e^3. All terms are polynomials in b, so the iteration
/// stays in the commutative subring generated by b even in matrix rings.
inline LiftResult lift_idempotent(const Element& b, const Ideal& I) {
    const Ring& r = *b.ring();
    if (!same_ring(*I.ring, r))
        throw RingMismatchError("lift_idempotent: ideal lives in a different ring");
    if (!I.contains(r.sub(r.mul(b.index(), b.index()), b.index())))
        throw RingError("lift_idempotent: b^2 - b is not in the ideal");
    std::optional<std::uint64_t> s = I.nil_index ? I.nil_index : ideal_nil_index(I);
    if (!s) throw RingError("lift_idempotent: ideal is not nil");

    const std::uint64_t max_iters = detail::lift_iteration_bound(*s);
    std::uint64_t e = b.index();
    std::uint64_t iterations = 0;
    while (r.mul(e, e) != e) {
        if (iterations >= max_iters)
            throw RingError("lift_idempotent: no convergence within the nil-index bound");
        const std::uint64_t e2 = r.mul(e, e);
        const std::uint64_t e3 = r.mul(e2, e);
        e = r.sub(r.add(r.add(e2, e2), e2), r.add(e3, e3));
        ++iterations;
    }
    if (!I.contains(r.sub(e, b.index())))
        throw RingError("lift_idempotent: lift drifted out of the coset");
    return {Element(b.ring(), e), iterations};
}

struct MatrixLiftResult {
    Matrix e;
    std::uint64_t iterations;
};

/// Matrix variant: membership in M_n(I) is entrywise membership in I, and the
/// nil-index bound for M_n(I) is n * s.
inline MatrixLiftResult lift_idempotent_matrix(const Matrix& b, const Ideal& base_ideal) {
    const Ring& base = *b.base();
    if (!same_ring(*base_ideal.ring, base))
        throw RingMismatchError("matrix lift: ideal lives in a different base ring");
    std::optional<std::uint64_t> s =
        base_ideal.nil_index ? base_ideal.nil_index : ideal_nil_index(base_ideal);
    if (!s) throw RingError("matrix lift: base ideal is not nil");

    auto in_matrix_ideal = [&](const Matrix& m) {
        for (std::uint64_t entry : m.entries())
            if (!base_ideal.contains(entry)) return false;
        return true;
    };
    if (!in_matrix_ideal(b * b - b))
        throw RingError("matrix lift: b^2 - b is not in M_n(I)");

    const std::uint64_t matrix_nil_bound = *s * b.dimension();
    const std::uint64_t max_iters = detail::lift_iteration_bound(matrix_nil_bound);
    Matrix e = b;
    std::uint64_t iterations = 0;
    while (e * e != e) {
        if (iterations >= max_iters)
            throw RingError("matrix lift: no convergence within the nil-index bound");
        const Matrix e2 = e * e;
        const Matrix e3 = e2 * e;
        e = (e2 + e2 + e2) - (e3 + e3);
        ++iterations;
    }
    if (!in_matrix_ideal(e - b)) throw RingError("matrix lift: lift drifted out of the coset");
    return {std::move(e), iterations};
}

// ---------------------------------------------------------------------------
// Boolean atoms
// ---------------------------------------------------------------------------

/// Minimal nonzero idempotents of a finite Boolean ring: pairwise orthogonal,
/// summing to one, count k with |B| = 2^k. Built by splitting each current
/// piece f into f*b and f*(1-b) for every ring element b.
inline std::vector<std::uint64_t> boolean_atoms(const RingHandle& B,
                                                std::uint64_t cap = kDefaultScanCap) {
    BooleanReport rep = ring_is_boolean(*B, cap);
    if (!rep.boolean) throw NonBooleanQuotient(*rep.witness, B->spec_string());
    const Ring& r = *B;
    std::vector<std::uint64_t> pieces;
    if (r.one() != r.zero()) pieces.push_back(r.one());
    for (std::uint64_t b = 0; b < r.order(); ++b) {
        std::vector<std::uint64_t> next;
        for (std::uint64_t f : pieces) {
            const std::uint64_t fb = r.mul(f, b);
            const std::uint64_t frest = r.sub(f, fb);
            if (fb != r.zero()) next.push_back(fb);
            if (frest != r.zero()) next.push_back(frest);
        }
        pieces = std::move(next);
    }
    std::sort(pieces.begin(), pieces.end());

    // atom contract: orthogonal, sum to one, 2^k pieces, each piece minimal
    std::uint64_t sum = r.zero();
    for (std::uint64_t f : pieces) sum = r.add(sum, f);
    if (sum != r.one()) throw RingError("boolean atoms do not sum to one");
    for (std::size_t i = 0; i < pieces.size(); ++i)
        for (std::size_t j = i + 1; j < pieces.size(); ++j)
            if (r.mul(pieces[i], pieces[j]) != r.zero())
                throw RingError("boolean atoms are not orthogonal");
    if (pieces.size() >= 64 || (std::uint64_t{1} << pieces.size()) != r.order())
        throw RingError("boolean atom count does not match ring order");
    for (std::uint64_t f : pieces) {
        std::unordered_set<std::uint64_t> image;
        for (std::uint64_t x = 0; x < r.order(); ++x) image.insert(r.mul(f, x));
        if (image.size() != 2) throw RingError("boolean atom is not minimal");
    }
    return pieces;
}

// ---------------------------------------------------------------------------
// Z/2 matrix kernel
// ---------------------------------------------------------------------------

inline const RingHandle& z2_ring() {
    static const RingHandle r = ZmodRing::make(2);
    return r;
}

inline const std::shared_ptr<const MatrixRing>& z2_matrix_ring(std::uint32_t n) {
    static const std::array<std::shared_ptr<const MatrixRing>, 4> rings = {
        MatrixRing::make(z2_ring(), 1), MatrixRing::make(z2_ring(), 2),
        MatrixRing::make(z2_ring(), 3), MatrixRing::make(z2_ring(), 4)};
    if (n == 0 || n > 4) throw CapExceeded("Z/2 matrix kernel dimension", n, 4);
    return rings[n - 1];
}

/// Factorization over the two-element field, the kernel the structured
/// pipeline transports every atom component through. An idempotent input is
/// its own answer; otherwise the memoized idempotent table of M_n(Z/2) is
/// scanned ascending. Nilpotency over a field is A^n = 0.
inline std::pair<Matrix, Matrix> decompose_matrix_z2(const Matrix& A) {
    const std::uint32_t n = A.dimension();
    if (!same_ring(*A.base(), *z2_ring()))
        throw RingMismatchError("decompose_matrix_z2 expects entries over Z/2");
    if (A * A == A) return {A, Matrix(A.base(), n)};
    const auto& mr = z2_matrix_ring(n);
    const auto& idems = enumerate_idempotents(mr, mr->order());
    for (std::uint64_t e_idx : idems) {
        Matrix E = matrix_from_index(A.base(), n, e_idx);
        Matrix W = A - E;
        if (W.pow(n).is_zero()) return {std::move(E), std::move(W)};
    }
    throw RingError("matrix over Z/2 failed to decompose: arithmetic is broken");
}

// ---------------------------------------------------------------------------
// Structured pipeline
// ---------------------------------------------------------------------------

/// Per-ring facts the structured pipeline needs: the radical with its nil
/// index, the Boolean quotient, and its atoms. Built once per ring.
struct StructuredCache {
    Ideal jacobson;
    std::uint64_t radical_nil_index = 1;
    std::shared_ptr<const QuotientRing> quotient;
    bool quotient_boolean = false;
    std::optional<std::uint64_t> non_boolean_witness;
    std::vector<std::uint64_t> atoms;
};

inline const StructuredCache& structured_cache(const RingHandle& r,
                                               std::uint64_t cap = kDefaultScanCap) {
    auto& cache = r->cache();
    std::call_once(cache.structured_once, [&] {
        auto sc = std::make_shared<StructuredCache>();
        sc->jacobson = jacobson_radical(r, cap);
        sc->radical_nil_index =
            sc->jacobson.nil_index.value();  // finite ring: radical is nil
        sc->quotient = quotient_ring(r, sc->jacobson);
        RingHandle q = sc->quotient;
        BooleanReport rep = ring_is_boolean(*q, cap);
        sc->quotient_boolean = rep.boolean;
        sc->non_boolean_witness = rep.witness;
        if (rep.boolean) sc->atoms = boolean_atoms(q, cap);
        cache.structured = std::move(sc);
    });
    return *cache.structured;
}

struct MatrixWitness {
    Matrix target;
    Matrix e;
    Matrix w;
    std::uint64_t w_nil_index;
    WitnessMethod method;
};

inline void verify_matrix_witness(const MatrixWitness& wit) {
    if (wit.e * wit.e != wit.e) throw RingError("matrix witness: E is not idempotent");
    if (wit.e + wit.w != wit.target) throw RingError("matrix witness: E + W != target");
    if (wit.w_nil_index < 1) throw RingError("matrix witness: nil index must be >= 1");
    if (!wit.w.pow(wit.w_nil_index).is_zero())
        throw RingError("matrix witness: W^index != 0");
    if (wit.w_nil_index == 1) {
        if (!wit.w.is_zero()) throw RingError("matrix witness: index 1 but W != 0");
    } else if (wit.w.pow(wit.w_nil_index - 1).is_zero()) {
        throw RingError("matrix witness: nil index is not minimal");
    }
}

/// Constructive factorization of A over R when R/J(R) is Boolean:
///   1. J = J(R) with nil index s; B = R/J.
///   2. Project A entrywise to Abar over B.
///   3. Split Abar across the atoms of B; each component lives over a
///      two-element Boolean piece, transport it to M_n(Z/2) and decompose;
///      orthogonality glues the per-atom idempotents into one over M_n(B).
///   4. Lift the glued idempotent through M_n(J).
///   5. W = A - E is nilpotent with W^(n*s) = 0; the exact index is recorded.
/// Refuses with the non-Boolean witness when the quotient is not Boolean.
inline MatrixWitness decompose_matrix_structured(const Matrix& A,
                                                 std::uint64_t cap = kDefaultScanCap) {
    const RingHandle& R = A.base();
    const std::uint32_t n = A.dimension();
    if (n > 4) throw CapExceeded("structured pipeline dimension", n, 4);
    const StructuredCache& sc = structured_cache(R, cap);
    if (!sc.quotient_boolean)
        throw NonBooleanQuotient(*sc.non_boolean_witness, sc.quotient->spec_string());
    const QuotientRing& B = *sc.quotient;
    RingHandle b_handle = sc.quotient;

    Matrix a_bar(b_handle, n);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j) a_bar.at(i, j) = B.project(A.at(i, j));

    Matrix e_bar(b_handle, n);
    for (std::uint64_t atom : sc.atoms) {
        Matrix component(z2_ring(), n);
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = 0; j < n; ++j) {
                const std::uint64_t x = B.mul(atom, a_bar.at(i, j));
                if (x != B.zero() && x != atom)
                    throw RingError("atom component left its two-element piece");
                component.at(i, j) = x == atom ? 1 : 0;
            }
        auto [e_z2, w_z2] = decompose_matrix_z2(component);
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = 0; j < n; ++j)
                if (e_z2.at(i, j) == 1)
                    e_bar.at(i, j) = B.add(e_bar.at(i, j), atom);
    }

    Matrix preimage(R, n);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j)
            preimage.at(i, j) = B.representative(e_bar.at(i, j));
    MatrixLiftResult lift = lift_idempotent_matrix(preimage, sc.jacobson);

    Matrix W = A - lift.e;
    const std::uint64_t bound = std::uint64_t{n} * sc.radical_nil_index;
    std::uint64_t w_index = 0;
    Matrix p = W;
    for (std::uint64_t k = 1; k <= bound && w_index == 0; ++k) {
        if (p.is_zero())
            w_index = k;
        else
            p = p * W;
    }
    if (w_index == 0)
        throw RingError("structured pipeline: W^(n*s) != 0; arithmetic is broken");

    MatrixWitness wit{A, std::move(lift.e), std::move(W), w_index, WitnessMethod::structured};
    verify_matrix_witness(wit);
    return wit;
}

}  // namespace nilclean
