#pragma once

/// Decision procedures and cross-validation suites.
///
/// The headline decision: for abelian R, M_n(R) is nil-clean iff R/J(R) is
/// Boolean and M_n(J(R)) is nil. The fast path evaluates that criterion; the
/// brute-force oracle decides by exhaustive factorization; method "both" runs
/// the two and treats any disagreement as a fatal discrepancy, never a
/// warning. The remaining suites check the surrounding equivalences (unit vs
/// full ideal, radical vs maximal-ideal intersection, ring-level vs
/// matrix-level nil-cleanness, the nil-ideal transfer with constructive
/// lifting, and the matrix-units counterexample profile).

#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nilclean/errors.hpp"
#include "nilclean/nilclean.hpp"
#include "nilclean/predicates.hpp"
#include "nilclean/radical.hpp"
#include "nilclean/ring.hpp"
#include "nilclean/ring_spec.hpp"

namespace nilclean {

enum class DecideMethod { auto_pick, theorem_path, bruteforce, both };

inline const char* decide_method_name(DecideMethod m) {
    switch (m) {
        case DecideMethod::auto_pick: return "auto";
        case DecideMethod::theorem_path: return "theorem";
        case DecideMethod::bruteforce: return "brute";
        case DecideMethod::both: return "both";
    }
    return "auto";
}

inline DecideMethod decide_method_from_name(const std::string& s) {
    if (s == "auto") return DecideMethod::auto_pick;
    if (s == "theorem") return DecideMethod::theorem_path;
    if (s == "brute") return DecideMethod::bruteforce;
    if (s == "both") return DecideMethod::both;
    throw RingError("unknown method '" + s + "' (auto|theorem|brute|both)");
}

struct DecisionReport {
    std::string ring_spec;
    std::uint64_t ring_order = 0;
    std::uint32_t n = 1;
    std::string method;  // what actually ran: "theorem", "bruteforce", "both"

    std::optional<bool> abelian;
    std::optional<std::uint64_t> radical_size;
    std::optional<std::uint64_t> radical_nil_index;
    std::optional<bool> rj_boolean;
    std::optional<std::uint64_t> rj_non_idempotent_witness;
    std::optional<bool> mn_radical_nil;
    std::optional<std::uint64_t> mn_nil_bound;

    bool nil_clean = false;
    std::optional<bool> theorem_verdict;
    std::optional<bool> oracle_verdict;
    std::optional<std::string> oracle_skip_reason;

    // oracle certificate: smallest non-decomposable element of M_n(R), or the
    // count of decomposed elements when everything factors
    std::optional<std::uint64_t> certificate_element;
    std::optional<std::uint64_t> certificate_idempotents_scanned;
    std::optional<std::uint64_t> elements_decomposed;
    std::uint64_t oracle_visits = 0;

    std::uint64_t timing_ms = 0;
};

/// Fast-path criterion plus the oracle, in any combination. The fast path
/// needs abelian R; for non-abelian rings it may still assert nil-cleanness
/// when the quotient is Boolean and the matrix radical nil (that direction
/// holds unconditionally), and refuses otherwise.
inline DecisionReport decide_matrix_nil_clean(const RingHandle& r, std::uint32_t n,
                                              DecideMethod method,
                                              std::uint64_t budget = kDefaultOracleBudget,
                                              bool first_found = false,
                                              std::uint64_t cap = kDefaultScanCap) {
    const auto started = std::chrono::steady_clock::now();
    DecisionReport rep;
    rep.ring_spec = r->spec_string();
    rep.ring_order = r->order();
    rep.n = n;
    if (n == 0) throw RingError("decide: n must be at least 1");

    // Criterion facts are cheap at base-ring scale; leave them null above cap.
    try {
        rep.abelian = ring_is_abelian(*r, cap).abelian;
        const Ideal& J = jacobson_radical(r, cap);
        rep.radical_size = J.size();
        rep.radical_nil_index = J.nil_index;
        const StructuredCache& sc = structured_cache(r, cap);
        rep.rj_boolean = sc.quotient_boolean;
        rep.rj_non_idempotent_witness = sc.non_boolean_witness;
        MatrixIdealNilReport nil = matrix_ideal_is_nil(r, J, n);
        rep.mn_radical_nil = nil.nil;
        rep.mn_nil_bound = nil.bound;
        if (*rep.abelian)
            rep.theorem_verdict = sc.quotient_boolean && nil.nil;
        else if (sc.quotient_boolean && nil.nil)
            rep.theorem_verdict = true;  // this direction needs no abelian hypothesis
    } catch (const CapExceeded&) {
        // base ring too large for the exhaustive criterion facts
    }

    DecideMethod resolved = method;
    if (method == DecideMethod::auto_pick)
        resolved = (rep.abelian && *rep.abelian) ? DecideMethod::theorem_path
                                                 : DecideMethod::bruteforce;

    const bool want_theorem =
        resolved == DecideMethod::theorem_path || resolved == DecideMethod::both;
    const bool want_oracle =
        resolved == DecideMethod::bruteforce || resolved == DecideMethod::both;

    if (want_theorem && !rep.theorem_verdict && resolved == DecideMethod::theorem_path) {
        if (rep.abelian && !*rep.abelian)
            throw TheoremRefusal("ring " + rep.ring_spec +
                                 " is not abelian and its quotient is not Boolean; the fast "
                                 "path only decides abelian rings (use method brute)");
        throw TheoremRefusal("criterion facts unavailable for " + rep.ring_spec +
                             " (ring exceeds the exhaustive-scan cap); use method brute");
    }

    if (want_oracle) {
        try {
            auto mn = MatrixRing::make(r, n);
            NilCleanDecision dec = ring_is_nil_clean(mn, budget, first_found);
            rep.oracle_verdict = dec.nil_clean;
            rep.oracle_visits = dec.visits;
            if (dec.certificate) {
                rep.certificate_element = dec.certificate->target;
                rep.certificate_idempotents_scanned = dec.certificate->idempotents_scanned;
            } else {
                rep.elements_decomposed = dec.elements_checked;
            }
        } catch (const BudgetExceeded& e) {
            if (resolved == DecideMethod::bruteforce) throw;
            rep.oracle_skip_reason = "budget";
        } catch (const CapExceeded& e) {
            if (resolved == DecideMethod::bruteforce) throw;
            rep.oracle_skip_reason = e.cap_name;
        }
    }

    if (rep.theorem_verdict && rep.oracle_verdict &&
        *rep.theorem_verdict != *rep.oracle_verdict)
        throw MethodDiscrepancy("method discrepancy on " + rep.ring_spec + " at n=" +
                                std::to_string(n) + ": theorem says " +
                                (*rep.theorem_verdict ? "true" : "false") +
                                ", oracle says " + (*rep.oracle_verdict ? "true" : "false"));

    if (resolved == DecideMethod::theorem_path) {
        rep.method = "theorem";
        rep.nil_clean = *rep.theorem_verdict;
    } else if (resolved == DecideMethod::bruteforce) {
        rep.method = "bruteforce";
        rep.nil_clean = *rep.oracle_verdict;
    } else {
        rep.method = "both";
        if (rep.oracle_verdict)
            rep.nil_clean = *rep.oracle_verdict;
        else if (rep.theorem_verdict)
            rep.nil_clean = *rep.theorem_verdict;
        else
            throw TheoremRefusal("neither method could decide " + rep.ring_spec +
                                 " within its limits");
    }

    rep.timing_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - started)
            .count());
    return rep;
}

// ---------------------------------------------------------------------------
// Survey of Z/m
// ---------------------------------------------------------------------------

struct SurveyRow {
    std::uint64_t m = 0;
    bool power_of_two = false;
    bool crt_verdict = false;      // single prime-power factor with p = 2
    bool theorem_verdict = false;  // criterion on Z/m directly
    std::optional<bool> oracle_verdict;
    bool cross_checked = false;
};

struct SurveyReport {
    std::uint32_t n = 2;
    std::uint64_t m_max = 0;
    std::vector<SurveyRow> rows;
    bool all_consistent = true;
};

/// M_n(Z/m) is nil-clean exactly when m is a power of two. Each row is
/// decided through the CRT split and through the criterion directly, and
/// cross-checked by the oracle where the budget allows; any mismatch with
/// the power-of-two rule is fatal.
inline SurveyReport survey_zm(std::uint64_t m_max, std::uint32_t n,
                              std::uint64_t budget = kDefaultOracleBudget) {
    if (m_max < 2) throw RingError("survey requires m_max >= 2");
    SurveyReport rep;
    rep.n = n;
    rep.m_max = m_max;
    for (std::uint64_t m = 2; m <= m_max; ++m) {
        SurveyRow row;
        row.m = m;
        row.power_of_two = (m & (m - 1)) == 0;

        CrtSplit split = crt_split_zm(m);
        row.crt_verdict = split.factors().size() == 1 && split.factors()[0].p == 2;

        RingHandle zm = ZmodRing::make(m);
        DecisionReport fast = decide_matrix_nil_clean(zm, n, DecideMethod::theorem_path);
        row.theorem_verdict = fast.nil_clean;

        try {
            DecisionReport oracle =
                decide_matrix_nil_clean(zm, n, DecideMethod::bruteforce, budget);
            row.oracle_verdict = oracle.nil_clean;
            row.cross_checked = true;
        } catch (const BudgetExceeded&) {
            row.cross_checked = false;
        }

        if (row.crt_verdict != row.power_of_two || row.theorem_verdict != row.power_of_two ||
            (row.oracle_verdict && *row.oracle_verdict != row.power_of_two))
            throw MethodDiscrepancy("survey row m=" + std::to_string(m) +
                                    " disagrees with the power-of-two rule");
        rep.rows.push_back(row);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Nil-ideal transfer and lifting stress
// ---------------------------------------------------------------------------

struct NilIdealTransferReport {
    std::string ring_spec;
    std::uint64_t ideal_size = 0;
    std::uint64_t ideal_nil_index = 0;
    bool ring_nil_clean = false;
    bool quotient_nil_clean = false;
    bool equivalent = false;
    std::uint64_t lifted_witnesses = 0;  // constructive ring witnesses from quotient ones
    bool pass = false;
};

/// R is nil-clean iff R/I is, for I nil: both sides decided by the oracle,
/// and in the positive case every element's quotient witness is lifted back
/// to a verified ring witness through the idempotent-lifting iteration.
inline NilIdealTransferReport check_nil_ideal_transfer(const RingHandle& r, const Ideal& I,
                                                       std::uint64_t budget = kDefaultOracleBudget) {
    NilIdealTransferReport rep;
    rep.ring_spec = r->spec_string();
    rep.ideal_size = I.size();
    Ideal ideal = I;
    if (!ideal.nil_index) ideal.nil_index = ideal_nil_index(ideal);
    if (!ideal.nil_index) throw RingError("nil-ideal transfer requires a nil ideal");
    rep.ideal_nil_index = *ideal.nil_index;

    auto quotient = quotient_ring(r, ideal);
    rep.ring_nil_clean = ring_is_nil_clean(r, budget).nil_clean;
    rep.quotient_nil_clean = ring_is_nil_clean(quotient, budget).nil_clean;
    rep.equivalent = rep.ring_nil_clean == rep.quotient_nil_clean;
    rep.pass = rep.equivalent;

    if (rep.quotient_nil_clean && rep.pass) {
        for (std::uint64_t a = 0; a < r->order(); ++a) {
            const std::uint64_t a_bar = quotient->project(a);
            DecomposeOutcome out = decompose_bruteforce(Element(quotient, a_bar), budget);
            const auto& qwit = std::get<NilCleanWitness>(out);
            const std::uint64_t b = quotient->representative(qwit.e);
            LiftResult lift = lift_idempotent(Element(r, b), ideal);
            const std::uint64_t w = r->sub(a, lift.e.index());
            NilpotencyResult nil = is_nilpotent(*r, w);
            if (!nil.is_nilpotent) {
                rep.pass = false;
                break;
            }
            NilCleanWitness wit{r, a, lift.e.index(), w, nil.index, WitnessMethod::structured};
            verify_witness(wit);
            ++rep.lifted_witnesses;
        }
    }
    return rep;
}

struct LiftStressReport {
    std::string ring_spec;
    std::uint64_t samples = 0;
    std::uint64_t max_iterations = 0;
    std::uint64_t iteration_bound = 0;
    bool pass = false;
};

/// Random liftable elements (idempotent modulo I plus ideal noise); the
/// iteration must converge within ceil(log2 s) + 1 steps every time.
inline LiftStressReport lift_idempotent_stress(const RingHandle& r, const Ideal& I,
                                               std::uint64_t samples = 1000,
                                               std::uint64_t budget = kDefaultOracleBudget) {
    LiftStressReport rep;
    rep.ring_spec = r->spec_string();
    rep.samples = samples;
    Ideal ideal = I;
    if (!ideal.nil_index) ideal.nil_index = ideal_nil_index(ideal);
    if (!ideal.nil_index) throw RingError("lift stress requires a nil ideal");
    rep.iteration_bound = detail::lift_iteration_bound(*ideal.nil_index);

    auto quotient = quotient_ring(r, ideal);
    const auto& q_idems = enumerate_idempotents(quotient, budget);
    std::mt19937_64 rng(0x6c696674ull);  // fixed seed: reproducible stress runs
    std::uniform_int_distribution<std::size_t> pick_idem(0, q_idems.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_noise(0, ideal.elements.size() - 1);
    rep.pass = true;
    for (std::uint64_t i = 0; i < samples; ++i) {
        const std::uint64_t rep_idx = quotient->representative(q_idems[pick_idem(rng)]);
        const std::uint64_t b = r->add(rep_idx, ideal.elements[pick_noise(rng)]);
        LiftResult lift = lift_idempotent(Element(r, b), ideal);
        if (lift.iterations > rep.max_iterations) rep.max_iterations = lift.iterations;
        if (lift.iterations > rep.iteration_bound) rep.pass = false;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Unit vs full ideal, radical vs maximal-ideal intersection
// ---------------------------------------------------------------------------

struct UnitFullIdealReport {
    std::string ring_spec;
    bool exchange_verified = false;
    std::uint64_t elements_checked = 0;
    std::optional<std::uint64_t> witness;  // element where the equivalence breaks
    bool pass = false;
};

/// In an abelian exchange ring, RxR = R exactly when x is a unit. Finite
/// rings are exchange; that hypothesis is re-verified, not assumed.
inline UnitFullIdealReport check_unit_full_ideal(const RingHandle& r,
                                                 std::uint64_t cap = kDefaultScanCap) {
    UnitFullIdealReport rep;
    rep.ring_spec = r->spec_string();
    if (!ring_is_abelian(*r, cap).abelian)
        throw RingError("unit/full-ideal suite expects an abelian ring");
    rep.exchange_verified = ring_is_exchange(*r, cap);
    rep.pass = rep.exchange_verified;
    for (std::uint64_t x = 0; x < r->order(); ++x) {
        const bool full = is_full_ideal(ideal_generated_by(r, {x}, cap));
        const bool unit = inverse_of(*r, x, cap).has_value();
        ++rep.elements_checked;
        if (full != unit) {
            rep.witness = x;
            rep.pass = false;
            break;
        }
    }
    return rep;
}

struct RadicalIntersectionReport {
    std::string ring_spec;
    std::uint64_t jacobson_size = 0;
    std::uint64_t j_star_size = 0;
    bool equal = false;
};

/// For abelian exchange rings the radical equals the intersection of the
/// maximal two-sided ideals, as element sets.
inline RadicalIntersectionReport check_radical_equals_jstar(
    const RingHandle& r, std::uint64_t cap = kDefaultScanCap,
    std::uint64_t lattice_cap = kDefaultLatticeCap) {
    RadicalIntersectionReport rep;
    rep.ring_spec = r->spec_string();
    const Ideal& J = jacobson_radical(r, cap);
    Ideal JS = j_star(r, lattice_cap);
    rep.jacobson_size = J.size();
    rep.j_star_size = JS.size();
    rep.equal = J.elements == JS.elements;
    return rep;
}

// ---------------------------------------------------------------------------
// Connected rings: matrix nil-cleanness against the two-element quotient
// ---------------------------------------------------------------------------

struct ConnectedCriterionReport {
    std::string ring_spec;
    std::uint32_t n = 0;
    bool oracle_nil_clean = false;
    std::uint64_t quotient_order = 0;
    bool mn_radical_nil = false;
    bool rhs = false;  // |R/J| = 2 and M_n(J) nil
    bool agree = false;
    std::optional<std::uint64_t> certificate_element;
};

/// For a ring with no non-trivial idempotents, M_n(R) is nil-clean iff the
/// quotient by the radical is the two-element field and M_n(J) is nil.
inline ConnectedCriterionReport check_connected_matrix_criterion(
    const RingHandle& r, std::uint32_t n, std::uint64_t budget = kDefaultOracleBudget,
    std::uint64_t cap = kDefaultScanCap) {
    if (!ring_is_connected(*r, cap))
        throw RingError("connected-criterion suite expects a ring with only trivial idempotents");
    ConnectedCriterionReport rep;
    rep.ring_spec = r->spec_string();
    rep.n = n;
    const Ideal& J = jacobson_radical(r, cap);
    const StructuredCache& sc = structured_cache(r, cap);
    rep.quotient_order = sc.quotient->order();
    rep.mn_radical_nil = matrix_ideal_is_nil(r, J, n).nil;
    rep.rhs = rep.quotient_order == 2 && rep.mn_radical_nil;

    auto mn = MatrixRing::make(r, n);
    NilCleanDecision dec = ring_is_nil_clean(mn, budget);
    rep.oracle_nil_clean = dec.nil_clean;
    if (dec.certificate) rep.certificate_element = dec.certificate->target;
    rep.agree = rep.oracle_nil_clean == rep.rhs;
    return rep;
}

// ---------------------------------------------------------------------------
// Commutative corollaries
// ---------------------------------------------------------------------------

struct CommutativeCriteriaReport {
    std::string ring_spec;
    std::uint32_t n = 0;
    std::optional<bool> matrix_nil_clean;  // oracle, when within budget
    bool radical_criterion = false;        // R/J Boolean and J nil
    bool square_defect_nilpotent = false;  // a - a^2 nilpotent for every a
    std::optional<std::uint64_t> square_defect_witness;
    bool agree = false;
};

/// Over a commutative ring, three conditions coincide: M_n(R) nil-clean;
/// R/J Boolean with J nil; every a - a^2 nilpotent.
inline CommutativeCriteriaReport check_commutative_criteria(
    const RingHandle& r, std::uint32_t n, std::uint64_t budget = kDefaultOracleBudget,
    std::uint64_t cap = kDefaultScanCap) {
    if (!ring_is_commutative(*r, cap))
        throw RingError("commutative-criteria suite expects a commutative ring");
    CommutativeCriteriaReport rep;
    rep.ring_spec = r->spec_string();
    rep.n = n;

    const Ideal& J = jacobson_radical(r, cap);
    const StructuredCache& sc = structured_cache(r, cap);
    rep.radical_criterion = sc.quotient_boolean && J.nil_index.has_value();

    rep.square_defect_nilpotent = true;
    for (std::uint64_t a = 0; a < r->order(); ++a) {
        const std::uint64_t defect = r->sub(a, r->mul(a, a));
        if (!is_nilpotent(*r, defect).is_nilpotent) {
            rep.square_defect_nilpotent = false;
            rep.square_defect_witness = a;
            break;
        }
    }

    try {
        auto mn = MatrixRing::make(r, n);
        rep.matrix_nil_clean = ring_is_nil_clean(mn, budget).nil_clean;
    } catch (const BudgetExceeded&) {
    } catch (const CapExceeded&) {
    }

    rep.agree = rep.radical_criterion == rep.square_defect_nilpotent &&
                (!rep.matrix_nil_clean || *rep.matrix_nil_clean == rep.radical_criterion);
    return rep;
}

struct RingMatrixEquivalenceReport {
    std::string ring_spec;
    bool ring_nil_clean = false;
    std::optional<bool> m1_nil_clean;
    std::optional<bool> m2_nil_clean;
    bool agree = false;
};

/// A commutative ring is nil-clean iff its matrix rings are; checked at the
/// ring itself, n = 1 and n = 2, with graceful budget degradation.
inline RingMatrixEquivalenceReport check_ring_matrix_equivalence(
    const RingHandle& r, std::uint64_t budget = kDefaultOracleBudget,
    std::uint64_t cap = kDefaultScanCap) {
    if (!ring_is_commutative(*r, cap))
        throw RingError("ring/matrix equivalence suite expects a commutative ring");
    RingMatrixEquivalenceReport rep;
    rep.ring_spec = r->spec_string();
    rep.ring_nil_clean = ring_is_nil_clean(r, budget).nil_clean;
    rep.m1_nil_clean =
        decide_matrix_nil_clean(r, 1, DecideMethod::both, budget, false, cap).nil_clean;
    rep.m2_nil_clean =
        decide_matrix_nil_clean(r, 2, DecideMethod::both, budget, false, cap).nil_clean;
    rep.agree = (!rep.m1_nil_clean || *rep.m1_nil_clean == rep.ring_nil_clean) &&
                (!rep.m2_nil_clean || *rep.m2_nil_clean == rep.ring_nil_clean);
    return rep;
}

// ---------------------------------------------------------------------------
// The matrix-units counterexample
// ---------------------------------------------------------------------------

struct CounterexampleReport {
    std::string ring_spec;
    bool nil_clean = false;
    bool radical_zero = false;
    bool boolean = false;
    bool abelian = false;
    bool pass = false;
};

/// S = M_n(GF(2)), n >= 2: nil-clean with zero radical, yet neither Boolean
/// nor abelian. This is why the fast criterion requires the abelian
/// hypothesis in one direction.
inline CounterexampleReport matrix_units_counterexample_check(
    std::uint32_t n = 2, std::uint64_t budget = kDefaultOracleBudget,
    std::uint64_t cap = kDefaultScanCap) {
    if (n < 2) throw RingError("the counterexample needs n >= 2");
    auto s = MatrixRing::make(GaloisFieldRing::make(2), n);
    CounterexampleReport rep;
    rep.ring_spec = s->spec_string();
    rep.nil_clean = ring_is_nil_clean(s, budget).nil_clean;
    rep.radical_zero = jacobson_radical(s, cap).is_zero();
    rep.boolean = ring_is_boolean(*s, cap).boolean;
    rep.abelian = ring_is_abelian(*s, cap).abelian;
    rep.pass = rep.nil_clean && rep.radical_zero && !rep.boolean && !rep.abelian;
    return rep;
}

// ---------------------------------------------------------------------------
// Corpus
// ---------------------------------------------------------------------------

/// Every example class the suites exercise, plus the counterexample ring.
inline std::vector<std::string> default_corpus() {
    std::vector<std::string> corpus;
    for (int m = 2; m <= 16; ++m) corpus.push_back("Z/" + std::to_string(m));
    corpus.insert(corpus.end(), {"GF(2)", "GF(3)", "GF(4)", "GF(8)", "GF(9)"});
    corpus.insert(corpus.end(), {"Z/2 x Z/2", "Z/2 x Z/4", "Z/4 x Z/4", "Z/2 x Z/3"});
    corpus.insert(corpus.end(),
                  {"triv(GF(2),1)", "triv(GF(2),2)", "triv(GF(3),2)", "triv(GF(4),2)"});
    corpus.push_back("M2(GF(2))");
    return corpus;
}

struct CorpusEntry {
    std::string spec;
    RingHandle ring;
    bool commutative = false;
    bool abelian = false;
    bool connected = false;
    bool exchange = false;
    bool local = false;
    bool boolean = false;
    std::uint64_t radical_size = 0;
    std::uint64_t radical_nil_index = 0;
};

inline CorpusEntry analyze_corpus_ring(const std::string& spec,
                                       std::uint64_t cap = kDefaultScanCap) {
    CorpusEntry entry;
    entry.ring = parse_ring_spec(spec);
    entry.spec = entry.ring->spec_string();
    entry.commutative = ring_is_commutative(*entry.ring, cap);
    entry.abelian = ring_is_abelian(*entry.ring, cap).abelian;
    entry.connected = ring_is_connected(*entry.ring, cap);
    entry.exchange = ring_is_exchange(*entry.ring, cap);
    entry.local = is_local_ring(*entry.ring, cap);
    entry.boolean = ring_is_boolean(*entry.ring, cap).boolean;
    const Ideal& J = jacobson_radical(entry.ring, cap);
    entry.radical_size = J.size();
    entry.radical_nil_index = J.nil_index.value_or(0);
    return entry;
}

// ---------------------------------------------------------------------------
// Cross-validation
// ---------------------------------------------------------------------------

struct CrossValidationEntry {
    std::string spec;
    std::uint32_t n = 1;
    std::optional<bool> theorem_verdict;
    std::optional<bool> oracle_verdict;
    std::string status;  // "agree", "oracle_only", "theorem_only:<reason>", ...
};

struct CrossValidationSummary {
    std::vector<CrossValidationEntry> entries;
    std::uint64_t cross_checked = 0;
    std::uint64_t discrepancies = 0;  // a discrepancy throws, so 0 on return
};

/// Runs decide(both) over the corpus: n = 1 and 2 everywhere, n = 3 over
/// order-2 rings. Any disagreement between methods aborts the run.
inline CrossValidationSummary cross_validate(const std::vector<std::string>& corpus,
                                             std::uint64_t budget = kDefaultOracleBudget,
                                             std::uint32_t n_max = 3,
                                             std::uint64_t cap = kDefaultScanCap) {
    CrossValidationSummary summary;
    for (const std::string& spec : corpus) {
        RingHandle r = parse_ring_spec(spec);
        std::vector<std::uint32_t> dims;
        for (std::uint32_t n = 1; n <= 2 && n <= n_max; ++n) dims.push_back(n);
        if (r->order() == 2 && n_max >= 3) dims.push_back(3);
        for (std::uint32_t n : dims) {
            CrossValidationEntry entry;
            entry.spec = r->spec_string();
            entry.n = n;
            DecisionReport rep;
            try {
                rep = decide_matrix_nil_clean(r, n, DecideMethod::both, budget, false, cap);
            } catch (const TheoremRefusal&) {
                rep = decide_matrix_nil_clean(r, n, DecideMethod::bruteforce, budget, false,
                                              cap);
            }
            entry.theorem_verdict = rep.theorem_verdict;
            entry.oracle_verdict = rep.oracle_verdict;
            if (rep.theorem_verdict && rep.oracle_verdict) {
                entry.status = "agree";
                ++summary.cross_checked;
            } else if (rep.oracle_verdict) {
                entry.status = "oracle_only";
            } else {
                entry.status = "theorem_only:" + rep.oracle_skip_reason.value_or("refused");
            }
            summary.entries.push_back(std::move(entry));
        }
    }
    return summary;
}

// ---------------------------------------------------------------------------
// Full verification driver
// ---------------------------------------------------------------------------

struct SuiteResult {
    std::string suite;
    std::string subject;
    bool pass = false;
    std::string detail;
};

struct VerifySummary {
    std::vector<SuiteResult> results;
    std::uint64_t total = 0;
    std::uint64_t passed = 0;
    bool all_pass = false;
};

inline constexpr std::uint64_t kVerifyBudget = std::uint64_t{1} << 28;

/// Every suite over the corpus, in corpus order: cross-validation, exchange
/// regression, unit/full-ideal and radical-intersection checks on abelian
/// rings, the connected criterion, the commutative corollaries, nil-ideal
/// transfer with lifting stress, and the counterexample profile.
inline VerifySummary run_verification(const std::vector<std::string>& corpus,
                                      std::uint64_t budget = kVerifyBudget,
                                      std::uint32_t n_max = 3,
                                      std::uint64_t lift_samples = 1000,
                                      std::uint64_t cap = kDefaultScanCap) {
    VerifySummary summary;
    auto add = [&](std::string suite, std::string subject, bool pass, std::string detail) {
        summary.results.push_back({std::move(suite), std::move(subject), pass, std::move(detail)});
    };

    CrossValidationSummary cv = cross_validate(corpus, budget, n_max, cap);
    for (const auto& e : cv.entries)
        add("cross-validation", e.spec + " n=" + std::to_string(e.n), true, e.status);

    for (const std::string& spec : corpus) {
        CorpusEntry entry = analyze_corpus_ring(spec, cap);
        const RingHandle& r = entry.ring;

        if (r->order() <= 64)
            add("exchange-regression", entry.spec, entry.exchange,
                entry.exchange ? "finite ring is exchange" : "exchange scan failed");

        if (entry.abelian) {
            UnitFullIdealReport ufi = check_unit_full_ideal(r, cap);
            add("unit-iff-full-ideal", entry.spec, ufi.pass,
                "checked " + std::to_string(ufi.elements_checked) + " elements");
            if (r->order() <= kDefaultLatticeCap) {
                RadicalIntersectionReport ri = check_radical_equals_jstar(r, cap);
                add("radical-equals-maximal-intersection", entry.spec, ri.equal,
                    "|J|=" + std::to_string(ri.jacobson_size) +
                        " |J*|=" + std::to_string(ri.j_star_size));
            }
        }

        if (entry.connected) {
            ConnectedCriterionReport cc = check_connected_matrix_criterion(r, 2, budget, cap);
            add("connected-matrix-criterion", entry.spec, cc.agree,
                std::string("oracle=") + (cc.oracle_nil_clean ? "true" : "false") +
                    " rhs=" + (cc.rhs ? "true" : "false"));
        }

        if (entry.commutative) {
            if (r->order() <= 16) {
                CommutativeCriteriaReport c3 = check_commutative_criteria(r, 2, budget, cap);
                add("commutative-three-criteria", entry.spec, c3.agree,
                    c3.matrix_nil_clean ? "all three evaluated" : "oracle skipped");
            }
            RingMatrixEquivalenceReport rme = check_ring_matrix_equivalence(r, budget, cap);
            add("ring-vs-matrix-equivalence", entry.spec, rme.agree,
                std::string("ring=") + (rme.ring_nil_clean ? "true" : "false"));
        }

        const Ideal& J = jacobson_radical(r, cap);
        NilIdealTransferReport transfer = check_nil_ideal_transfer(r, J, budget);
        add("nil-ideal-transfer", entry.spec, transfer.pass,
            "lifted " + std::to_string(transfer.lifted_witnesses) + " witnesses");
        LiftStressReport stress = lift_idempotent_stress(r, J, lift_samples, budget);
        add("lift-iteration-bound", entry.spec, stress.pass,
            "max " + std::to_string(stress.max_iterations) + " of bound " +
                std::to_string(stress.iteration_bound));
    }

    CounterexampleReport cx = matrix_units_counterexample_check(2, budget, cap);
    add("matrix-units-counterexample", cx.ring_spec, cx.pass,
        "nil-clean and not abelian, quotient not Boolean");
    CounterexampleReport cx3 = matrix_units_counterexample_check(3, budget, cap);
    add("matrix-units-counterexample", cx3.ring_spec, cx3.pass,
        "nil-clean and not abelian, quotient not Boolean");

    summary.total = summary.results.size();
    for (const auto& res : summary.results)
        if (res.pass) ++summary.passed;
    summary.all_pass = summary.passed == summary.total;
    return summary;
}

}  // namespace nilclean
