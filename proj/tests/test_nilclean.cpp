// Factorization engines: the oracle, lifting, Boolean atoms, the Z/2 matrix
// kernel, and the structured pipeline, with witness soundness throughout.

#include <gtest/gtest.h>

#include <nilclean/nilclean.hpp>
#include <nilclean/ring_spec.hpp>

#include <cstdlib>
#include <random>

using namespace nilclean;

TEST(EnumerateIdempotents, FrozenExamples) {
    EXPECT_EQ(enumerate_idempotents(parse_ring_spec("Z/6")),
              (std::vector<std::uint64_t>{0, 1, 3, 4}));
    EXPECT_EQ(enumerate_idempotents(parse_ring_spec("M2(Z/2)")),
              (std::vector<std::uint64_t>{0, 1, 3, 5, 8, 9, 10, 12}));
    EXPECT_EQ(enumerate_idempotents(parse_ring_spec("M2(Z/3)")).size(), 14u);
}

TEST(EnumerateIdempotents, BudgetRefusalIgnoresCacheWarmth) {
    auto z6 = parse_ring_spec("Z/6");
    EXPECT_EQ(enumerate_idempotents(z6).size(), 4u);  // warm the cache
    EXPECT_THROW(enumerate_idempotents(z6, 4), BudgetExceeded);
}

// ---------------------------------------------------------------------------
// Oracle decomposition
// ---------------------------------------------------------------------------

TEST(DecomposeBruteforce, FrozenExamples) {
    auto z4 = parse_ring_spec("Z/4");
    auto out = decompose_bruteforce(Element(z4, 3));
    auto& wit = std::get<NilCleanWitness>(out);
    EXPECT_EQ(wit.e, 1u);
    EXPECT_EQ(wit.w, 2u);
    EXPECT_EQ(wit.w_nil_index, 2u);
    EXPECT_EQ(wit.method, WitnessMethod::oracle);

    auto z6 = parse_ring_spec("Z/6");
    auto out2 = decompose_bruteforce(Element(z6, 2));
    auto& cert = std::get<NonNilCleanCertificate>(out2);
    EXPECT_EQ(cert.target, 2u);
    EXPECT_EQ(cert.idempotents_scanned, 4u);

    // [[0,1],[1,0]] over Z/2: smallest working idempotent is the identity
    auto m2z2 = parse_ring_spec("M2(Z/2)");
    auto out3 = decompose_bruteforce(Element(m2z2, 6));
    auto& wit3 = std::get<NilCleanWitness>(out3);
    EXPECT_EQ(wit3.e, 9u);   // I_2
    EXPECT_EQ(wit3.w, 15u);  // [[1,1],[1,1]]
    EXPECT_EQ(wit3.w_nil_index, 2u);
}

TEST(DecomposeBruteforce, CertificateReverifies) {
    auto z6 = parse_ring_spec("Z/6");
    auto out = decompose_bruteforce(Element(z6, 2));
    auto& cert = std::get<NonNilCleanCertificate>(out);
    for (std::uint64_t e : enumerate_idempotents(z6))
        EXPECT_FALSE(is_nilpotent(*z6, z6->sub(cert.target, e)).is_nilpotent);
}

TEST(WitnessSoundness, TamperedWitnessesAreRejected) {
    auto z4 = parse_ring_spec("Z/4");
    NilCleanWitness good{z4, 3, 1, 2, 2, WitnessMethod::oracle};
    EXPECT_NO_THROW(verify_witness(good));
    NilCleanWitness bad_e{z4, 3, 2, 1, 1, WitnessMethod::oracle};
    EXPECT_THROW(verify_witness(bad_e), RingError);
    NilCleanWitness bad_sum{z4, 3, 1, 3, 2, WitnessMethod::oracle};
    EXPECT_THROW(verify_witness(bad_sum), RingError);
    NilCleanWitness bad_index{z4, 3, 1, 2, 3, WitnessMethod::oracle};
    EXPECT_THROW(verify_witness(bad_index), RingError);
}

TEST(RingIsNilClean, FrozenExamples) {
    NilCleanDecision yes = ring_is_nil_clean(parse_ring_spec("M2(Z/2)"));
    EXPECT_TRUE(yes.nil_clean);
    EXPECT_EQ(yes.elements_checked, 16u);

    NilCleanDecision no = ring_is_nil_clean(parse_ring_spec("Z/6"));
    EXPECT_FALSE(no.nil_clean);
    EXPECT_EQ(no.certificate->target, 2u);

    EXPECT_TRUE(ring_is_nil_clean(parse_ring_spec("M2(GF(2))")).nil_clean);
}

TEST(RingIsNilClean, PowersOfTwoMatrixRingsDecompose) {
    // every element of M_n(Z/2^r) for n <= 2, r <= 3 has a witness
    for (const char* spec : {"Z/2", "Z/4", "Z/8"}) {
        auto base = parse_ring_spec(spec);
        EXPECT_TRUE(ring_is_nil_clean(base).nil_clean) << spec;
        EXPECT_TRUE(ring_is_nil_clean(build_matrix_ring(base, 2)).nil_clean) << spec;
    }
}

TEST(RingIsNilClean, FirstFoundReportsHeuristicHit) {
    auto m2z3 = parse_ring_spec("M2(Z/3)");
    // scalar prefix: 0 and I decompose, 2*I does not; its index is 56
    NilCleanDecision first = ring_is_nil_clean(m2z3, kDefaultOracleBudget, true);
    EXPECT_FALSE(first.nil_clean);
    EXPECT_EQ(first.certificate->target, 56u);
    // without first-found the certificate is the smallest failing element
    NilCleanDecision smallest = ring_is_nil_clean(m2z3);
    EXPECT_EQ(smallest.certificate->target, 2u);  // [[0,0],[0,2]]
}

TEST(RingIsNilClean, DeterministicAcrossWorkerCounts) {
    setenv("NILCLEAN_THREADS", "0", 1);
    NilCleanDecision base = ring_is_nil_clean(parse_ring_spec("M2(Z/9)"));
    ASSERT_FALSE(base.nil_clean);
    EXPECT_EQ(base.certificate->target, 2u);  // [[0,0],[0,2]]
    for (const char* threads : {"1", "4", "7"}) {
        setenv("NILCLEAN_THREADS", threads, 1);
        // visit accounting is charged in canonical fold order, so the numbers
        // must match no matter how the chunks were mapped
        NilCleanDecision dec = ring_is_nil_clean(parse_ring_spec("M2(Z/9)"));
        EXPECT_EQ(dec.nil_clean, base.nil_clean) << threads;
        EXPECT_EQ(dec.certificate->target, base.certificate->target) << threads;
        EXPECT_EQ(dec.certificate->idempotents_scanned,
                  base.certificate->idempotents_scanned);
        EXPECT_EQ(dec.visits, base.visits) << threads;
    }
    unsetenv("NILCLEAN_THREADS");
}

TEST(RingIsNilClean, BudgetExceededIsDeterministic) {
    auto big = parse_ring_spec("M2(Z/16)");
    EXPECT_THROW(ring_is_nil_clean(big, 1 << 10), BudgetExceeded);
}

// ---------------------------------------------------------------------------
// Lifting
// ---------------------------------------------------------------------------

TEST(LiftIdempotent, ScalarExample) {
    auto z4 = parse_ring_spec("Z/4");
    Ideal I = ideal_generated_by(z4, {2});
    LiftResult lift = lift_idempotent(Element(z4, 3), I);
    EXPECT_EQ(lift.e.index(), 1u);  // 3*9 - 2*27 = 1 mod 4
    EXPECT_EQ(lift.iterations, 1u);
}

TEST(LiftIdempotent, FixedPointOnIdempotents) {
    auto z6 = parse_ring_spec("Z/6");
    Ideal zero = zero_ideal(z6);
    for (std::uint64_t e : enumerate_idempotents(z6)) {
        LiftResult lift = lift_idempotent(Element(z6, e), zero);
        EXPECT_EQ(lift.e.index(), e);
        EXPECT_EQ(lift.iterations, 0u);
    }
}

TEST(LiftIdempotent, MatrixEntrywiseExample) {
    auto z4 = parse_ring_spec("Z/4");
    Matrix b(z4, 2);
    b.at(0, 0) = 3;
    // via the matrix variant
    MatrixLiftResult lift = lift_idempotent_matrix(b, jacobson_radical(z4));
    EXPECT_EQ(lift.e.at(0, 0), 1u);
    EXPECT_EQ(lift.e.at(0, 1), 0u);
    EXPECT_EQ(lift.e.at(1, 0), 0u);
    EXPECT_EQ(lift.e.at(1, 1), 0u);
    // and via the element variant over the matrix-ring descriptor
    auto m2 = build_matrix_ring(z4, 2);
    Ideal mj = matrix_ideal(m2, jacobson_radical(z4));
    LiftResult elift = lift_idempotent(Element(m2, matrix_to_index(b)), mj);
    EXPECT_EQ(elift.e.index(), matrix_to_index(lift.e));
}

TEST(LiftIdempotent, PreconditionViolation) {
    auto z6 = parse_ring_spec("Z/6");
    EXPECT_THROW(lift_idempotent(Element(z6, 2), zero_ideal(z6)), RingError);
}

TEST(LiftIdempotent, LiftStaysInCosetAndMeetsBound) {
    std::mt19937_64 rng(99);
    for (const char* spec : {"Z/4", "Z/8", "Z/16", "triv(GF(2),2)", "triv(GF(4),2)"}) {
        auto r = parse_ring_spec(spec);
        const Ideal& J = jacobson_radical(r);
        const std::uint64_t bound = detail::lift_iteration_bound(*J.nil_index);
        auto q = quotient_ring(r, J);
        RingHandle qh = q;
        const auto& q_idems = enumerate_idempotents(qh);
        std::uniform_int_distribution<std::size_t> pick_e(0, q_idems.size() - 1);
        std::uniform_int_distribution<std::size_t> pick_j(0, J.elements.size() - 1);
        for (int trial = 0; trial < 500; ++trial) {
            const std::uint64_t b =
                r->add(q->representative(q_idems[pick_e(rng)]), J.elements[pick_j(rng)]);
            LiftResult lift = lift_idempotent(Element(r, b), J);
            EXPECT_TRUE(is_idempotent(lift.e));
            EXPECT_TRUE(J.contains(r->sub(lift.e.index(), b)));
            EXPECT_LE(lift.iterations, bound) << spec;
        }
    }
}

// ---------------------------------------------------------------------------
// Boolean atoms
// ---------------------------------------------------------------------------

TEST(BooleanAtoms, FrozenExamples) {
    EXPECT_EQ(boolean_atoms(parse_ring_spec("Z/2")), (std::vector<std::uint64_t>{1}));
    EXPECT_EQ(boolean_atoms(parse_ring_spec("Z/2 x Z/2")),
              (std::vector<std::uint64_t>{1, 2}));
    // order-4 Boolean quotient of Z/2 x Z/4 has two atoms
    auto r = parse_ring_spec("Z/2 x Z/4");
    auto q = quotient_ring(r, jacobson_radical(r));
    RingHandle qh = q;
    EXPECT_EQ(boolean_atoms(qh).size(), 2u);
}

TEST(BooleanAtoms, ContractHolds) {
    auto r = parse_ring_spec("Z/2 x Z/2 x Z/2");
    auto atoms = boolean_atoms(r);
    ASSERT_EQ(atoms.size(), 3u);
    std::uint64_t sum = r->zero();
    for (std::uint64_t f : atoms) {
        sum = r->add(sum, f);
        std::unordered_set<std::uint64_t> piece;
        for (std::uint64_t x = 0; x < r->order(); ++x) piece.insert(r->mul(f, x));
        EXPECT_EQ(piece.size(), 2u);  // each atom piece is a copy of Z/2
    }
    EXPECT_EQ(sum, r->one());
    for (std::size_t i = 0; i < atoms.size(); ++i)
        for (std::size_t j = i + 1; j < atoms.size(); ++j)
            EXPECT_EQ(r->mul(atoms[i], atoms[j]), r->zero());
}

TEST(BooleanAtoms, NonBooleanRefusal) {
    EXPECT_THROW(boolean_atoms(parse_ring_spec("GF(4)")), NonBooleanQuotient);
}

// ---------------------------------------------------------------------------
// Z/2 matrix kernel
// ---------------------------------------------------------------------------

TEST(Z2Kernel, ZeroAndSwap) {
    Matrix zero(z2_ring(), 2);
    auto [e0, n0] = decompose_matrix_z2(zero);
    EXPECT_TRUE(e0.is_zero());
    EXPECT_TRUE(n0.is_zero());

    Matrix swap(z2_ring(), 2);
    swap.at(0, 1) = 1;
    swap.at(1, 0) = 1;
    auto [e, w] = decompose_matrix_z2(swap);
    EXPECT_TRUE(e.is_identity());
    EXPECT_TRUE((w * w).is_zero());
}

TEST(Z2Kernel, AllFiveHundredTwelveMatricesOfDimensionThree) {
    for (std::uint64_t idx = 0; idx < 512; ++idx) {
        Matrix a = matrix_from_index(z2_ring(), 3, idx);
        auto [e, w] = decompose_matrix_z2(a);
        EXPECT_EQ(e * e, e);
        EXPECT_EQ(e + w, a);
        EXPECT_TRUE(w.pow(3).is_zero());
    }
}

// ---------------------------------------------------------------------------
// Structured pipeline
// ---------------------------------------------------------------------------

TEST(Structured, FrozenExampleOverZ4) {
    auto z4 = parse_ring_spec("Z/4");
    Matrix a(z4, 2);
    a.at(0, 0) = 3; a.at(0, 1) = 1; a.at(1, 0) = 0; a.at(1, 1) = 2;
    MatrixWitness wit = decompose_matrix_structured(a);
    verify_matrix_witness(wit);
    EXPECT_EQ(wit.method, WitnessMethod::structured);
    // E reduces to [[1,1],[0,0]] modulo (2)
    EXPECT_EQ(wit.e.at(0, 0) % 2, 1u);
    EXPECT_EQ(wit.e.at(0, 1) % 2, 1u);
    EXPECT_EQ(wit.e.at(1, 0) % 2, 0u);
    EXPECT_EQ(wit.e.at(1, 1) % 2, 0u);
    EXPECT_LE(wit.w_nil_index, 4u);
    // independent re-verification through the predicates
    auto m2 = build_matrix_ring(z4, 2);
    EXPECT_TRUE(is_idempotent(*m2, matrix_to_index(wit.e)));
    EXPECT_TRUE(is_nilpotent(*m2, matrix_to_index(wit.w)).is_nilpotent);
}

TEST(Structured, IdentityIsItsOwnWitness) {
    for (const char* spec : {"Z/4", "Z/8", "triv(GF(2),2)", "Z/2 x Z/4"}) {
        auto r = parse_ring_spec(spec);
        MatrixWitness wit = decompose_matrix_structured(Matrix::identity(r, 2));
        EXPECT_TRUE(wit.e.is_identity()) << spec;
        EXPECT_TRUE(wit.w.is_zero()) << spec;
        EXPECT_EQ(wit.w_nil_index, 1u);
    }
}

TEST(Structured, ThousandRandomOverTrivGf2) {
    auto r = parse_ring_spec("triv(GF(2),2)");
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<std::uint64_t> pick(0, r->order() - 1);
    for (int trial = 0; trial < 1000; ++trial) {
        Matrix a(r, 2);
        for (std::uint32_t i = 0; i < 2; ++i)
            for (std::uint32_t j = 0; j < 2; ++j) a.at(i, j) = pick(rng);
        MatrixWitness wit = decompose_matrix_structured(a);
        EXPECT_EQ(wit.e * wit.e, wit.e);
        EXPECT_EQ(wit.e + wit.w, a);
        EXPECT_TRUE(wit.w.pow(4).is_zero());  // n*s = 2*2
    }
}

TEST(Structured, RefusalNamesTheWitness) {
    auto z6 = parse_ring_spec("Z/6");
    try {
        decompose_matrix_structured(Matrix::identity(z6, 2));
        FAIL() << "expected refusal";
    } catch (const NonBooleanQuotient& e) {
        EXPECT_EQ(e.witness, 2u);  // 2 is not idempotent in Z/6/J = Z/6
    }
}

TEST(Structured, AgreesWithOracleOnExistence) {
    // where the pipeline's preconditions hold and the oracle is in budget,
    // both must factor every element (the witnesses may differ)
    std::mt19937_64 rng(7);
    for (const char* spec : {"Z/4", "Z/8", "triv(GF(2),2)", "Z/2 x Z/4"}) {
        auto r = parse_ring_spec(spec);
        auto m2 = build_matrix_ring(r, 2);
        EXPECT_TRUE(ring_is_nil_clean(m2).nil_clean) << spec;
        std::uniform_int_distribution<std::uint64_t> pick(0, m2->order() - 1);
        for (int trial = 0; trial < 100; ++trial) {
            Matrix a = matrix_from_index(r, 2, pick(rng));
            EXPECT_NO_THROW(verify_matrix_witness(decompose_matrix_structured(a)));
        }
    }
}

TEST(Structured, DimensionCap) {
    auto z4 = parse_ring_spec("Z/4");
    EXPECT_THROW(decompose_matrix_structured(Matrix(z4, 5)), CapExceeded);
}
