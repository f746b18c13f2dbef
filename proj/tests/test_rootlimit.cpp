#include <gtest/gtest.h>

#include <set>

#include "qgz3/rootlimit.hpp"

using namespace qgz3;

TEST(MixingMatrix, DeterminantAndEntries) {
    QParam q = QParam::generic();
    for (int l : {3, 5, 7}) {
        auto T = mixing_matrix(l, q);
        cplx det = T[0][0] * T[1][1] - T[0][1] * T[1][0];
        EXPECT_NEAR(std::abs(det - cplx(1.0, 0.0)), 0.0, 1e-14) << "l=" << l;
        EXPECT_EQ(T[0][1], cplx(0.0, 0.0));
    }
    // l = 3: lower-left is sqrt([2]/([4][3]))
    auto T = mixing_matrix(3, q);
    cplx want = sqrt_principal(q.q_int_value(2) / (q.q_int_value(4) * q.q_int_value(3)));
    EXPECT_NEAR(std::abs(T[1][0] - want), 0.0, 1e-14);
    EXPECT_THROW(mixing_matrix(3, QParam::root(3)), std::domain_error);
}

TEST(MixedBasis, CensusExamples) {
    {
        MixedBasis mb = build_mixed_basis(RepLabel(5, 2, 0), 3);
        EXPECT_EQ(mb.teepee_count, 10);
        EXPECT_EQ(mb.pairs.size(), 2u);
        EXPECT_EQ(mb.self_paired.size(), 6u);
        int primed = 0;
        for (bool b : mb.primed) primed += int(b);
        EXPECT_EQ(primed, 4);
    }
    {
        MixedBasis mb = build_mixed_basis(RepLabel(8, 4, 0), 5);
        EXPECT_EQ(mb.teepee_count, 37);
        EXPECT_EQ(mb.pairs.size(), 11u);
        EXPECT_EQ(mb.self_paired.size(), 15u);
    }
    {
        MixedBasis mb = build_mixed_basis(RepLabel(4, 2, 0), 3);
        EXPECT_EQ(mb.pairs.size(), 0u);
    }
}

TEST(MixedBasis, PairInvariants) {
    for (auto [lab, l] : {std::pair{RepLabel(8, 4, 0), 5}, std::pair{RepLabel(7, 3, 0), 5}}) {
        MixedBasis mb = build_mixed_basis(lab, l);
        EXPECT_EQ(static_cast<long long>(mb.size()), dimension(lab));
        std::set<int> members;
        for (const auto& [iA, iB] : mb.pairs) {
            const GZPattern& pa = mb.gz.patterns()[size_t(iA)];
            const GZPattern& pb = mb.gz.patterns()[size_t(iB)];
            EXPECT_TRUE(in_teepee(pa, l));
            EXPECT_TRUE(in_teepee(pb, l));
            EXPECT_GT(pa.p12 - pa.p22, l);
            EXPECT_LT(pb.p12 - pb.p22, l);
            // the two sl(2) strings of a pair together span dimension 2l
            EXPECT_EQ((pa.p12 - pa.p22) + (pb.p12 - pb.p22), 2 * l);
            EXPECT_EQ(s1_transform(pa, l), pb);
            EXPECT_TRUE(members.insert(iA).second);
            EXPECT_TRUE(members.insert(iB).second);
        }
        for (int i = 0; i < mb.size(); ++i)
            EXPECT_EQ(mb.primed[size_t(i)], members.count(i) == 1);
    }
}

TEST(IsIntegrable, Examples) {
    EXPECT_TRUE(is_integrable(RepLabel(4, 2, 0), 3));   // flat case
    EXPECT_FALSE(is_integrable(RepLabel(5, 2, 0), 3));
    EXPECT_TRUE(is_integrable(RepLabel(6, 3, 0), 5));   // integrable yet reducible
}

TEST(Regularized, DiagonalAndDimensions) {
    RegularizedRep rep = build_regularized(RepLabel(5, 2, 0), 3);
    EXPECT_EQ(rep.h1.dim, 15);
    EXPECT_EQ(static_cast<int>(rep.h1.entries.size()), 15);
    for (const auto& [rc, v] : rep.h1.entries) {
        EXPECT_EQ(rc.first, rc.second);
        const GZPattern& p = rep.basis.gz.patterns()[size_t(rc.first)];
        EXPECT_EQ(v, cplx(double(h1_eigenvalue(p)), 0.0));
    }
}

TEST(Regularized, ShortcutIntoMixedRange) {
    // f1 on the unmixed state just above the range lands on the primed state
    // with coefficient sqrt([width - l]) instead of zero
    RegularizedRep rep = build_regularized(RepLabel(5, 2, 0), 3);
    const MixedBasis& mb = rep.basis;
    int s = mb.gz.index_of(5, 1, 5);   // p11 = p22 + l + 1
    int t = mb.gz.index_of(5, 1, 4);   // primed
    ASSERT_TRUE(mb.primed[size_t(t)]);
    cplx want = sqrt_principal(rep.zeta_param.q_int_value(1));  // width - l = 1
    EXPECT_NEAR(std::abs(rep.f1.at(t, s) - want), 0.0, 1e-12);
    // and the standard column above it is unchanged
    int s2 = mb.gz.index_of(3, 1, 3), t2 = mb.gz.index_of(3, 1, 2);
    cplx std_coeff = sqrt_principal(rep.zeta_param.q_int_value(1) * rep.zeta_param.q_int_value(1));
    EXPECT_NEAR(std::abs(rep.f1.at(t2, s2) - std_coeff), 0.0, 1e-12);
}

TEST(Regularized, AnnihilationAtMixedRangeEdges) {
    // e1 kills the wide-primed state at the top of the mixed range
    RegularizedRep rep = build_regularized(RepLabel(5, 2, 0), 3);
    const MixedBasis& mb = rep.basis;
    int top = mb.gz.index_of(5, 1, 4);  // p11 = p22 + l
    ASSERT_TRUE(mb.primed[size_t(top)]);
    for (const auto& [rc, v] : rep.e1.entries) EXPECT_NE(rc.second, top);
    // f1 kills the wide-primed state at the bottom
    int bottom = mb.gz.index_of(5, 1, 3);  // p11 = p12 - l + 1
    ASSERT_TRUE(mb.primed[size_t(bottom)]);
    for (const auto& [rc, v] : rep.f1.entries) EXPECT_NE(rc.second, bottom);
}

TEST(Regularized, CrossCouplingMagnitude) {
    // the coupling from a narrow-primed state to the wide-primed column is
    // half of [width]/sqrt(|radicand|) in magnitude
    RegularizedRep rep = build_regularized(RepLabel(5, 2, 0), 3);
    const MixedBasis& mb = rep.basis;
    int s = mb.gz.index_of(4, 2, 4);  // narrow member, p11 = 4
    int t = mb.gz.index_of(5, 1, 3);  // wide member at p11 - 1
    const QParam& z = rep.zeta_param;
    double rad = std::abs(z.q_int_value(2) * z.q_int_value(2));  // [p12-p11+1][p11-p22-1]
    double want = std::abs(z.q_int_value(4)) / (2.0 * std::sqrt(rad));
    EXPECT_NEAR(std::abs(rep.f1.at(t, s)), want, 1e-12);
}

TEST(Regularized, WeightAdditivity) {
    // generator entries move pyramid coordinates by the root vectors, also
    // across the mixed states
    RegularizedRep rep = build_regularized(RepLabel(8, 4, 0), 5);
    auto shift_of = [](Gen g) -> std::pair<int, int> {
        switch (g) {
            case Gen::E1: return {2, 0};
            case Gen::F1: return {-2, 0};
            case Gen::E2: return {-1, 3};
            case Gen::F2: return {1, -3};
            default: return {0, 0};
        }
    };
    for (Gen g : {Gen::E1, Gen::F1, Gen::E2, Gen::F2}) {
        auto [dx, dy] = shift_of(g);
        for (const auto& [rc, v] : rep.op(g).entries) {
            auto cs = coordinates(rep.basis.gz.patterns()[size_t(rc.second)]);
            auto ct = coordinates(rep.basis.gz.patterns()[size_t(rc.first)]);
            EXPECT_EQ(ct.x - cs.x, dx) << gen_name(g);
            EXPECT_EQ(ct.y - cs.y, dy) << gen_name(g);
        }
    }
}

TEST(Regularized, AllEntriesFinite) {
    for (auto [lab, l] : {std::pair{RepLabel(5, 2, 0), 3}, std::pair{RepLabel(8, 4, 0), 5}}) {
        RegularizedRep rep = build_regularized(lab, l);
        EXPECT_TRUE(rep.notes.empty()) << "numeric fallbacks used";
        for (Gen g : {Gen::H1, Gen::H2, Gen::E1, Gen::F1, Gen::E2, Gen::F2})
            for (const auto& [rc, v] : rep.op(g).entries) {
                EXPECT_TRUE(std::isfinite(v.real()));
                EXPECT_TRUE(std::isfinite(v.imag()));
            }
    }
}

TEST(VerifyRoot, RelationsAndNilpotency) {
    for (auto [lab, l] : {std::pair{RepLabel(5, 2, 0), 3}, std::pair{RepLabel(7, 3, 0), 5}}) {
        RegularizedRep rep = build_regularized(lab, l);
        VerifyReport r = verify_root(rep);
        EXPECT_TRUE(r.pass()) << lab.str() << " max residual " << r.max_residual();
    }
}

TEST(VerifyRoot, SecondRootSelector) {
    RegularizedRep rep = build_regularized(RepLabel(5, 2, 0), 3, 2);
    VerifyReport r = verify_root(rep);
    EXPECT_TRUE(r.pass()) << r.max_residual();
    RegularizedRep rep5 = build_regularized(RepLabel(7, 3, 0), 5, 3);
    EXPECT_TRUE(verify_root(rep5).pass());
}

TEST(OracleEquivalence, ClosedFormMatchesNumericLimit) {
    for (int m : {1, 2}) {
        RegularizedRep rep = build_regularized(RepLabel(5, 2, 0), 3, m);
        VerifyReport r = verify_oracle(rep);
        EXPECT_TRUE(r.pass()) << "m=" << m << " max " << r.max_residual();
    }
}

TEST(OracleEquivalence, DiagonalGeneratorsExact) {
    MixedBasis mb = build_mixed_basis(RepLabel(5, 2, 0), 3);
    for (Gen g : {Gen::H1, Gen::H2}) {
        SparseOperator oracle = limit_oracle(g, mb);
        SparseOperator closed = regularized_operator(g, mb);
        EXPECT_LT((oracle.to_dense() - closed.to_dense()).max_abs(), 1e-9);
    }
}

TEST(OracleEquivalence, BadEpsScheduleRejected) {
    MixedBasis mb = build_mixed_basis(RepLabel(5, 2, 0), 3);
    EXPECT_THROW(limit_oracle(Gen::E1, mb, 1, {1e-4, 1e-3}), std::invalid_argument);
    EXPECT_THROW(limit_oracle(Gen::E1, mb, 1, {1e-2}), std::invalid_argument);
    EXPECT_THROW(limit_oracle(Gen::E1, mb, 1, {1e-2, -1e-3}), std::invalid_argument);
}

TEST(NarrowPrimedTerms, ClosedFormsMatchBuilderUpToPairGauge) {
    RegularizedRep rep = build_regularized(RepLabel(8, 4, 0), 5);
    const MixedBasis& mb = rep.basis;
    int compared = 0;
    for (const auto& [iA, iB] : mb.pairs) {
        for (const auto& [t, coeff] : narrow_primed_f2_terms(mb, iB)) {
            cplx built = rep.f2.at(t, iB);
            EXPECT_NEAR(std::abs(coeff), std::abs(built), 1e-10);
            // phases agree up to the +-1 pair gauge
            if (std::abs(coeff) > 1e-12) {
                cplx ratio = built / coeff;
                EXPECT_NEAR(std::abs(std::abs(ratio.real()) - 1.0) + std::abs(ratio.imag()), 0.0, 1e-9);
            }
            ++compared;
        }
        for (const auto& [t, coeff] : narrow_primed_e2_terms(mb, iB)) {
            cplx built = rep.e2.at(t, iB);
            EXPECT_NEAR(std::abs(coeff), std::abs(built), 1e-10);
            if (std::abs(coeff) > 1e-12) {
                cplx ratio = built / coeff;
                EXPECT_NEAR(std::abs(std::abs(ratio.real()) - 1.0) + std::abs(ratio.imag()), 0.0, 1e-9);
            }
            ++compared;
        }
    }
    EXPECT_GE(compared, 8);
}

TEST(CasimirStructure, JordanBlocksOnPairs) {
    RegularizedRep rep = build_regularized(RepLabel(5, 2, 0), 3);
    CasimirReport cr = casimir_structure(rep);
    EXPECT_TRUE(cr.pass());
    ASSERT_EQ(cr.blocks.size(), 2u);
    for (const auto& b : cr.blocks) {
        EXPECT_TRUE(b.jordan);
        EXPECT_NEAR(std::abs(b.diagonal - cplx(-1.0, 0.0)), 0.0, 1e-10);
        EXPECT_NEAR(std::abs(b.off_diagonal), 3.0, 1e-10);
        EXPECT_NEAR(std::abs(std::abs(b.phase) - 1.0), 0.0, 1e-10);
    }
    EXPECT_LT(cr.scalar_residual, 1e-10);
}

TEST(CasimirStructure, WiderRootOrder) {
    RegularizedRep rep = build_regularized(RepLabel(8, 4, 0), 5);
    CasimirReport cr = casimir_structure(rep);
    EXPECT_TRUE(cr.pass());
    ASSERT_EQ(cr.blocks.size(), 11u);
    for (const auto& b : cr.blocks) {
        EXPECT_TRUE(b.jordan);
        if (b.width == 6) {
            EXPECT_NEAR(b.diagonal.real(), 2.0 * std::cos(2.0 * kPi / 5.0), 1e-9);  // 0.618034
        }
    }
}

TEST(CasimirStructure, SelfPairedLineIsScalarTwo) {
    // width-l states carry the scalar q^l + q^-l = 2
    RegularizedRep rep = build_regularized(RepLabel(5, 2, 0), 3);
    Dense C = casimir_regularized(rep).to_dense();
    for (int i : rep.basis.self_paired)
        EXPECT_NEAR(std::abs(C.at(i, i) - cplx(2.0, 0.0)), 0.0, 1e-10);
}

TEST(PairGauge, RecordedSigns) {
    RegularizedRep rep = build_regularized(RepLabel(8, 4, 0), 5);
    ASSERT_EQ(rep.pair_gauge.size(), rep.basis.pairs.size());
    for (const cplx& p : rep.pair_gauge)
        EXPECT_NEAR(std::abs(std::abs(p.real()) - 1.0) + std::abs(p.imag()), 0.0, 1e-12);
}

TEST(BoundaryAudit, CensusAndFiniteness) {
    {
        RegularizedRep rep = build_regularized(RepLabel(5, 2, 0), 3);
        BoundaryReport br = boundary_audit(rep);
        EXPECT_TRUE(br.pass());
        EXPECT_EQ(br.teepee_states, 10);
        EXPECT_EQ(br.width_l_line, 6);
        EXPECT_EQ(br.left_roof, 5);
        EXPECT_EQ(br.right_roof, 5);
        EXPECT_EQ(br.front_entrance, 3);
        EXPECT_EQ(br.back_entrance, 3);
        EXPECT_EQ(br.interior, 0);
        EXPECT_EQ(br.non_finite_entries, 0);
        EXPECT_EQ(br.factor_failures, 0);
        EXPECT_GT(br.entering_checks, 0);
    }
    {
        RegularizedRep rep = build_regularized(RepLabel(8, 4, 0), 5);
        BoundaryReport br = boundary_audit(rep);
        EXPECT_TRUE(br.pass());
        EXPECT_EQ(br.teepee_states, 37);
        EXPECT_EQ(br.width_l_line, 15);
        EXPECT_GT(br.crossing_entries, 0);
    }
}

TEST(Regularized, LabelConvenienceOverloads) {
    MixedBasis mb = build_mixed_basis(RepLabel(5, 2, 0), 3);
    SparseOperator a = regularized_operator(Gen::F2, RepLabel(5, 2, 0), 3);
    SparseOperator b = regularized_operator(Gen::F2, mb);
    EXPECT_LT((a.to_dense() - b.to_dense()).max_abs(), 1e-15);
    SparseOperator c = limit_oracle(Gen::F2, RepLabel(5, 2, 0), 3);
    EXPECT_LT((a.to_dense() - c.to_dense()).max_abs(), 1e-6);
}

TEST(DimensionPreservation, RegularizationKeepsSize) {
    for (auto [lab, l] : {std::pair{RepLabel(5, 2, 0), 3}, std::pair{RepLabel(8, 4, 0), 5},
                          std::pair{RepLabel(6, 3, 0), 5}}) {
        RegularizedRep rep = build_regularized(lab, l);
        EXPECT_EQ(static_cast<long long>(rep.basis.size()), dimension(lab));
        for (Gen g : {Gen::H1, Gen::E1, Gen::F2}) EXPECT_EQ(rep.op(g).dim, rep.basis.size());
    }
}
