#include <gtest/gtest.h>

#include "causal_channels/errors.h"
#include "causal_channels/generators.h"
#include "causal_channels/procmat.h"

using namespace causal_channels;

namespace {

// Maximum |sum_{iA,iB} w(iA, iB, f(iA), g(iB)) - 1| over strategy codes.
double strategy_deviation(const ClassicalProcess &w) {
    std::size_t fa = 1;
    std::size_t gb = 1;
    for (std::size_t k = 0; k < w.n_ia(); k++) {
        fa *= w.n_oa();
    }
    for (std::size_t k = 0; k < w.n_ib(); k++) {
        gb *= w.n_ob();
    }
    double worst = 0.0;
    for (std::size_t f = 0; f < fa; f++) {
        for (std::size_t g = 0; g < gb; g++) {
            double total = 0.0;
            for (std::size_t ia = 0, fc = f; ia < w.n_ia(); ia++, fc /= w.n_oa()) {
                for (std::size_t ib = 0, gc = g; ib < w.n_ib(); ib++, gc /= w.n_ob()) {
                    total += w(ia, ib, fc % w.n_oa(), gc % w.n_ob());
                }
            }
            worst = std::max(worst, std::abs(total - 1.0));
        }
    }
    return worst;
}

}  // namespace

TEST(ClassicalProcess, LayoutMatchesWiring) {
    ClassicalProcess w(2, 3, 2, 2);
    w(1, 2, 0, 1) = 0.5;
    EXPECT_EQ(w.table()[1 + 2 * (2 + 3 * (0 + 2 * 1))], 0.5);
    auto p = w.as_wiring();
    std::vector<std::size_t> in{1, 2};
    std::vector<std::size_t> out{0, 1};
    EXPECT_EQ(p.at(in, out), 0.5);
    EXPECT_EQ(ClassicalProcess::from_wiring(p), w);
    EXPECT_THROW(ClassicalProcess(2, 2, 2, 2, {1.0}), DimensionError);
}

TEST(ClassicalProcess, ValidationAgreesWithStrategyOracle) {
    Rng rng(1);
    for (int n = 0; n < 20; n++) {
        auto w = random_one_way_mixture(2, 3, 2, 2, rng);
        double t = n % 2 ? 0.0 : 0.3;
        auto bad = loop_process(2, 3, 2, 2);
        std::vector<double> table(w.table().size());
        for (std::size_t k = 0; k < table.size(); k++) {
            table[k] = (1 - t) * w.table()[k] + t * bad.table()[k];
        }
        ClassicalProcess mixed(2, 3, 2, 2, table);
        auto check = validate_classical_process(mixed);
        EXPECT_NEAR(check.max_deviation, strategy_deviation(mixed), 1e-12);
        EXPECT_EQ(check.valid, strategy_deviation(mixed) <= 1e-12);
        EXPECT_EQ(check.strategies, 4u * 8u);
    }
}

TEST(ClassicalProcess, LoopProcessHasWitness) {
    auto check = validate_classical_process(loop_process(2, 2, 2, 2));
    EXPECT_FALSE(check.valid);
    ASSERT_TRUE(check.witness.has_value());
    const auto &s = *check.witness;
    double value = 0.0;
    auto w = loop_process(2, 2, 2, 2);
    for (std::size_t ia = 0; ia < 2; ia++) {
        for (std::size_t ib = 0; ib < 2; ib++) {
            value += w(ia, ib, s.f[ia], s.g[ib]);
        }
    }
    EXPECT_EQ(value, s.value);
    EXPECT_NEAR(std::abs(value - 1.0), check.max_deviation, 1e-15);
}

TEST(ClassicalProcess, CompositionRejectsInvalidProcess) {
    Rng rng(2);
    auto a = random_instrument(2, 2, 2, 2, 2, rng);
    auto b = random_instrument(2, 2, 2, 2, 2, rng);
    EXPECT_THROW(compose_via_classical_process(loop_process(2, 2, 2, 2), a, b), ProcessValidityError);
    auto w = random_one_way_mixture(2, 2, 2, 2, rng);
    EXPECT_LT(tp_defect(compose_via_classical_process(w, a, b)), 1e-9);
}

TEST(CausalDecompose, RecombinesAndSplitsOneWayParts) {
    Rng rng(3);
    for (int n = 0; n < 10; n++) {
        auto w = random_one_way_mixture(1 + n % 3, 2, 1 + n % 4, 2, rng);
        auto dec = causal_decompose(w);
        EXPECT_GE(dec.q, 0.0);
        EXPECT_LE(dec.q, 1.0);
        EXPECT_LE(dec.recombination_error, 1e-7);
        auto back = dec.recombine();
        for (std::size_t k = 0; k < w.table().size(); k++) {
            EXPECT_NEAR(back.table()[k], w.table()[k], 1e-7);
        }
        EXPECT_TRUE(dec.p_ab.is_valid(1e-9));
        EXPECT_TRUE(dec.p_ba.is_valid(1e-9));
    }
}

TEST(CausalDecompose, PureDirectionsGiveExtremeWeights) {
    Rng rng(4);
    auto ab = random_a_to_b_process(2, 2, 2, 2, rng);
    EXPECT_LT(causal_decompose(ab).recombination_error, 1e-9);
    auto ba = random_b_to_a_process(2, 2, 2, 2, rng);
    EXPECT_LT(causal_decompose(ba).recombination_error, 1e-9);
    EXPECT_THROW(causal_decompose(loop_process(2, 2, 2, 2)), ProcessValidityError);
}

TEST(OneWayMixture, MatchesProcessComposition) {
    Rng rng(5);
    for (int n = 0; n < 5; n++) {
        auto w = random_one_way_mixture(2, 3, 3, 2, rng);
        auto a = random_instrument(2, 1, 2, 3, 2, rng);
        auto b = random_instrument(1, 2, 3, 2, 1, rng);
        auto mix = extract_one_way_mixture(causal_decompose(w), a, b);
        EXPECT_LT(tp_defect(compose_locc_protocol(mix.a_to_b)), 1e-9);
        EXPECT_LT(tp_defect(compose_locc_protocol(mix.b_to_a)), 1e-9);
        EXPECT_LT(choi_distance(mix.joint_map(), compose_via_classical_process(w, a, b)), 1e-8);
    }
}

TEST(ProcessMatrix, DiagonalEmbeddingRoundTrip) {
    Rng rng(6);
    auto w = random_one_way_mixture(2, 3, 2, 2, rng);
    auto m = embed_diagonal(w);
    ProcessDims dims{2, 2, 3, 2};
    ASSERT_EQ(static_cast<std::size_t>(m.rows()), dims.total());
    EXPECT_EQ(m((((1 * 2 + 0) * 3 + 2) * 2 + 1), (((1 * 2 + 0) * 3 + 2) * 2 + 1)).real(), w(1, 2, 0, 1));
    EXPECT_EQ(extract_diagonal(m, dims), w);
}

TEST(ProcessMatrix, ProbesSeparateValidFromLoop) {
    Rng rng(7);
    auto w = random_one_way_mixture(2, 2, 2, 2, rng);
    ProcessDims dims{2, 2, 2, 2};
    auto good = probe_quantum_process(embed_diagonal(w), dims, 8, 11);
    EXPECT_TRUE(good.passes(1e-9));
    // Deterministic measure-and-prepare maps: o^i per party.
    EXPECT_EQ(good.probes.size(), 8u + 4u * 4u);
    auto bad = probe_quantum_process(embed_diagonal(loop_process(2, 2, 2, 2)), dims, 8, 11);
    EXPECT_FALSE(bad.passes(1e-9));
    EXPECT_NEAR(bad.max_deviation, 1.0, 1e-12);
    ComplexMatrix neg = embed_diagonal(w);
    neg(0, 0) = -1.0;
    EXPECT_THROW(probe_quantum_process(neg, dims, 1, 1), PositivityError);
}

TEST(ProcessMatrix, DeterministicFunctionCount) {
    auto fs = deterministic_functions(3, 2);
    EXPECT_EQ(fs.size(), 8u);
    EXPECT_EQ(fs[1], (std::vector<std::size_t>{1, 0, 0}));
}
