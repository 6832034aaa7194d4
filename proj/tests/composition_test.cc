#include <gtest/gtest.h>

#include "causal_channels/composition.h"
#include "causal_channels/errors.h"
#include "causal_channels/generators.h"
#include "test_util.h"

using namespace causal_channels;
using causal_channels::testing::mat;
using causal_channels::testing::naive_choi;

namespace {

// Applies every symbol history of a protocol to rho_A (x) rho_B and sums the branches.
ComplexMatrix protocol_oracle(const LoccProtocol &p, const ComplexMatrix &rho_a, const ComplexMatrix &rho_b) {
    struct Branch {
        std::size_t symbol;
        std::size_t dim_a;
        std::size_t dim_b;
        ComplexMatrix state;
    };
    std::vector<Branch> branches{{0, static_cast<std::size_t>(rho_a.rows()), static_cast<std::size_t>(rho_b.rows()),
                                  tensor_product(rho_a, rho_b)}};
    for (const auto &round : p.rounds) {
        std::vector<Branch> next;
        for (const auto &br : branches) {
            for (std::size_t o = 0; o < round.instrument.out_alphabet(); o++) {
                Branch nb{o, br.dim_a, br.dim_b, ComplexMatrix()};
                bool alice = round.party == Party::A;
                (alice ? nb.dim_a : nb.dim_b) = round.instrument.out_dim();
                nb.state = ComplexMatrix::Zero(nb.dim_a * nb.dim_b, nb.dim_a * nb.dim_b);
                auto element = round.instrument.element(br.symbol, o);
                for (const auto &k : element.kraus()) {
                    ComplexMatrix full = alice ? tensor_product(k, ComplexMatrix::Identity(br.dim_b, br.dim_b))
                                               : tensor_product(ComplexMatrix::Identity(br.dim_a, br.dim_a), k);
                    nb.state += full * br.state * full.adjoint();
                }
                next.push_back(std::move(nb));
            }
        }
        branches = std::move(next);
    }
    ComplexMatrix total = ComplexMatrix::Zero(branches[0].state.rows(), branches[0].state.cols());
    for (const auto &br : branches) {
        total += br.state;
    }
    return total;
}

ComplexMatrix naive_term_choi(const std::vector<ProductTerm> &terms) {
    const auto &f = terms.front();
    std::size_t in = f.a.in_dim() * f.b.in_dim();
    std::size_t out = f.a.out_dim() * f.b.out_dim();
    return naive_choi(in, out, [&](const ComplexMatrix &e) {
        ComplexMatrix acc = ComplexMatrix::Zero(out, out);
        for (const auto &t : terms) {
            for (const auto &ka : t.a.kraus()) {
                for (const auto &kb : t.b.kraus()) {
                    ComplexMatrix k = tensor_product(ka, kb);
                    acc += k * e * k.adjoint();
                }
            }
        }
        return acc;
    });
}

}  // namespace

TEST(CondDist, FlatteningPutsInputsFirstAndFirstIndexFastest) {
    CondDist p({2, 3}, {2});
    std::vector<std::size_t> in{1, 2};
    std::vector<std::size_t> out{1};
    p.set(in, out, 0.25);
    EXPECT_EQ(p.table()[1 + 2 * 2 + 6 * 1], 0.25);
    EXPECT_EQ(p(5, 1), 0.25);
    EXPECT_EQ(p.at(in, out), 0.25);
    EXPECT_EQ(encode_digits(std::vector<std::size_t>{1, 2}, std::vector<std::size_t>{2, 3}), 5u);
    EXPECT_EQ(decode_digits(5, std::vector<std::size_t>{2, 3}), (std::vector<std::size_t>{1, 2}));
}

TEST(CondDist, ValidityChecks) {
    CondDist p({2}, {2}, {0.5, 0.5, 1.0, 0.0});
    EXPECT_TRUE(p.is_valid());
    CondDist q({2}, {2}, {0.5, 0.4, 1.0, 0.0});
    EXPECT_NEAR(q.normalization_error(), 0.1, 1e-15);
    EXPECT_THROW(q.require_valid(), DistributionError);
    CondDist r({2}, {1}, {1.5, -0.5});
    EXPECT_FALSE(r.is_valid());
    EXPECT_THROW(CondDist({2}, {2}, {1.0}), DimensionError);
}

TEST(Composition, OneWayMeasureAndCorrect) {
    Instrument measure(1, 2, 2, 2);
    measure.set(0, 0, CpMap(2, 2, {mat(2, 2, {1, 0, 0, 0})}));
    measure.set(0, 1, CpMap(2, 2, {mat(2, 2, {0, 0, 0, 1})}));
    std::vector<CpMap> bob{CpMap::identity(2), CpMap(2, 2, {mat(2, 2, {0, 1, 1, 0})})};
    auto m = compose_one_way(measure, bob);
    Rng rng(1);
    auto ra = random_density_matrix(2, rng);
    auto rb = random_density_matrix(2, rng);
    auto x = mat(2, 2, {0, 1, 1, 0});
    ComplexMatrix expect = ra(0, 0) * tensor_product(mat(2, 2, {1, 0, 0, 0}), rb) +
                           ra(1, 1) * tensor_product(mat(2, 2, {0, 0, 0, 1}), x * rb * x);
    EXPECT_LT(distance(apply_cp_map(m, tensor_product(ra, rb)), expect), 1e-14);
    EXPECT_THROW(compose_one_way(measure, {CpMap::identity(2)}), DimensionError);
}

TEST(Composition, ProtocolMatchesBranchEnumeration) {
    Rng rng(2);
    for (const char *pattern : {"AB", "BAB", "ABAB", "AABB"}) {
        auto p = random_locc_protocol(pattern, 2, 3, rng);
        auto m = compose_locc_protocol(p);
        EXPECT_LT(tp_defect(m), 1e-9) << pattern;
        auto ra = random_density_matrix(p.in_dim(Party::A), rng);
        auto rb = random_density_matrix(p.in_dim(Party::B), rng);
        EXPECT_LT(distance(apply_cp_map(m, tensor_product(ra, rb)), protocol_oracle(p, ra, rb)), 1e-12) << pattern;
    }
}

TEST(Composition, ProtocolAlphabetMismatchIsRejected) {
    Rng rng(3);
    LoccProtocol p;
    p.rounds.push_back({Party::A, random_instrument(2, 2, 1, 2, 2, rng)});
    p.rounds.push_back({Party::B, random_instrument(2, 2, 3, 2, 2, rng)});
    EXPECT_THROW(p.check(), DimensionError);
    LoccProtocol same_party;
    same_party.rounds.push_back({Party::A, random_instrument(2, 2, 1, 2, 2, rng)});
    same_party.rounds.push_back({Party::A, random_instrument(2, 2, 2, 2, 2, rng)});
    EXPECT_FALSE(same_party.is_alternating());
}

TEST(Composition, CcstarIsLinearInTheWiring) {
    Rng rng(4);
    auto alice = random_instrument(2, 2, 2, 2, 2, rng);
    auto bob = random_instrument(2, 1, 2, 3, 2, rng);
    auto w1 = random_one_way_mixture(2, 2, 2, 3, rng).as_wiring();
    auto w2 = loop_process(2, 2, 2, 3).as_wiring();
    double q = 0.35;
    std::vector<double> mix(w1.table().size());
    for (std::size_t k = 0; k < mix.size(); k++) {
        mix[k] = q * w1.table()[k] + (1 - q) * w2.table()[k];
    }
    CondDist w({2, 2}, {2, 3}, mix);
    auto lhs = choi_of(compose_ccstar({alice, bob, w}).map).matrix;
    ComplexMatrix rhs = q * choi_of(compose_ccstar({alice, bob, w1}).map).matrix +
                        (1 - q) * choi_of(compose_ccstar({alice, bob, w2}).map).matrix;
    EXPECT_LT(distance(lhs, rhs), 1e-12);
}

TEST(Composition, OneWayWiringsAreAlwaysTp) {
    Rng rng(5);
    for (int n = 0; n < 10; n++) {
        auto spec = random_tp_joint_spec(3, 3, rng);
        EXPECT_TRUE(compose_ccstar(spec).trace_preserving());
        EXPECT_TRUE(is_locc_star_member(spec));
    }
}

TEST(Composition, LoopFormEqualsWiredComposition) {
    Rng rng(6);
    for (int n = 0; n < 10; n++) {
        auto spec = random_tp_joint_spec(3, 3, rng);
        auto loop = to_loop_form(spec);
        EXPECT_EQ(loop.alice.out_alphabet(), spec.bob.in_alphabet() * spec.alice.out_alphabet());
        EXPECT_EQ(loop.bob.out_alphabet(), spec.alice.out_alphabet() * spec.bob.out_alphabet());
        EXPECT_TRUE(validate_instrument(loop.alice));
        EXPECT_TRUE(validate_instrument(loop.bob));
        EXPECT_LT(choi_distance(compose_loop(loop.alice, loop.bob).map, compose_ccstar(spec).map), 1e-8);
    }
}

TEST(Composition, LoopWithInputIgnoringPartiesIsProduct) {
    Rng rng(7);
    auto a0 = random_instrument(2, 2, 1, 3, 2, rng);
    auto b0 = random_instrument(2, 3, 1, 2, 2, rng);
    Instrument alice(2, 3, 2, 2);
    Instrument bob(3, 2, 2, 3);
    for (std::size_t b = 0; b < 2; b++) {
        for (std::size_t a = 0; a < 3; a++) {
            alice.set(b, a, a0.element(0, a));
        }
    }
    for (std::size_t a = 0; a < 3; a++) {
        for (std::size_t b = 0; b < 2; b++) {
            bob.set(a, b, b0.element(0, b));
        }
    }
    auto loop = compose_loop(alice, bob);
    EXPECT_LT(choi_distance(loop.map, tensor(a0.total(0), b0.total(0))), 1e-12);
    EXPECT_THROW(compose_loop(alice, alice), DimensionError);
}

TEST(Composition, LoopWiringIsCrossedDelta) {
    auto w = loop_wiring(2, 3);
    EXPECT_EQ(w.input_alphabets(), (std::vector<std::size_t>{2, 3}));
    EXPECT_EQ(w.output_alphabets(), (std::vector<std::size_t>{3, 2}));
    for (std::size_t ia = 0; ia < 2; ia++) {
        for (std::size_t ib = 0; ib < 3; ib++) {
            for (std::size_t oa = 0; oa < 3; oa++) {
                for (std::size_t ob = 0; ob < 2; ob++) {
                    std::vector<std::size_t> in{ia, ib};
                    std::vector<std::size_t> out{oa, ob};
                    EXPECT_EQ(w.at(in, out), (ia == ob && ib == oa) ? 1.0 : 0.0);
                }
            }
        }
    }
}

TEST(Composition, CollapseSequenceComposesElements) {
    Rng rng(8);
    auto first = random_instrument(2, 3, 2, 2, 2, rng);
    auto second = random_instrument(3, 2, 3, 2, 2, rng);
    auto c = collapse_sequence({first, second});
    EXPECT_EQ(c.in_alphabet(), 6u);
    EXPECT_EQ(c.out_alphabet(), 4u);
    for (std::size_t i1 = 0; i1 < 2; i1++) {
        for (std::size_t i2 = 0; i2 < 3; i2++) {
            for (std::size_t o1 = 0; o1 < 2; o1++) {
                for (std::size_t o2 = 0; o2 < 2; o2++) {
                    auto expect = compose(second.element(i2, o2), first.element(i1, o1));
                    EXPECT_LT(choi_distance(c.element(i1 + 2 * i2, o1 + 2 * o2), expect), 1e-12);
                }
            }
        }
    }
}

TEST(Composition, NormalizeTermsPreservesSumWithTdFactors) {
    Rng rng(9);
    auto terms = random_cp_terms(2, 3, 4.0, 3.0, rng);
    auto td = normalize_terms(terms);
    for (const auto &t : td) {
        EXPECT_TRUE(is_trace_nonincreasing(t.a));
        EXPECT_TRUE(is_trace_nonincreasing(t.b));
    }
    EXPECT_LT(distance(choi_of(sum_of_terms(td)).matrix, naive_term_choi(terms)), 1e-10);
}

TEST(Composition, SloccScaleOfTermsScaledBy3Point7IsFour) {
    Rng rng(10);
    std::vector<ProductTerm> terms{{scale(random_cptp(2, 2, 2, rng), 3.7), random_cptp(2, 2, 1, rng)},
                                   {scale(random_cptp(2, 2, 2, rng), 1.2), scale(random_cptp(2, 2, 2, rng), 0.5)}};
    EXPECT_EQ(slocc_scale(terms), 4u);
    auto dec = slocc_star_decompose(terms);
    EXPECT_EQ(dec.scale, 4u);
    EXPECT_LT(distance(choi_of(compose_ccstar(dec.spec).map).matrix, naive_term_choi(terms)), 1e-9);
}

TEST(Composition, SloccOfTdTermsHasScaleOne) {
    Rng rng(11);
    std::vector<ProductTerm> terms{{scale(random_cptp(2, 2, 2, rng), 0.5), scale(random_cptp(1, 2, 2, rng), 0.9)}};
    auto dec = slocc_star_decompose(terms);
    EXPECT_EQ(dec.scale, 1u);
    EXPECT_LT(distance(choi_of(compose_ccstar(dec.spec).map).matrix, naive_term_choi(terms)), 1e-10);
}

TEST(Composition, SloccFromChoiRejectsNonPsd) {
    ChoiOperator good = choi_of(CpMap::identity(2));
    ChoiOperator bad{1, 2, mat(2, 2, {1, 0, 0, -1})};
    std::vector<std::pair<ChoiOperator, ChoiOperator>> terms{{bad, good}};
    EXPECT_THROW(slocc_star_decompose(terms), PositivityError);
}
