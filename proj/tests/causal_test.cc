#include <gtest/gtest.h>

#include "causal_channels/causal.h"
#include "causal_channels/errors.h"
#include "causal_channels/generators.h"

using namespace causal_channels;

namespace {

const OpLabel A1{Party::A, 1};
const OpLabel A2{Party::A, 2};
const OpLabel B1{Party::B, 1};
const OpLabel B2{Party::B, 2};

// Counts strict partial orders on na + nb nodes that contain both local chains.
std::size_t count_orders_brute_force(std::size_t na, std::size_t nb) {
    std::size_t n = na + nb;
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t i = 0; i < n; i++) {
        for (std::size_t j = 0; j < n; j++) {
            if (i != j) {
                cells.emplace_back(i, j);
            }
        }
    }
    std::size_t count = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << cells.size()); mask++) {
        std::vector<bool> rel(n * n, false);
        for (std::size_t c = 0; c < cells.size(); c++) {
            if (mask >> c & 1) {
                rel[cells[c].first * n + cells[c].second] = true;
            }
        }
        bool ok = true;
        for (std::size_t k = 0; k + 1 < na && ok; k++) {
            ok = rel[k * n + k + 1];
        }
        for (std::size_t k = 0; k + 1 < nb && ok; k++) {
            ok = rel[(na + k) * n + na + k + 1];
        }
        for (std::size_t i = 0; i < n && ok; i++) {
            for (std::size_t j = 0; j < n && ok; j++) {
                if (rel[i * n + j] && rel[j * n + i]) {
                    ok = false;
                }
                for (std::size_t k = 0; k < n && ok; k++) {
                    if (rel[i * n + j] && rel[j * n + k] && !rel[i * n + k]) {
                        ok = false;
                    }
                }
            }
        }
        count += ok ? 1 : 0;
    }
    return count;
}

// No-signaling oracle: any two output tuples that agree on the past set give
// the same prefix marginal.
bool respects_oracle(const AggregateWiring &p, const CausalOrder &order, double tol) {
    const auto &ins = p.dist.input_alphabets();
    const auto &outs = p.dist.output_alphabets();
    for (std::size_t k = 0; k <= p.rounds_a; k++) {
        for (std::size_t l = 0; l <= p.rounds_b; l++) {
            std::set<std::size_t> kept;
            for (std::size_t s = 0; s < k; s++) {
                kept.insert(s);
            }
            for (std::size_t s = 0; s < l; s++) {
                kept.insert(p.rounds_a + s);
            }
            std::set<std::size_t> past;
            for (std::size_t m = 0; m < order.size(); m++) {
                for (auto s : kept) {
                    if (order.precedes(m, s)) {
                        past.insert(m);
                    }
                }
            }
            auto marginal = [&](std::size_t o) {
                std::map<std::vector<std::size_t>, double> m;
                for (std::size_t i = 0; i < p.dist.input_size(); i++) {
                    auto digits = decode_digits(i, ins);
                    std::vector<std::size_t> key;
                    for (auto s : kept) {
                        key.push_back(digits[s]);
                    }
                    m[key] += p.dist(i, o);
                }
                return m;
            };
            for (std::size_t o1 = 0; o1 < p.dist.output_size(); o1++) {
                auto d1 = decode_digits(o1, outs);
                auto m1 = marginal(o1);
                for (std::size_t o2 = o1 + 1; o2 < p.dist.output_size(); o2++) {
                    auto d2 = decode_digits(o2, outs);
                    bool same_past = true;
                    for (auto s : past) {
                        same_past = same_past && d1[s] == d2[s];
                    }
                    if (!same_past) {
                        continue;
                    }
                    auto m2 = marginal(o2);
                    for (const auto &[key, v] : m1) {
                        if (std::abs(v - m2[key]) > tol) {
                            return false;
                        }
                    }
                }
            }
        }
    }
    return true;
}

AggregateWiring random_wiring(std::size_t na, std::size_t nb, Rng &rng) {
    std::vector<std::size_t> alph(na + nb, 2);
    CondDist d(alph, alph);
    for (std::size_t o = 0; o < d.output_size(); o++) {
        auto col = random_simplex(d.input_size(), rng);
        for (std::size_t i = 0; i < d.input_size(); i++) {
            d(i, o) = col[i];
        }
    }
    return {na, nb, d};
}

}  // namespace

TEST(CausalOrder, AddsLocalChainsAndCloses) {
    CausalOrder order(2, 2, {{A2, B1}});
    EXPECT_TRUE(order.precedes(A1, A2));
    EXPECT_TRUE(order.precedes(B1, B2));
    EXPECT_TRUE(order.precedes(A1, B2));
    EXPECT_FALSE(order.precedes(B1, A1));
    EXPECT_EQ(order.index(B1), 2u);
    EXPECT_EQ(to_string(order.label(3)), "B2");
    EXPECT_THROW(order.index(OpLabel{Party::A, 3}), InputError);
}

TEST(CausalOrder, CyclesAreRejected) {
    EXPECT_THROW(CausalOrder(1, 1, {{A1, B1}, {B1, A1}}), NotAPartialOrderError);
    EXPECT_THROW(CausalOrder(2, 1, {{A2, B1}, {B1, A1}}), NotAPartialOrderError);
    EXPECT_THROW(CausalOrder(1, 1, {{A1, A1}}), NotAPartialOrderError);
}

TEST(CausalOrder, EnumerationCountMatchesBruteForce) {
    EXPECT_EQ(enumerate_partial_orders(1, 1).size(), 3u);
    EXPECT_EQ(enumerate_partial_orders(2, 1).size(), count_orders_brute_force(2, 1));
    EXPECT_EQ(enumerate_partial_orders(2, 2).size(), count_orders_brute_force(2, 2));
}

TEST(CausalOrder, PastSetAndLinearExtension) {
    CausalOrder order(2, 2, {{A1, B2}, {B1, A2}});
    EXPECT_EQ(past_set(order, {order.index(A2)}), (std::set<std::size_t>{0, 2}));
    EXPECT_EQ(past_set(order, {order.index(A1), order.index(B1)}), (std::set<std::size_t>{}));
    for (const auto &o : enumerate_partial_orders(2, 2)) {
        auto ext = linear_extension(o);
        ASSERT_EQ(ext.sequence.size(), 4u);
        for (const auto &[a, b] : o.relation()) {
            EXPECT_LT(ext.position(o.label(a)), ext.position(o.label(b)));
        }
    }
}

TEST(CausalCheck, AgreesWithPairwiseOracle) {
    Rng rng(1);
    for (int n = 0; n < 6; n++) {
        auto protocol = random_locc_protocol(n % 2 ? "ABAB" : "BAB", 2, 2, rng, 2);
        auto u = unroll_protocol(protocol);
        auto noisy = noisy_wiring(u.wiring, 0.2);
        for (const auto &order : enumerate_partial_orders(u.wiring.rounds_a, u.wiring.rounds_b)) {
            EXPECT_EQ(respects_causal_order(noisy, order).respects, respects_oracle(noisy, order, 1e-12));
        }
    }
    for (int n = 0; n < 4; n++) {
        auto w = random_wiring(1, 2, rng);
        for (const auto &order : enumerate_partial_orders(1, 2)) {
            EXPECT_EQ(respects_causal_order(w, order).respects, respects_oracle(w, order, 1e-12));
        }
    }
}

TEST(CausalCheck, ProtocolDeltaWiringRespectsItsOrder) {
    Rng rng(2);
    for (const char *pattern : {"AB", "BA", "ABAB", "AABB", "ABBA"}) {
        auto p = random_locc_protocol(pattern, 2, 3, rng);
        auto u = unroll_protocol(p);
        EXPECT_TRUE(respects_causal_order(u.wiring, u.order).respects) << pattern;
        auto direct = compose_multiround(u.alice_rounds, u.bob_rounds, u.wiring.dist);
        EXPECT_LT(choi_distance(direct.map, compose_locc_protocol(p)), 1e-10) << pattern;
    }
}

TEST(CausalCheck, LoopWiringFailsEveryOrderWithWitness) {
    AggregateWiring loop{1, 1, loop_wiring(2, 2)};
    for (const auto &order : enumerate_partial_orders(1, 1)) {
        auto check = respects_causal_order(loop, order);
        EXPECT_FALSE(check.respects);
        ASSERT_TRUE(check.witness.has_value());
        EXPECT_GT(check.witness->deviation, 0.5);
    }
}

TEST(QChannels, StepChannelsAreNormalized) {
    Rng rng(3);
    auto f = memoryful_fixture(rng);
    auto q = build_q_channels(f.wiring, linear_extension(f.order));
    ASSERT_EQ(q.steps(), 4u);
    for (std::size_t l = 1; l <= q.steps(); l++) {
        for (std::size_t o = 0; o < q.o_size(l - 1); o++) {
            double total = 0.0;
            for (std::size_t j = 0; j < q.j_size(l); j++) {
                double v = q.channel(l, j, o);
                EXPECT_GE(v, 0.0);
                total += v;
            }
            EXPECT_NEAR(total, 1.0, 1e-12) << "step " << l;
        }
    }
}

TEST(Reconstruct, RespectingWiringsBecomeAlternatingProtocols) {
    Rng rng(4);
    std::vector<ReconstructionFixture> fixtures{memoryful_fixture(rng)};
    auto u = unroll_protocol(random_locc_protocol("ABAB", 2, 2, rng, 2));
    fixtures.push_back({"noisy", u.alice_rounds, u.bob_rounds, noisy_wiring(u.wiring, 0.2), u.order});
    auto v = unroll_protocol(random_locc_protocol("AABB", 2, 3, rng));
    fixtures.push_back({"delta", v.alice_rounds, v.bob_rounds, v.wiring, v.order});
    for (const auto &f : fixtures) {
        auto protocol = reconstruct_locc(f.alice_rounds, f.bob_rounds, f.wiring, f.order);
        EXPECT_TRUE(protocol.is_alternating()) << f.name;
        EXPECT_LT(tp_defect(compose_locc_protocol(protocol)), 1e-9);
        auto direct = compose_multiround(f.alice_rounds, f.bob_rounds, f.wiring.dist);
        EXPECT_LT(choi_distance(compose_locc_protocol(protocol), direct.map), 1e-8) << f.name;
    }
}

TEST(Reconstruct, NonRespectingWiringNamesTheSlot) {
    Rng rng(5);
    auto f = memoryful_fixture(rng);
    CausalOrder wrong(2, 2, {{B1, A2}});
    try {
        reconstruct_locc(f.alice_rounds, f.bob_rounds, f.wiring, wrong);
        FAIL() << "expected a causal order error";
    } catch (const CausalOrderError &e) {
        EXPECT_NE(std::string(e.what()).find("A1"), std::string::npos) << e.what();
    }
}

TEST(Reconstruct, MergeModesPreserveTheJointMap) {
    Rng rng(6);
    auto p = random_locc_protocol("AABBA", 2, 2, rng);
    auto m = compose_locc_protocol(p);
    for (auto mode : {MergeOutputs::concatenate, MergeOutputs::last}) {
        auto merged = merge_successive(p, mode);
        EXPECT_TRUE(merged.is_alternating());
        EXPECT_EQ(merged.rounds.size(), 3u);
        EXPECT_LT(choi_distance(compose_locc_protocol(merged), m), 1e-10);
    }
}
