#ifndef CAUSAL_CHANNELS_GENERATORS_H
#define CAUSAL_CHANNELS_GENERATORS_H

#include <functional>
#include <string>
#include <vector>

#include "causal_channels/causal.h"
#include "causal_channels/procmat.h"
#include "causal_channels/sep.h"

namespace causal_channels {

/// Uniform sample from the probability simplex of dimension n.
std::vector<double> random_simplex(std::size_t n, Rng &rng);

/// w(i_A, i_B | o_A, o_B) = p(i_A) p(i_B | i_A, o_A), ignoring o_B.
ClassicalProcess random_a_to_b_process(std::size_t n_ia, std::size_t n_ib, std::size_t n_oa, std::size_t n_ob, Rng &rng);
/// w(i_A, i_B | o_A, o_B) = p(i_B) p(i_A | i_B, o_B), ignoring o_A.
ClassicalProcess random_b_to_a_process(std::size_t n_ia, std::size_t n_ib, std::size_t n_oa, std::size_t n_ob, Rng &rng);
/// q * (A -> B) + (1 - q) * (B -> A) with q uniform in [0, 1].
ClassicalProcess random_one_way_mixture(
    std::size_t n_ia, std::size_t n_ib, std::size_t n_oa, std::size_t n_ob, Rng &rng);

/// w(i_A, i_B | o_A, o_B) = delta(i_A, o_B mod nIA) delta(i_B, o_A mod nIB).
ClassicalProcess loop_process(std::size_t n_ia, std::size_t n_ib, std::size_t n_oa, std::size_t n_ob);

/// Random instruments wired by a random one-way mixture; the joint map is TP.
JointMapSpec random_tp_joint_spec(std::size_t max_dim, std::size_t max_alphabet, Rng &rng);

/// Random TP separable map: a one-way measure-and-respond scheme in a random
/// direction whose factor pairs are rescaled by c and 1/c.
SepMap random_sep_map(std::size_t max_dim, std::size_t max_terms, Rng &rng);

/// Product terms with Ginibre Kraus operators, rescaled so that each factor's
/// ||sum K^dagger K|| is uniform in [0.2, max_scale] for its party.
std::vector<ProductTerm> random_cp_terms(
    std::size_t max_dim, std::size_t max_terms, double max_scale_a, double max_scale_b, Rng &rng);

/// Random protocol whose round parties follow `pattern` (e.g. "ABAB").
LoccProtocol random_locc_protocol(
    const std::string &pattern, std::size_t max_dim, std::size_t max_alphabet, Rng &rng, std::size_t min_alphabet = 1);

/// A respecting wiring built slot-wise: each input takes the value of a
/// deterministic delta wiring and is replaced, with probability `flip`, by a
/// uniformly chosen different symbol.
AggregateWiring noisy_wiring(const AggregateWiring &delta, double flip);

/// Sampler for one output fixing: returns (inputs, probability) pairs.
using WiringRule = std::function<std::vector<std::pair<std::vector<std::size_t>, double>>(
    const std::vector<std::size_t> &outputs)>;

AggregateWiring wiring_from_rule(
    std::size_t rounds_a,
    std::size_t rounds_b,
    std::vector<std::size_t> input_alphabets,
    std::vector<std::size_t> output_alphabets,
    const WiringRule &rule);

struct ReconstructionFixture {
    std::string name;
    std::vector<Instrument> alice_rounds;
    std::vector<Instrument> bob_rounds;
    AggregateWiring wiring;
    CausalOrder order;
};

/// Two rounds per party under A1 < B2, B1 < A2 with shared randomness and a
/// second Bob round that remembers both first-round outputs.
ReconstructionFixture memoryful_fixture(Rng &rng);

}  // namespace causal_channels

#endif
