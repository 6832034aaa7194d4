#ifndef CAUSAL_CHANNELS_CAUSAL_H
#define CAUSAL_CHANNELS_CAUSAL_H

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "causal_channels/composition.h"

namespace causal_channels {

/// Local operation label; rounds are 1-based.
struct OpLabel {
    Party party = Party::A;
    std::size_t round = 1;

    auto operator<=>(const OpLabel &) const = default;
};

std::string to_string(const OpLabel &label);

/// Strict partial order over A(1..NA) and B(1..NB).
///
/// Within-party successor edges are always added, then the relation is
/// transitively closed. Node (and wiring slot) index of A(k) is k-1 and of
/// B(k) is NA+k-1.
class CausalOrder {
   public:
    using Edge = std::pair<OpLabel, OpLabel>;

    /// Throws NotAPartialOrderError when the closure has a cycle.
    CausalOrder(std::size_t rounds_a, std::size_t rounds_b, std::vector<Edge> edges = {});

    std::size_t rounds_a() const {
        return rounds_a_;
    }
    std::size_t rounds_b() const {
        return rounds_b_;
    }
    std::size_t size() const {
        return rounds_a_ + rounds_b_;
    }
    /// Throws InputError on a label outside the declared rounds.
    std::size_t index(const OpLabel &label) const;
    OpLabel label(std::size_t index) const;

    bool precedes(std::size_t a, std::size_t b) const {
        return closure_[a * size() + b];
    }
    bool precedes(const OpLabel &a, const OpLabel &b) const {
        return precedes(index(a), index(b));
    }

    /// Edges as declared, before closure.
    const std::vector<Edge> &declared_edges() const {
        return edges_;
    }
    /// All pairs (a, b) with a before b, by node index.
    std::vector<std::pair<std::size_t, std::size_t>> relation() const;

    bool operator==(const CausalOrder &other) const {
        return rounds_a_ == other.rounds_a_ && rounds_b_ == other.rounds_b_ && closure_ == other.closure_;
    }

   private:
    std::size_t rounds_a_;
    std::size_t rounds_b_;
    std::vector<Edge> edges_;
    std::vector<bool> closure_;
};

/// Output slots of operations strictly before some operation consuming one of `input_slots`.
std::set<std::size_t> past_set(const CausalOrder &order, const std::set<std::size_t> &input_slots);

/// Every strict partial order on the given rounds that contains the local chains.
std::vector<CausalOrder> enumerate_partial_orders(std::size_t rounds_a, std::size_t rounds_b);

/// Bijection from operations to steps 1..NA+NB.
struct LinearExtension {
    /// Operation performed at step l+1.
    std::vector<OpLabel> sequence;

    /// 1-based step of `label`.
    std::size_t position(const OpLabel &label) const;
};

/// Kahn's algorithm; ready operations are taken A before B, then by round.
LinearExtension linear_extension(const CausalOrder &order);

/// p(i_1..i_NA, i'_1..i'_NB | o_1..o_NA, o'_1..o'_NB), slot order as in CausalOrder.
struct AggregateWiring {
    std::size_t rounds_a = 1;
    std::size_t rounds_b = 1;
    CondDist dist;

    std::size_t slots() const {
        return rounds_a + rounds_b;
    }
    /// Throws DimensionError when the slot count does not match the rounds.
    void check() const;
};

struct CausalWitness {
    /// Prefix lengths: marginal over i_1..i_k and i'_1..i'_l.
    std::size_t k = 0;
    std::size_t l = 0;
    /// Output slot outside the past set on which the marginal depends.
    std::size_t slot = 0;
    double deviation = 0.0;
};

struct CausalCheck {
    bool respects = true;
    std::optional<CausalWitness> witness;
};

/// Throws DistributionError when p is not normalized.
CausalCheck respects_causal_order(const AggregateWiring &p, const CausalOrder &order, double tol = 1e-12);

/// Step-l factors q(I_1..I_l | O_<l) / q(I_1..I_{l-1} | O_<l-1) of the classical
/// channels Q(J_l | O_{l-1}); the bookkeeping deltas are implicit.
///
/// J_l = (I_1..I_l, O_1..O_{l-1}) and O_l = (I_1..I_l, O_1..O_l) are encoded
/// with encode_digits, first entry fastest.
struct QChannels {
    LinearExtension extension;
    std::vector<std::size_t> in_alphabets;
    std::vector<std::size_t> out_alphabets;
    std::vector<std::vector<double>> factors;

    std::size_t steps() const {
        return in_alphabets.size();
    }
    /// |J_l| and |O_l| for 1-based l; |O_0| = 1.
    std::size_t j_size(std::size_t l) const;
    std::size_t o_size(std::size_t l) const;
    std::vector<std::size_t> j_radices(std::size_t l) const;
    std::vector<std::size_t> o_radices(std::size_t l) const;

    /// Q(J_l | O_{l-1}) including the bookkeeping deltas.
    double channel(std::size_t l, std::size_t j, std::size_t o_prev) const;
};

QChannels build_q_channels(const AggregateWiring &p, const LinearExtension &f);

/// Primed instruments in step order; step l maps O_{l-1} to O_l.
/// Throws CausalOrderError naming the first step whose instrument fails validation.
LoccProtocol build_primed_operations(
    const std::vector<Instrument> &alice_rounds,
    const std::vector<Instrument> &bob_rounds,
    const QChannels &q,
    double tol = kDefaultTol);

enum class MergeOutputs {
    /// Output (o_1, o_2), first fastest; the following round reads only o_2.
    concatenate,
    /// Output o_2 with o_1 summed over.
    last,
};

/// Composes runs of same-party rounds into one instrument so that parties
/// alternate. The joint map is unchanged in either mode.
LoccProtocol merge_successive(const LoccProtocol &protocol, MergeOutputs mode = MergeOutputs::concatenate);

/// Full pipeline. Throws CausalOrderError with a witnessing (k, l, slot) when
/// p does not respect `order`.
LoccProtocol reconstruct_locc(
    const std::vector<Instrument> &alice_rounds,
    const std::vector<Instrument> &bob_rounds,
    const AggregateWiring &p,
    const CausalOrder &order,
    double tol = kDefaultTol);

/// A protocol's rounds split by party, its delta wiring as an aggregate
/// wiring, and the total order of its rounds.
struct UnrolledProtocol {
    std::vector<Instrument> alice_rounds;
    std::vector<Instrument> bob_rounds;
    AggregateWiring wiring;
    CausalOrder order;
};

UnrolledProtocol unroll_protocol(const LoccProtocol &protocol);

}  // namespace causal_channels

#endif
