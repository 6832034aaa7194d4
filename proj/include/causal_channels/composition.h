#ifndef CAUSAL_CHANNELS_COMPOSITION_H
#define CAUSAL_CHANNELS_COMPOSITION_H

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "causal_channels/channels.h"

namespace causal_channels {

/// Mixed-radix encoding with the first digit varying fastest.
std::size_t encode_digits(std::span<const std::size_t> digits, std::span<const std::size_t> radices);
std::vector<std::size_t> decode_digits(std::size_t index, std::span<const std::size_t> radices);
std::size_t radix_product(std::span<const std::size_t> radices);

/// Conditional distribution p(i_1..i_m | o_1..o_n) over finite alphabets.
///
/// Storage is flat with input indices varying fastest: the flat offset of
/// (inputs, outputs) is encode(inputs) + input_size() * encode(outputs),
/// where encode lets the first index vary fastest.
class CondDist {
   public:
    CondDist(std::vector<std::size_t> input_alphabets, std::vector<std::size_t> output_alphabets);
    CondDist(
        std::vector<std::size_t> input_alphabets, std::vector<std::size_t> output_alphabets, std::vector<double> table);

    const std::vector<std::size_t> &input_alphabets() const {
        return input_alphabets_;
    }
    const std::vector<std::size_t> &output_alphabets() const {
        return output_alphabets_;
    }
    const std::vector<double> &table() const {
        return table_;
    }
    std::size_t input_size() const {
        return input_size_;
    }
    std::size_t output_size() const {
        return output_size_;
    }

    /// Value at aggregate (flat) input and output indices.
    double operator()(std::size_t input, std::size_t output) const {
        return table_[input + input_size_ * output];
    }
    double &operator()(std::size_t input, std::size_t output) {
        return table_[input + input_size_ * output];
    }
    double at(std::span<const std::size_t> inputs, std::span<const std::size_t> outputs) const;
    void set(std::span<const std::size_t> inputs, std::span<const std::size_t> outputs, double value);

    /// Largest |sum_inputs p - 1| over output fixings, or +inf on a negative entry.
    double normalization_error() const;
    bool is_valid(double tol = 1e-12) const;
    /// Throws DistributionError when not a valid conditional distribution.
    void require_valid(double tol = 1e-12) const;

    bool operator==(const CondDist &other) const = default;

   private:
    std::vector<std::size_t> input_alphabets_;
    std::vector<std::size_t> output_alphabets_;
    std::size_t input_size_;
    std::size_t output_size_;
    std::vector<double> table_;
};

/// Alice's and Bob's single instruments wired by p(i_A, i_B | o_A, o_B).
struct JointMapSpec {
    Instrument alice;
    Instrument bob;
    CondDist wiring;

    /// Throws DimensionError when the wiring alphabets do not match the instruments.
    void check() const;
};

enum class Party { A, B };

char party_char(Party p);
Party party_from_char(char c);

struct Round {
    Party party;
    Instrument instrument;
};

/// Finite-round LOCC: the first round's classical input is fixed to 0 and each
/// later round is conditioned on the previous round's classical output.
struct LoccProtocol {
    std::vector<Round> rounds;

    /// Throws DimensionError when alphabets or per-party quantum dims do not chain.
    void check() const;
    bool is_alternating() const;
    std::size_t in_dim(Party p) const;
    std::size_t out_dim(Party p) const;
};

/// A composed joint map that is CP but not necessarily TP.
struct FlaggedMap {
    CpMap map;
    double tp_defect = 0.0;

    bool trace_preserving(double tol = kDefaultTol) const {
        return tp_defect <= tol;
    }
};

FlaggedMap flag(CpMap map);

/// One-way LOCC: sum_o A_o (x) B_{|o}. `alice` must have a single classical input.
CpMap compose_one_way(const Instrument &alice, const std::vector<CpMap> &bob);

/// Joint CPTP map of a finite-round protocol (delta wiring, classical indices summed).
CpMap compose_locc_protocol(const LoccProtocol &protocol);

/// sum p(i_A,i_B|o_A,o_B) A_{o_A|i_A} (x) B_{o_B|i_B}.
FlaggedMap compose_ccstar(const JointMapSpec &spec);

bool is_locc_star_member(const JointMapSpec &spec, double tol = kDefaultTol);

/// Composes a sequence of one party's instruments into a single instrument
/// with aggregate input (i_1..i_N) and output (o_1..o_N), first index fastest.
Instrument collapse_sequence(const std::vector<Instrument> &sequence);

/// Direct multi-round contraction sum p(i..|o..) A^(N)...A^(1) (x) B^(N)...B^(1).
///
/// The wiring's inputs are (i_1..i_NA, i'_1..i'_NB) and its outputs
/// (o_1..o_NA, o'_1..o'_NB), in that slot order.
FlaggedMap compose_multiround(
    const std::vector<Instrument> &alice_rounds, const std::vector<Instrument> &bob_rounds, const CondDist &wiring);

struct LoopPair {
    Instrument alice;
    Instrument bob;
};

/// Rewrites a wired pair as an equivalent loop pair. Alice's new output
/// a = (i_B, x) and Bob's new output b = (o_A, o_B), first component fastest;
/// x ranges over Alice's original output alphabet.
LoopPair to_loop_form(const JointMapSpec &spec);

/// sum_{a,b} A_{a|b} (x) B_{b|a}.
FlaggedMap compose_loop(const Instrument &alice, const Instrument &bob);

/// p(i_A, i_B | o_A, o_B) = delta(i_A, o_B) delta(i_B, o_A).
CondDist loop_wiring(std::size_t alice_in, std::size_t bob_in);

/// One term E^A (x) E^B of a separable-form map.
struct ProductTerm {
    CpMap a;
    CpMap b;
};

/// Sum of the product terms as a single CP map on (A, B).
CpMap sum_of_terms(const std::vector<ProductTerm> &terms);

/// Rewrites CP product terms as an equal sum of terms whose factors are
/// trace-nonincreasing: each pair is rescaled by c = max(1, ||G_A||) and, if
/// the B factor then has ||G_B|| > 1, split into ceil(||G_B||) equal copies.
/// Zero terms are dropped.
std::vector<ProductTerm> normalize_terms(const std::vector<ProductTerm> &terms, double tol = kDefaultTol);

/// Loop instruments over alphabets K+2 whose loop composition equals the sum
/// of the given trace-nonincreasing product terms. Unused rows are padded
/// with trace-and-replace onto the maximally mixed state.
LoopPair loop_instruments_from_td_terms(const std::vector<ProductTerm> &terms, double tol = kDefaultTol);

struct SloccStarDecomposition {
    /// Natural number M with every (1/M) E^A_k trace-nonincreasing.
    std::size_t scale = 1;
    /// Loop-wired spec whose composition equals sum_k E^A_k (x) E^B_k.
    JointMapSpec spec;
};

/// ceil(max_k ||sum K^dagger K of E^A_k||_op), at least 1.
std::size_t slocc_scale(const std::vector<ProductTerm> &terms, double tol = kDefaultTol);

SloccStarDecomposition slocc_star_decompose(const std::vector<ProductTerm> &terms, double tol = kDefaultTol);

/// Same, for factors given by Choi operators; throws PositivityError on non-CP factors.
SloccStarDecomposition slocc_star_decompose(
    const std::vector<std::pair<ChoiOperator, ChoiOperator>> &terms, double tol = kDefaultTol);

}  // namespace causal_channels

#endif
