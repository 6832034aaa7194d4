#ifndef CAUSAL_CHANNELS_PROCMAT_H
#define CAUSAL_CHANNELS_PROCMAT_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "causal_channels/composition.h"

namespace causal_channels {

/// w(i_A, i_B, o_A, o_B), flat index i_A + nIA (i_B + nIB (o_A + nOA o_B)).
class ClassicalProcess {
   public:
    ClassicalProcess(std::size_t n_ia, std::size_t n_ib, std::size_t n_oa, std::size_t n_ob);
    ClassicalProcess(
        std::size_t n_ia, std::size_t n_ib, std::size_t n_oa, std::size_t n_ob, std::vector<double> table);

    std::size_t n_ia() const {
        return n_ia_;
    }
    std::size_t n_ib() const {
        return n_ib_;
    }
    std::size_t n_oa() const {
        return n_oa_;
    }
    std::size_t n_ob() const {
        return n_ob_;
    }
    const std::vector<double> &table() const {
        return table_;
    }

    double operator()(std::size_t ia, std::size_t ib, std::size_t oa, std::size_t ob) const {
        return table_[ia + n_ia_ * (ib + n_ib_ * (oa + n_oa_ * ob))];
    }
    double &operator()(std::size_t ia, std::size_t ib, std::size_t oa, std::size_t ob) {
        return table_[ia + n_ia_ * (ib + n_ib_ * (oa + n_oa_ * ob))];
    }

    /// The same table read as p(i_A, i_B | o_A, o_B).
    CondDist as_wiring() const;
    static ClassicalProcess from_wiring(const CondDist &wiring);

    /// Throws PositivityError on a negative or non-finite entry.
    void require_nonnegative() const;

    bool operator==(const ClassicalProcess &other) const = default;

   private:
    std::size_t n_ia_;
    std::size_t n_ib_;
    std::size_t n_oa_;
    std::size_t n_ob_;
    std::vector<double> table_;
};

/// Deterministic strategies f: i_A -> o_A and g: i_B -> o_B.
struct StrategyPair {
    std::vector<std::size_t> f;
    std::vector<std::size_t> g;
    /// sum_{i_A, i_B} w(i_A, i_B, f(i_A), g(i_B)).
    double value = 0.0;
};

struct ProcessCheck {
    bool valid = true;
    double max_deviation = 0.0;
    std::size_t strategies = 0;
    /// Strategy pair with the largest deviation when invalid.
    std::optional<StrategyPair> witness;
};

/// Exhaustive check over all deterministic strategy pairs.
ProcessCheck validate_classical_process(const ClassicalProcess &w, double tol = 1e-12);

/// sum w A_{o_A|i_A} (x) B_{o_B|i_B}. Throws ProcessValidityError when w is invalid.
CpMap compose_via_classical_process(
    const ClassicalProcess &w, const Instrument &alice, const Instrument &bob, double tol = 1e-12);

struct CausalDecomposition {
    double q = 0.0;
    /// p_{A->B}(i_A, i_B | o_A).
    CondDist p_ab;
    /// p_{B->A}(i_A, i_B | o_B).
    CondDist p_ba;
    double recombination_error = 0.0;

    ClassicalProcess recombine() const;
};

/// LP over unnormalized x(i_A,i_B,o_A), y(i_A,i_B,o_B) >= 0 with x + y = w and
/// the one-way marginal conditions. Throws ProcessValidityError on invalid w
/// and VerificationFailure when the LP is infeasible.
CausalDecomposition causal_decompose(const ClassicalProcess &w, double tol = 1e-12);

struct OneWayMixture {
    double q = 0.0;
    LoccProtocol a_to_b;
    LoccProtocol b_to_a;

    /// q * M_{A->B} + (1 - q) * M_{B->A}.
    CpMap joint_map() const;
};

OneWayMixture extract_one_way_mixture(
    const CausalDecomposition &dec, const Instrument &alice, const Instrument &bob);

struct ProcessDims {
    std::size_t ia = 1;
    std::size_t oa = 1;
    std::size_t ib = 1;
    std::size_t ob = 1;

    std::size_t total() const {
        return ia * oa * ib * ob;
    }
};

/// Diagonal W on I_A (x) O_A (x) I_B (x) O_B, index ((i_A nOA + o_A) nIB + i_B) nOB + o_B.
ComplexMatrix embed_diagonal(const ClassicalProcess &w);
ClassicalProcess extract_diagonal(const ComplexMatrix &w, const ProcessDims &dims);

struct ProbeRecord {
    std::string kind;
    std::size_t index = 0;
    double value = 0.0;
    double deviation = 0.0;
};

struct ProbeReport {
    std::vector<ProbeRecord> probes;
    double max_deviation = 0.0;

    bool passes(double tol = kDefaultTol) const {
        return max_deviation <= tol;
    }
};

/// Necessary check tr[W (M_A^T (x) M_B^T)] = 1 over `random_probes` random
/// CPTP pairs plus every pair of deterministic measure-and-prepare maps.
/// Throws PositivityError when W is not PSD.
ProbeReport probe_quantum_process(
    const ComplexMatrix &w, const ProcessDims &dims, std::size_t random_probes, std::uint64_t seed,
    double tol = kDefaultTol);

/// All maps [n] -> [m] as value lists, first argument's value fastest.
std::vector<std::vector<std::size_t>> deterministic_functions(std::size_t n, std::size_t m);

}  // namespace causal_channels

#endif
