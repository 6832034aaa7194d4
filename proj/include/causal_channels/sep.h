#ifndef CAUSAL_CHANNELS_SEP_H
#define CAUSAL_CHANNELS_SEP_H

#include <vector>

#include "causal_channels/composition.h"

namespace causal_channels {

/// Separable-form map sum_k E^A_k (x) E^B_k.
struct SepMap {
    std::vector<ProductTerm> terms;

    /// Throws DimensionError when the terms are empty or their local dims disagree.
    void check() const;
    CpMap joint_map() const;
};

/// True iff every factor is CP and the summed map is TP within tol.
bool validate_sep(const SepMap &m, double tol = kDefaultTol);

/// Loop instruments over alphabets K'+2 whose loop composition equals the
/// SEP map. Factor pairs are first rewritten as trace-nonincreasing pairs.
LoopPair sep_to_locc_star(const SepMap &m, double tol = kDefaultTol);

/// Flattens sum_{a,b} A_{a|b} (x) B_{b|a} into SEP terms, dropping zero terms.
/// Throws MembershipError when the loop composition is not TP.
SepMap locc_star_to_sep(const Instrument &alice, const Instrument &bob, double tol = kDefaultTol);

struct NineStateFixture {
    /// |psi_k> on 3 (x) 3, k = 0..8 (displayed as 1..9).
    std::vector<ComplexVector> kets;
    std::vector<ComplexMatrix> states;
    /// Alice: input b, output a. Bob: input a, output b. Each element is one
    /// rank-1 Kraus operator from dim 3 to dim 9.
    Instrument alice;
    Instrument bob;
};

NineStateFixture nine_state_fixture();

struct NineStateRecord {
    /// 1-based label.
    int state = 0;
    /// <k,k| out |k,k>, the probability that both local readouts report k.
    double output_fidelity = 0.0;
    /// Frobenius distance between the output and |k><k| (x) |k><k|.
    double distance = 0.0;
};

struct NineStateReport {
    std::vector<NineStateRecord> records;
    /// Largest ||sum K^dagger K - 1||_F over both instruments' conditioning symbols.
    double instrument_defect = 0.0;
    double joint_tp_defect = 0.0;
    bool pass = false;
};

NineStateReport verify_nine_state_discrimination(double tol = kDefaultTol);

}  // namespace causal_channels

#endif
