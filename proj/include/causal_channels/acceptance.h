#ifndef CAUSAL_CHANNELS_ACCEPTANCE_H
#define CAUSAL_CHANNELS_ACCEPTANCE_H

#include <cstdint>
#include <string>
#include <vector>

namespace causal_channels {

/// A measured value against an upper threshold.
struct Check {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
    /// Runtime checks are kept out of deterministic reports.
    bool timing = false;
    std::string witness;
};

struct Report {
    std::vector<Check> checks;
    double seconds = 0.0;

    /// Records value <= threshold.
    Check &add(std::string name, double value, double threshold);
    Check &add_timing(std::string name, double seconds, double budget);
    /// Conjunction over all checks; an empty report fails.
    bool pass() const;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    Report report;
};

inline constexpr std::uint64_t kAcceptanceSeed = 20240611;

CriterionResult criterion_nine_state();
CriterionResult criterion_loop_form(std::uint64_t seed = kAcceptanceSeed);
CriterionResult criterion_sep(std::uint64_t seed = kAcceptanceSeed);
CriterionResult criterion_slocc(std::uint64_t seed = kAcceptanceSeed);
CriterionResult criterion_causal(std::uint64_t seed = kAcceptanceSeed);
CriterionResult criterion_procmat(std::uint64_t seed = kAcceptanceSeed);
CriterionResult criterion_kernel(std::uint64_t seed = kAcceptanceSeed);

/// Criteria 1-7 in order.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed = kAcceptanceSeed);

}  // namespace causal_channels

#endif
