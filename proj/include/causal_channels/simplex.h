#ifndef CAUSAL_CHANNELS_SIMPLEX_H
#define CAUSAL_CHANNELS_SIMPLEX_H

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace causal_channels {

struct LpFeasibility {
    bool feasible = false;
    /// A point with x >= 0 and A x = b when feasible.
    std::vector<double> x;
    /// Phase-1 optimum: sum of the artificial variables.
    double infeasibility = 0.0;
    std::size_t pivots = 0;
};

/// Phase-1 simplex on a dense tableau with Bland's rule. Coefficients with
/// magnitude <= pivot_tol are treated as zero; the system is feasible when
/// the phase-1 optimum is <= feasibility_tol.
LpFeasibility find_feasible_point(
    const Eigen::MatrixXd &a, const Eigen::VectorXd &b, double pivot_tol = 1e-9, double feasibility_tol = 1e-7);

}  // namespace causal_channels

#endif
