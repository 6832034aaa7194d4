#include "causal_channels/simplex.h"

#include <cmath>
#include <limits>
#include <string>

#include "causal_channels/errors.h"

namespace causal_channels {

LpFeasibility find_feasible_point(
    const Eigen::MatrixXd &a, const Eigen::VectorXd &b, double pivot_tol, double feasibility_tol) {
    if (a.rows() != b.size()) {
        throw DimensionError("constraint matrix and right-hand side have different row counts");
    }
    if (!a.allFinite() || !b.allFinite()) {
        throw DimensionError("linear program has non-finite coefficients");
    }
    const Eigen::Index m = a.rows();
    const Eigen::Index n = a.cols();
    const Eigen::Index rhs = n + m;

    // Rows 0..m-1 hold [A | I | b] with b >= 0; row m holds reduced costs.
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
    std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
    for (Eigen::Index i = 0; i < m; i++) {
        double sign = b(i) < 0 ? -1.0 : 1.0;
        t.row(i).head(n) = sign * a.row(i);
        t(i, n + i) = 1.0;
        t(i, rhs) = sign * b(i);
        basis[static_cast<std::size_t>(i)] = n + i;
    }
    for (Eigen::Index i = 0; i < m; i++) {
        t.row(m).head(n) -= t.row(i).head(n);
        t(m, rhs) -= t(i, rhs);
    }

    LpFeasibility result;
    const std::size_t max_pivots = 50 * static_cast<std::size_t>(n + m) + 1000;
    while (true) {
        Eigen::Index enter = -1;
        for (Eigen::Index j = 0; j < n + m; j++) {
            if (t(m, j) < -pivot_tol) {
                enter = j;
                break;
            }
        }
        if (enter < 0) {
            break;
        }
        Eigen::Index leave = -1;
        double best = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < m; i++) {
            double coef = t(i, enter);
            if (coef <= pivot_tol) {
                continue;
            }
            double ratio = t(i, rhs) / coef;
            if (ratio < best - 1e-15 ||
                (std::abs(ratio - best) <= 1e-15 && basis[static_cast<std::size_t>(i)] <
                                                        basis[static_cast<std::size_t>(leave)])) {
                best = ratio;
                leave = i;
            }
        }
        if (leave < 0) {
            // Unbounded column in a problem bounded below by zero: noise.
            t(m, enter) = 0.0;
            continue;
        }
        t.row(leave) /= t(leave, enter);
        for (Eigen::Index i = 0; i <= m; i++) {
            if (i != leave && t(i, enter) != 0.0) {
                t.row(i) -= t(i, enter) * t.row(leave);
            }
        }
        basis[static_cast<std::size_t>(leave)] = enter;
        if (++result.pivots > max_pivots) {
            throw VerificationFailure("simplex exceeded " + std::to_string(max_pivots) + " pivots");
        }
    }

    result.infeasibility = -t(m, rhs);
    result.feasible = result.infeasibility <= feasibility_tol;
    result.x.assign(static_cast<std::size_t>(n), 0.0);
    for (Eigen::Index i = 0; i < m; i++) {
        Eigen::Index j = basis[static_cast<std::size_t>(i)];
        if (j < n) {
            result.x[static_cast<std::size_t>(j)] = std::max(0.0, t(i, rhs));
        }
    }
    return result;
}

}  // namespace causal_channels
