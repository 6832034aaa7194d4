#include "causal_channels/numerics.h"

#include <cmath>
#include <numeric>
#include <string>

#include "causal_channels/errors.h"

namespace causal_channels {

DimProfile::DimProfile(std::initializer_list<std::size_t> dims) : DimProfile(std::vector<std::size_t>(dims)) {
}

DimProfile::DimProfile(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    for (auto d : dims_) {
        if (d == 0) {
            throw DimensionError("subsystem dimensions must be >= 1");
        }
    }
}

std::size_t DimProfile::total() const {
    return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>());
}

ComplexMatrix identity(std::size_t dim) {
    return ComplexMatrix::Identity(dim, dim);
}

ComplexMatrix zeros(std::size_t rows, std::size_t cols) {
    return ComplexMatrix::Zero(rows, cols);
}

ComplexVector basis_ket(std::size_t dim, std::size_t k) {
    if (k >= dim) {
        throw DimensionError("basis index " + std::to_string(k) + " out of range for dimension " + std::to_string(dim));
    }
    ComplexVector v = ComplexVector::Zero(dim);
    v(k) = 1.0;
    return v;
}

ComplexMatrix outer(const ComplexVector &ket, const ComplexVector &bra) {
    return ket * bra.adjoint();
}

ComplexMatrix basis_projector(std::size_t dim, std::size_t k) {
    auto v = basis_ket(dim, k);
    return outer(v, v);
}

ComplexMatrix tensor_product(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

namespace {

void check_profile(const ComplexMatrix &m, const DimProfile &profile, const SubsystemSet &subsystems) {
    if (m.rows() != m.cols()) {
        throw DimensionError("expected a square matrix");
    }
    if (profile.total() != static_cast<std::size_t>(m.rows())) {
        throw DimensionError(
            "dimension profile multiplies to " + std::to_string(profile.total()) + " but matrix has dimension " +
            std::to_string(m.rows()));
    }
    for (auto s : subsystems) {
        if (s >= profile.size()) {
            throw DimensionError("subsystem index " + std::to_string(s) + " out of range");
        }
    }
}

// Splits a flat index into per-subsystem digits (leftmost most significant).
void to_digits(std::size_t index, const DimProfile &profile, std::vector<std::size_t> &digits) {
    for (std::size_t k = profile.size(); k-- > 0;) {
        digits[k] = index % profile[k];
        index /= profile[k];
    }
}

std::size_t from_digits(const std::vector<std::size_t> &digits, const DimProfile &profile) {
    std::size_t index = 0;
    for (std::size_t k = 0; k < profile.size(); k++) {
        index = index * profile[k] + digits[k];
    }
    return index;
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix &m, const DimProfile &profile, const SubsystemSet &traced) {
    check_profile(m, profile, traced);
    std::vector<std::size_t> kept_dims;
    for (std::size_t k = 0; k < profile.size(); k++) {
        if (!traced.count(k)) {
            kept_dims.push_back(profile[k]);
        }
    }
    DimProfile kept(kept_dims);
    ComplexMatrix out = ComplexMatrix::Zero(kept.total(), kept.total());

    std::vector<std::size_t> row_digits(profile.size());
    std::vector<std::size_t> col_digits(profile.size());
    std::vector<std::size_t> kept_row(kept.size());
    std::vector<std::size_t> kept_col(kept.size());
    auto n = static_cast<std::size_t>(m.rows());
    for (std::size_t r = 0; r < n; r++) {
        to_digits(r, profile, row_digits);
        for (std::size_t c = 0; c < n; c++) {
            to_digits(c, profile, col_digits);
            bool diagonal_on_traced = true;
            std::size_t kk = 0;
            for (std::size_t k = 0; k < profile.size(); k++) {
                if (traced.count(k)) {
                    if (row_digits[k] != col_digits[k]) {
                        diagonal_on_traced = false;
                        break;
                    }
                } else {
                    kept_row[kk] = row_digits[k];
                    kept_col[kk] = col_digits[k];
                    kk++;
                }
            }
            if (diagonal_on_traced) {
                out(from_digits(kept_row, kept), from_digits(kept_col, kept)) += m(r, c);
            }
        }
    }
    return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix &m, const DimProfile &profile, const SubsystemSet &transposed) {
    check_profile(m, profile, transposed);
    auto n = static_cast<std::size_t>(m.rows());
    ComplexMatrix out(n, n);
    std::vector<std::size_t> row_digits(profile.size());
    std::vector<std::size_t> col_digits(profile.size());
    for (std::size_t r = 0; r < n; r++) {
        for (std::size_t c = 0; c < n; c++) {
            to_digits(r, profile, row_digits);
            to_digits(c, profile, col_digits);
            for (auto k : transposed) {
                std::swap(row_digits[k], col_digits[k]);
            }
            out(from_digits(row_digits, profile), from_digits(col_digits, profile)) = m(r, c);
        }
    }
    return out;
}

ComplexMatrix permute_subsystems(
    const ComplexMatrix &m, const DimProfile &profile, const std::vector<std::size_t> &perm) {
    check_profile(m, profile, {});
    if (perm.size() != profile.size()) {
        throw DimensionError("permutation length does not match the dimension profile");
    }
    std::vector<std::size_t> new_dims(perm.size());
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t k = 0; k < perm.size(); k++) {
        if (perm[k] >= perm.size() || seen[perm[k]]) {
            throw DimensionError("invalid subsystem permutation");
        }
        seen[perm[k]] = true;
        new_dims[k] = profile[perm[k]];
    }
    DimProfile target(new_dims);
    auto n = static_cast<std::size_t>(m.rows());
    std::vector<std::size_t> old_index(n);
    std::vector<std::size_t> digits(profile.size());
    std::vector<std::size_t> new_digits(profile.size());
    for (std::size_t i = 0; i < n; i++) {
        to_digits(i, profile, digits);
        for (std::size_t k = 0; k < perm.size(); k++) {
            new_digits[k] = digits[perm[k]];
        }
        old_index[from_digits(new_digits, target)] = i;
    }
    ComplexMatrix out(n, n);
    for (std::size_t r = 0; r < n; r++) {
        for (std::size_t c = 0; c < n; c++) {
            out(r, c) = m(old_index[r], old_index[c]);
        }
    }
    return out;
}

double distance(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError(
            "distance between " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " and " +
            std::to_string(b.rows()) + "x" + std::to_string(b.cols()) + " matrices");
    }
    return (a - b).norm();
}

bool is_hermitian(const ComplexMatrix &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return (m - m.adjoint()).norm() <= tol * std::max<double>(1.0, static_cast<double>(m.rows()));
}

HermitianEigen hermitian_eigen(const ComplexMatrix &m, double tol) {
    if (m.rows() != m.cols()) {
        throw SymmetryError("eigendecomposition of a non-square matrix");
    }
    if (!is_hermitian(m, tol)) {
        throw SymmetryError("matrix is not Hermitian within tolerance");
    }
    // Symmetrize so the solver sees an exactly Hermitian input.
    ComplexMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw SymmetryError("Hermitian eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector hermitian_eigenvalues(const ComplexMatrix &m, double tol) {
    if (m.rows() != m.cols()) {
        throw SymmetryError("eigenvalues of a non-square matrix");
    }
    if (!is_hermitian(m, tol)) {
        throw SymmetryError("matrix is not Hermitian within tolerance");
    }
    ComplexMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw SymmetryError("Hermitian eigensolver did not converge");
    }
    return solver.eigenvalues();
}

bool is_positive_semidefinite(const ComplexMatrix &m, double tol) {
    if (m.size() == 0) {
        return true;
    }
    return hermitian_eigenvalues(m, tol).minCoeff() >= -tol;
}

ComplexMatrix psd_sqrt(const ComplexMatrix &m, double tol) {
    auto eig = hermitian_eigen(m, tol);
    if (eig.values.size() > 0 && eig.values.minCoeff() < -tol) {
        throw PositivityError("square root of a matrix with a negative eigenvalue");
    }
    RealVector roots = eig.values.cwiseMax(0.0).cwiseSqrt();
    return eig.vectors * roots.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

double max_eigenvalue(const ComplexMatrix &m, double tol) {
    if (m.size() == 0) {
        return 0.0;
    }
    return hermitian_eigenvalues(m, tol).maxCoeff();
}

bool all_finite(const ComplexMatrix &m) {
    for (Eigen::Index i = 0; i < m.size(); i++) {
        auto z = m.data()[i];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            return false;
        }
    }
    return true;
}

ComplexMatrix random_ginibre(std::size_t rows, std::size_t cols, Rng &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; r++) {
        for (std::size_t c = 0; c < cols; c++) {
            double re = gauss(rng);
            double im = gauss(rng);
            m(r, c) = Complex(re, im);
        }
    }
    return m;
}

ComplexMatrix random_density_matrix(std::size_t dim, Rng &rng) {
    auto g = random_ginibre(dim, dim, rng);
    ComplexMatrix rho = g * g.adjoint();
    return rho / rho.trace();
}

ComplexMatrix random_isometry(std::size_t rows, std::size_t cols, Rng &rng) {
    if (rows < cols) {
        throw DimensionError("an isometry needs at least as many rows as columns");
    }
    auto g = random_ginibre(rows, cols, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(rows, cols);
    const ComplexMatrix &r = qr.matrixQR();
    for (std::size_t c = 0; c < cols; c++) {
        auto d = r(c, c);
        if (std::abs(d) > 0) {
            q.col(c) *= d / std::abs(d);
        }
    }
    return q;
}

}  // namespace causal_channels
