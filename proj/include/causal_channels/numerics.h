#ifndef CAUSAL_CHANNELS_NUMERICS_H
#define CAUSAL_CHANNELS_NUMERICS_H

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

namespace causal_channels {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Rng = std::mt19937_64;

/// Default tolerance for equality, trace-preservation and PSD checks.
inline constexpr double kDefaultTol = 1e-9;

/// Ordered subsystem dimensions of a tensor-product space.
///
/// The leftmost subsystem carries the most significant index, matching the
/// ordering produced by `tensor_product(a, b)` (a is subsystem 0).
class DimProfile {
   public:
    DimProfile() = default;
    DimProfile(std::initializer_list<std::size_t> dims);
    explicit DimProfile(std::vector<std::size_t> dims);

    const std::vector<std::size_t> &dims() const {
        return dims_;
    }
    std::size_t size() const {
        return dims_.size();
    }
    std::size_t operator[](std::size_t k) const {
        return dims_[k];
    }
    std::size_t total() const;

   private:
    std::vector<std::size_t> dims_;
};

using SubsystemSet = std::set<std::size_t>;

ComplexMatrix identity(std::size_t dim);
ComplexMatrix zeros(std::size_t rows, std::size_t cols);

/// Column vector |k> in a `dim`-dimensional space.
ComplexVector basis_ket(std::size_t dim, std::size_t k);

/// |ket><bra|.
ComplexMatrix outer(const ComplexVector &ket, const ComplexVector &bra);

/// |k><k|.
ComplexMatrix basis_projector(std::size_t dim, std::size_t k);

/// Kronecker product, subsystem order (a, b).
ComplexMatrix tensor_product(const ComplexMatrix &a, const ComplexMatrix &b);

ComplexMatrix partial_trace(const ComplexMatrix &m, const DimProfile &profile, const SubsystemSet &traced);

ComplexMatrix partial_transpose(const ComplexMatrix &m, const DimProfile &profile, const SubsystemSet &transposed);

/// Reorders the tensor factors of a square operator. `perm[k]` is the old
/// subsystem that becomes new subsystem k.
ComplexMatrix permute_subsystems(
    const ComplexMatrix &m, const DimProfile &profile, const std::vector<std::size_t> &perm);

/// Frobenius norm of a - b.
double distance(const ComplexMatrix &a, const ComplexMatrix &b);

bool is_hermitian(const ComplexMatrix &m, double tol = kDefaultTol);

/// Eigenvalues (ascending) of a Hermitian matrix. Throws SymmetryError when
/// ||m - m^dagger||_F > tol * dim.
RealVector hermitian_eigenvalues(const ComplexMatrix &m, double tol = kDefaultTol);

struct HermitianEigen {
    RealVector values;         // ascending
    ComplexMatrix vectors;     // columns
};
HermitianEigen hermitian_eigen(const ComplexMatrix &m, double tol = kDefaultTol);

bool is_positive_semidefinite(const ComplexMatrix &m, double tol = kDefaultTol);

/// Square root of a PSD matrix; eigenvalues below zero (numerical noise) are clamped.
ComplexMatrix psd_sqrt(const ComplexMatrix &m, double tol = kDefaultTol);

/// Largest eigenvalue of a Hermitian matrix (operator norm when PSD).
double max_eigenvalue(const ComplexMatrix &m, double tol = kDefaultTol);

bool all_finite(const ComplexMatrix &m);

/// Matrix with i.i.d. standard complex Gaussian entries.
ComplexMatrix random_ginibre(std::size_t rows, std::size_t cols, Rng &rng);

/// Random density matrix of full rank.
ComplexMatrix random_density_matrix(std::size_t dim, Rng &rng);

/// Columns are orthonormal; rows >= cols. Haar distributed (QR with phase fix).
ComplexMatrix random_isometry(std::size_t rows, std::size_t cols, Rng &rng);

}  // namespace causal_channels

#endif
