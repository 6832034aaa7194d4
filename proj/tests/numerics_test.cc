#include <gtest/gtest.h>

#include "causal_channels/errors.h"
#include "causal_channels/numerics.h"
#include "test_util.h"

using namespace causal_channels;
using causal_channels::testing::ket;
using causal_channels::testing::mat;

TEST(Numerics, TensorProductMatchesHandExpansion) {
    auto a = mat(2, 2, {1, 2, 3, 4});
    auto b = mat(2, 1, {5, Complex(0, 1)});
    auto expect = mat(4, 2, {5, 10, Complex(0, 1), Complex(0, 2), 15, 20, Complex(0, 3), Complex(0, 4)});
    EXPECT_LT(distance(tensor_product(a, b), expect), 1e-15);
}

TEST(Numerics, PartialTraceOfProductState) {
    Rng rng(1);
    auto rho = random_density_matrix(2, rng);
    auto sigma = random_density_matrix(3, rng);
    auto joint = tensor_product(rho, sigma);
    EXPECT_LT(distance(partial_trace(joint, {2, 3}, {1}), rho), 1e-14);
    EXPECT_LT(distance(partial_trace(joint, {2, 3}, {0}), sigma), 1e-14);
    EXPECT_NEAR(partial_trace(joint, {2, 3}, {0, 1})(0, 0).real(), 1.0, 1e-14);
}

TEST(Numerics, PartialTraceMiddleSubsystemMatchesIndexSum) {
    Rng rng(2);
    auto m = random_ginibre(12, 12, rng);
    auto got = partial_trace(m, {2, 3, 2}, {1});
    ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
    for (int a = 0; a < 2; a++) {
        for (int c = 0; c < 2; c++) {
            for (int a2 = 0; a2 < 2; a2++) {
                for (int c2 = 0; c2 < 2; c2++) {
                    for (int b = 0; b < 3; b++) {
                        expect(a * 2 + c, a2 * 2 + c2) += m(a * 6 + b * 2 + c, a2 * 6 + b * 2 + c2);
                    }
                }
            }
        }
    }
    EXPECT_LT(distance(got, expect), 1e-13);
}

TEST(Numerics, PartialTransposeOfBellStateIsHalfSwap) {
    ComplexVector phi = ket({1, 0, 0, 1}) / std::sqrt(2.0);
    ComplexMatrix bell = phi * phi.adjoint();
    auto swap = mat(4, 4, {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1});
    EXPECT_LT(distance(partial_transpose(bell, {2, 2}, {1}), 0.5 * swap), 1e-15);
    EXPECT_NEAR(hermitian_eigenvalues(partial_transpose(bell, {2, 2}, {0})).minCoeff(), -0.5, 1e-14);
}

TEST(Numerics, PermuteSubsystemsSwapsFactors) {
    Rng rng(3);
    auto a = random_ginibre(2, 2, rng);
    auto b = random_ginibre(3, 3, rng);
    EXPECT_LT(distance(permute_subsystems(tensor_product(a, b), {2, 3}, {1, 0}), tensor_product(b, a)), 1e-14);
    auto c = random_ginibre(2, 2, rng);
    auto abc = tensor_product(tensor_product(a, b), c);
    auto cab = tensor_product(tensor_product(c, a), b);
    EXPECT_LT(distance(permute_subsystems(abc, {2, 3, 2}, {2, 0, 1}), cab), 1e-13);
}

TEST(Numerics, ProfileMismatchIsDimensionError) {
    ComplexMatrix m = ComplexMatrix::Identity(4, 4);
    EXPECT_THROW(partial_trace(m, {2, 3}, {0}), DimensionError);
    EXPECT_THROW(partial_trace(m, {2, 2}, {2}), DimensionError);
    EXPECT_THROW(permute_subsystems(m, {2, 2}, {0, 0}), DimensionError);
    EXPECT_THROW(DimProfile({2, 0}), DimensionError);
    EXPECT_THROW(distance(m, ComplexMatrix::Identity(3, 3)), DimensionError);
}

TEST(Numerics, HermitianAndPositivity) {
    auto h = mat(2, 2, {2, Complex(0, 1), Complex(0, -1), 2});
    EXPECT_TRUE(is_hermitian(h));
    EXPECT_TRUE(is_positive_semidefinite(h));
    auto vals = hermitian_eigenvalues(h);
    EXPECT_NEAR(vals(0), 1.0, 1e-14);
    EXPECT_NEAR(vals(1), 3.0, 1e-14);
    auto indefinite = mat(2, 2, {0, 1, 1, 0});
    EXPECT_FALSE(is_positive_semidefinite(indefinite));
    EXPECT_THROW(psd_sqrt(indefinite), PositivityError);
    EXPECT_THROW(hermitian_eigen(mat(2, 2, {0, 1, 0, 0})), SymmetryError);
}

TEST(Numerics, PsdSqrtSquaresBack) {
    Rng rng(4);
    auto g = random_ginibre(4, 4, rng);
    ComplexMatrix p = g * g.adjoint();
    auto s = psd_sqrt(p);
    EXPECT_LT(distance(s * s, p), 1e-12);
    EXPECT_TRUE(is_hermitian(s));
}

TEST(Numerics, RandomObjectsHaveTheirDefiningProperties) {
    Rng rng(5);
    auto rho = random_density_matrix(3, rng);
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-14);
    EXPECT_TRUE(is_positive_semidefinite(rho));
    auto v = random_isometry(5, 3, rng);
    EXPECT_LT(distance(v.adjoint() * v, ComplexMatrix::Identity(3, 3)), 1e-13);
    EXPECT_THROW(random_isometry(2, 3, rng), DimensionError);
    Rng again(5);
    EXPECT_EQ(random_density_matrix(3, again), rho);
}

TEST(Numerics, AllFiniteDetectsNan) {
    ComplexMatrix m = ComplexMatrix::Identity(2, 2);
    EXPECT_TRUE(all_finite(m));
    m(1, 0) = Complex(std::nan(""), 0);
    EXPECT_FALSE(all_finite(m));
}
