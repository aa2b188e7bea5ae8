#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"

using namespace qtrace;
using qtrace::testing::to_eigen;

namespace {

const Complex I1(0.0, 1.0);

ComplexMatrix sigma_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }

}  // namespace

TEST(Kron, IdentityOneIsNeutral) {
  const auto m = random_ginibre(3, 2, 7);
  EXPECT_EQ(kron(ComplexMatrix::identity(1), m), m);
  EXPECT_EQ(kron(m, ComplexMatrix::identity(1)), m);
}

TEST(Kron, DiagonalTimesIdentity) {
  const auto d = ComplexMatrix::diagonal({1.0, 2.0});
  EXPECT_EQ(kron(d, ComplexMatrix::identity(2)), ComplexMatrix::diagonal({1.0, 1.0, 2.0, 2.0}));
}

TEST(Kron, SigmaXSigmaXFlipsBothQubits) {
  const auto xx = kron(sigma_x(), sigma_x());
  EXPECT_EQ(xx * ComplexMatrix::basis_ket(4, 0), ComplexMatrix::basis_ket(4, 3));
}

TEST(Kron, ShapeAndMixedProduct) {
  const auto a = random_ginibre(2, 3, 1), b = random_ginibre(3, 2, 2);
  const auto c = random_ginibre(3, 2, 3), d = random_ginibre(2, 4, 4);
  const auto k = kron(a, b);
  EXPECT_EQ(k.rows(), 6u);
  EXPECT_EQ(k.cols(), 6u);
  // (A (x) B)(C (x) D) = AC (x) BD
  EXPECT_LT(max_abs_diff(kron(a, b) * kron(c, d), kron(a * c, b * d)), 1e-12);
}

TEST(Kron, CounterCountsOneProductPerEntry) {
  OpCounter c;
  kron(random_ginibre(2, 3, 1), random_ginibre(4, 5, 2), &c);
  EXPECT_EQ(c.mops, 120u);
  EXPECT_EQ(c.sops, 0u);
}

TEST(Matmul, MatchesEigen) {
  const auto a = random_ginibre(4, 3, 11), b = random_ginibre(3, 5, 12);
  const Eigen::MatrixXcd ref = to_eigen(a) * to_eigen(b);
  const auto got = a * b;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      EXPECT_LT(std::abs(got(i, j) - ref(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))), 1e-13);
    }
  }
}

TEST(Matmul, CounterAndShapeError) {
  OpCounter c;
  matmul(random_ginibre(2, 3, 1), random_ginibre(3, 4, 2), &c);
  EXPECT_EQ(c.mops, 2u * 3u * 4u);
  EXPECT_EQ(c.sops, 2u * 4u * 2u);
  EXPECT_THROW(matmul(random_ginibre(2, 3, 1), random_ginibre(2, 3, 1)), DimensionError);
}

TEST(Trace, Identity) {
  for (std::size_t d = 1; d <= 6; ++d) EXPECT_EQ(trace(ComplexMatrix::identity(d)), Complex(static_cast<double>(d)));
}

TEST(Trace, KronFactorizes) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto a = random_ginibre(2, 2, 2 * s), b = random_ginibre(2, 2, 2 * s + 1);
    EXPECT_LT(std::abs(trace(kron(a, b)) - trace(a) * trace(b)), 1e-12);
  }
}

TEST(Trace, PureStateProjector) {
  auto psi = random_ginibre(5, 1, 3);
  double norm = 0.0;
  for (auto z : psi.data()) norm += std::norm(z);
  psi *= Complex(1.0 / std::sqrt(norm));
  EXPECT_NEAR(trace(projector(psi.data())).real(), 1.0, 1e-12);
}

TEST(Trace, NonSquareThrows) { EXPECT_THROW(trace(random_ginibre(2, 3, 1)), DimensionError); }

TEST(Dagger, IdentityAndInvolution) {
  EXPECT_EQ(dagger(ComplexMatrix::identity(3)), ComplexMatrix::identity(3));
  const auto a = random_ginibre(3, 4, 5);
  EXPECT_EQ(dagger(dagger(a)), a);
  EXPECT_EQ(dagger(a).rows(), 4u);
}

TEST(Dagger, HandExample) {
  const ComplexMatrix a{{0.0, I1}, {0.0, 0.0}};
  const ComplexMatrix expected{{0.0, 0.0}, {-I1, 0.0}};
  EXPECT_EQ(dagger(a), expected);
}

TEST(Hermitian, Examples) {
  const ComplexMatrix sy{{0.0, -I1}, {I1, 0.0}};
  EXPECT_TRUE(is_hermitian(sy, 1e-12));
  EXPECT_FALSE(is_hermitian(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}, 1e-12));
  EXPECT_FALSE(is_hermitian(random_ginibre(2, 3, 1), 1e-12));
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto g = random_ginibre(5, 5, s);
    EXPECT_TRUE(is_hermitian(g * dagger(g), 1e-12));
  }
}

TEST(Hermitian, RequireThrowsTypedError) {
  EXPECT_THROW(require_hermitian(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}, 1e-12, "test"), NotHermitianError);
  EXPECT_NO_THROW(require_hermitian(ComplexMatrix::identity(2), 1e-12, "test"));
}

TEST(Matrix, ConstructionErrors) {
  EXPECT_THROW(ComplexMatrix(2, 2, std::vector<Complex>(3)), DimensionError);
  EXPECT_THROW(ComplexMatrix::basis_ket(2, 2), DimensionError);
  EXPECT_THROW((ComplexMatrix{{1.0, 2.0}, {3.0}}), DimensionError);
}

TEST(Matrix, ArithmeticShapeErrors) {
  auto a = ComplexMatrix::identity(2);
  EXPECT_THROW(a += ComplexMatrix::identity(3), DimensionError);
  EXPECT_THROW(max_abs_diff(a, ComplexMatrix::identity(3)), DimensionError);
}
