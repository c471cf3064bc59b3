#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "shiftlift/lift.hpp"
#include "shiftlift/polynomial.hpp"
#include "shiftlift/spectral.hpp"

namespace sl = shiftlift;
using sl::Complex;
using sl::ComplexMatrix;
using sl::Polynomial;

namespace {

ComplexMatrix random_hermitian(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> gauss;
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = gauss(rng);
    for (int j = i + 1; j < n; ++j) {
      a(i, j) = Complex(gauss(rng), gauss(rng));
      a(j, i) = std::conj(a(i, j));
    }
  }
  return a;
}

}  // namespace

TEST(Polynomial, TrimsAndReportsDegree) {
  EXPECT_EQ(Polynomial().degree(), -1);
  EXPECT_EQ(Polynomial::from_real({1, 2, 0, 0}).degree(), 1);
  EXPECT_EQ(Polynomial::monomial(3).degree(), 3);
}

TEST(Polynomial, Arithmetic) {
  const auto p = Polynomial::from_real({-1, 1});  // x - 1
  const auto q = Polynomial::from_real({1, 1});   // x + 1
  EXPECT_EQ(p * q, Polynomial::from_real({-1, 0, 1}));
  EXPECT_EQ((p * q).derivative(), Polynomial::from_real({0, 2}));
  EXPECT_EQ(p + q, Polynomial::from_real({0, 2}));
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_DOUBLE_EQ(std::abs((p * q)(Complex(3.0))), 8.0);
}

TEST(CharPoly, MatchesLeibnizOnRandomHermitian) {
  std::mt19937_64 rng(2024);
  for (int n = 1; n <= 7; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto a = random_hermitian(rng, n);
      const auto fast = sl::char_poly(a);
      const auto slow = oracle::leibniz_char_poly(a);
      EXPECT_EQ(fast.degree(), n);
      EXPECT_LE(sl::max_coefficient_residual(fast, slow), 1e-10 * (1.0 + slow.max_abs_coefficient()))
          << "n = " << n;
    }
  }
}

TEST(CharPoly, MatchesLeibnizOnNonHermitian) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss;
  ComplexMatrix a(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) a(i, j) = Complex(gauss(rng), gauss(rng));
  EXPECT_LE(sl::max_coefficient_residual(sl::char_poly(a), oracle::leibniz_char_poly(a)), 1e-10);
}

TEST(CharPoly, EmptyMatrixIsOne) {
  EXPECT_EQ(sl::char_poly(ComplexMatrix(0, 0)), Polynomial::from_real({1}));
}

TEST(CharPoly, VanishesAtEigenvalues) {
  std::mt19937_64 rng(99);
  for (int n = 2; n <= 12; ++n) {
    const auto a = random_hermitian(rng, n);
    const auto p = sl::char_poly(a);
    const double norm = a.norm();
    for (double lambda : sl::hermitian_eigenvalues(a).eigenvalues) {
      // Scale by the derivative-free size of p near lambda.
      double scale = 0.0;
      for (int i = 0; i <= p.degree(); ++i)
        scale += std::abs(p[i]) * std::pow(std::abs(lambda), i);
      EXPECT_LE(std::abs(p(lambda)), 1e-7 * n * std::max(1.0, norm) * std::max(1.0, scale));
    }
  }
}

TEST(CharPoly, PathsAreMatchingPolynomials) {
  // Forests: det(xI - A) = mu. P_n follows p_n = x p_{n-1} - p_{n-2}.
  Polynomial prev = Polynomial::from_real({1});
  Polynomial cur = Polynomial::from_real({0, 1});
  for (int n = 1; n <= 6; ++n) {
    const auto cp = sl::char_poly(sl::adjacency_matrix(sl::path_graph(n)));
    EXPECT_EQ(cp, cur) << "P" << n;
    const auto next = Polynomial::from_real({0, 1}) * cur - prev;
    prev = cur;
    cur = next;
  }
}

TEST(Roots, QuadraticWithoutRealRoots) {
  const auto p = Polynomial::from_real({1, 0, 1});
  EXPECT_FALSE(sl::is_real_rooted(p));
  EXPECT_FALSE(sl::max_real_root(p).has_value());
}

TEST(Roots, SimpleReal) {
  const auto p = Polynomial::from_real({0, -2, 0, 1});  // x^3 - 2x
  EXPECT_TRUE(sl::is_real_rooted(p));
  EXPECT_NEAR(*sl::max_real_root(p), std::sqrt(2.0), 1e-12);
}

TEST(Roots, RepeatedRootsAreReal) {
  // (x - 1)^4 (x + 2)^2
  auto p = Polynomial::from_real({1});
  for (int i = 0; i < 4; ++i) p = p * Polynomial::from_real({-1, 1});
  for (int i = 0; i < 2; ++i) p = p * Polynomial::from_real({2, 1});
  const auto rs = sl::root_set(p);
  EXPECT_TRUE(rs.all_real());
  EXPECT_NEAR(*rs.max_real_root, 1.0, 1e-6);
}

TEST(Roots, ZeroRootsOfHighMultiplicity) {
  const auto p = Polynomial::from_real({0, 0, 0, 0, -1, 0, 1});
  EXPECT_TRUE(sl::is_real_rooted(p));
  EXPECT_NEAR(*sl::max_real_root(p), 1.0, 1e-12);
}

TEST(Roots, MatchBisectionOnRealRootedProducts) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 30; ++trial) {
    auto p = Polynomial::from_real({1});
    double top = -1e9;
    for (int i = 0; i < 6; ++i) {
      const double r = u(rng);
      top = std::max(top, r);
      p = p * Polynomial::from_real({-r, 1});
    }
    EXPECT_TRUE(sl::is_real_rooted(p));
    EXPECT_NEAR(*sl::max_real_root(p), top, 1e-7);
  }
}

TEST(Roots, RejectsComplexCoefficientsAndConstants) {
  const Polynomial p(std::vector<Complex>{Complex(0, 1), 1.0});
  EXPECT_THROW(sl::max_real_root(p), sl::InputError);
  EXPECT_THROW(sl::max_real_root(Polynomial::from_real({3})), sl::InputError);
}

TEST(Roots, CompanionMatchesOracleScanOnRandomCharPolys) {
  std::mt19937_64 rng(11);
  for (int n = 2; n <= 9; ++n) {
    const auto a = random_hermitian(rng, n);
    const auto p = sl::char_poly(a);
    const auto top = sl::hermitian_eigenvalues(a).eigenvalues.back();
    ASSERT_TRUE(sl::is_real_rooted(p, 1e-7)) << n;
    EXPECT_NEAR(*sl::max_real_root(p, 1e-7), top, 1e-7);
    EXPECT_NEAR(oracle::largest_root_by_scan(Polynomial::from_real(p.real_coefficients())), top, 1e-6);
  }
}

TEST(Interlacing, CommonInterlacerPasses) {
  // (x-1)(x-3) and (x-2)(x-4) are interlaced by any point of [2,3].
  const std::vector<Polynomial> ps{
      Polynomial::from_real({3, -4, 1}),
      Polynomial::from_real({8, -6, 1}),
  };
  EXPECT_TRUE(sl::check_common_interlacing(ps, 21));
}

TEST(Interlacing, DisjointRootIntervalsFail) {
  // (x-1)(x-2) and (x-5)(x-6): the midpoint mixture has complex roots.
  const std::vector<Polynomial> ps{
      Polynomial::from_real({2, -3, 1}),
      Polynomial::from_real({30, -11, 1}),
  };
  EXPECT_FALSE(sl::check_common_interlacing(ps, 21));
}

TEST(Interlacing, DegreeMismatchThrows) {
  const std::vector<Polynomial> ps{Polynomial::from_real({0, 1}), Polynomial::from_real({0, 0, 1})};
  EXPECT_THROW(sl::check_common_interlacing(ps, 5), sl::InputError);
}

TEST(Interlacing, NegativeLeadingCoefficientThrows) {
  const std::vector<Polynomial> ps{Polynomial::from_real({0, 1}), Polynomial::from_real({0, -1})};
  EXPECT_THROW(sl::check_common_interlacing(ps, 5), sl::InputError);
}

TEST(Interlacing, SimplexGridCoversVerticesAndBarycenter) {
  const auto grid = sl::simplex_grid(3, 3);  // steps of 1/2: 6 lattice points + barycenter
  EXPECT_EQ(grid.size(), 7u);
  for (const auto& w : grid) {
    double sum = 0;
    for (double x : w) sum += x;
    EXPECT_NEAR(sum, 1.0, 1e-15);
  }
}
