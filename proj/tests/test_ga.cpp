#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include <genfreq/ga.hpp>

#include "test_support.hpp"

using genfreq::Bivector;
using genfreq::Matrix;
using genfreq::VecN;

TEST_CASE("inner product matches the componentwise sum") {
  const VecN x{1.0, 2.0, 3.0};
  const VecN y{4.0, -5.0, 6.0};
  REQUIRE(genfreq::inner(x, y) == 4.0 - 10.0 + 18.0);
  REQUIRE(genfreq::inner(x, y) == genfreq::inner(y, x));
  REQUIRE(genfreq::magnitude(VecN{3.0, 4.0}) == 5.0);
}

TEST_CASE("inner product is bilinear") {
  auto rng = testing::make_rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dim = 2 + trial % 5;
    const VecN x = testing::random_vec(rng, dim);
    const VecN y = testing::random_vec(rng, dim);
    const VecN z = testing::random_vec(rng, dim);
    const double a = 0.5 + trial;
    const double lhs = genfreq::inner(x * a + y, z);
    const double rhs = a * genfreq::inner(x, z) + genfreq::inner(y, z);
    REQUIRE_THAT(lhs, Catch::Matchers::WithinRel(rhs, 1e-12) ||
                          Catch::Matchers::WithinAbs(rhs, 1e-12));
  }
}

TEST_CASE("outer product stores every componentwise pair") {
  const VecN x{1.0, 2.0};
  const VecN y{3.0, 4.0};
  const Matrix m = genfreq::outer(x, y);
  REQUIRE(m.rows() == 2);
  REQUIRE(m.cols() == 2);
  REQUIRE(m(0, 0) == 3.0);
  REQUIRE(m(0, 1) == 4.0);
  REQUIRE(m(1, 0) == 6.0);
  REQUIRE(m(1, 1) == 8.0);
}

TEST_CASE("wedge product is antisymmetric and vanishes on parallel vectors") {
  auto rng = testing::make_rng(202);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dim = 2 + trial % 5;
    const VecN x = testing::random_vec(rng, dim);
    const VecN y = testing::random_vec(rng, dim);

    const Bivector xy = genfreq::wedge(x, y);
    const Bivector yx = genfreq::wedge(y, x);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        REQUIRE(xy.coeff(i, j) == -yx.coeff(i, j));
      }
    }

    REQUIRE(genfreq::wedge(x, x).magnitude() == 0.0);
    REQUIRE(genfreq::wedge(x, x * 3.5).magnitude() <=
            1e-13 * genfreq::inner(x, x) * 3.5);
  }
}

TEST_CASE("wedge product is bilinear") {
  auto rng = testing::make_rng(303);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dim = 2 + trial % 5;
    const VecN x = testing::random_vec(rng, dim);
    const VecN y = testing::random_vec(rng, dim);
    const VecN z = testing::random_vec(rng, dim);
    const double a = 1.25 * (trial + 1);

    const Bivector lhs = genfreq::wedge(x * a + y, z);
    const Bivector rhs = genfreq::wedge(x, z) * a + genfreq::wedge(y, z);
    const auto lc = lhs.coefficients();
    const auto rc = rhs.coefficients();
    double scale = 0.0;
    for (double v : rc) scale = std::max(scale, std::abs(v));
    for (std::size_t k = 0; k < lc.size(); ++k) {
      REQUIRE(std::abs(lc[k] - rc[k]) <= 1e-12 * std::max(1.0, scale));
    }
  }
}

TEST_CASE("wedge magnitude satisfies the Lagrange identity") {
  auto rng = testing::make_rng(404);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 2 + trial % 5;
    const VecN x = testing::random_vec(rng, dim);
    const VecN y = testing::random_vec(rng, dim);
    const double wedge_sq = std::pow(genfreq::wedge(x, y).magnitude(), 2);
    const double dot = genfreq::inner(x, y);
    const double expected = genfreq::inner(x, x) * genfreq::inner(y, y) - dot * dot;
    REQUIRE(std::abs(wedge_sq - expected) <=
            1e-12 * genfreq::inner(x, x) * genfreq::inner(y, y));
  }
}

TEST_CASE("dim-2 wedge reduces to the plane determinant") {
  const VecN x{2.0, 3.0};
  const VecN y{5.0, 7.0};
  const Bivector b = genfreq::wedge(x, y);
  REQUIRE(b.n_coefficients() == 1);
  REQUIRE(b.coeff(0, 1) == 2.0 * 7.0 - 5.0 * 3.0);
  REQUIRE(genfreq::wedge(y, x).coeff(0, 1) == -b.coeff(0, 1));
}

TEST_CASE("dim-3 wedge carries the cross product components") {
  auto rng = testing::make_rng(505);
  for (int trial = 0; trial < 100; ++trial) {
    const VecN x = testing::random_vec(rng, 3);
    const VecN y = testing::random_vec(rng, 3);
    const auto cross = testing::cross3(x, y);
    const auto comps = genfreq::wedge(x, y).components_xy_yz_zx();
    REQUIRE(comps[0] == cross[2]);
    REQUIRE(comps[1] == cross[0]);
    REQUIRE(comps[2] == cross[1]);

    double cross_norm = 0.0;
    for (double c : cross) cross_norm += c * c;
    REQUIRE_THAT(genfreq::wedge(x, y).magnitude(),
                 Catch::Matchers::WithinRel(std::sqrt(cross_norm), 1e-14) ||
                     Catch::Matchers::WithinAbs(0.0, 1e-14));
  }
}

TEST_CASE("geometric product splits into inner and wedge parts") {
  auto rng = testing::make_rng(606);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dim = 2 + trial % 5;
    const VecN x = testing::random_vec(rng, dim);
    const VecN y = testing::random_vec(rng, dim);
    const genfreq::Multivector m = genfreq::geometric_product(x, y);
    REQUIRE(m.scalar == genfreq::inner(x, y));
    const genfreq::Bivector w = genfreq::wedge(x, y);
    const auto mc = m.bivector.coefficients();
    const auto wc = w.coefficients();
    for (std::size_t k = 0; k < mc.size(); ++k) REQUIRE(mc[k] == wc[k]);
  }
}

TEST_CASE("plane basis bivector behaves like the imaginary unit") {
  const VecN e1{1.0, 0.0};
  const VecN e2{0.0, 1.0};
  const genfreq::Multivector m = genfreq::geometric_product(e1, e2);
  REQUIRE(m.scalar == 0.0);
  REQUIRE(m.bivector.coeff(0, 1) == 1.0);
  REQUIRE(genfreq::geometric_product(e2, e1).bivector.coeff(0, 1) == -1.0);
  REQUIRE(genfreq::geometric_product(e1, e1).scalar == 1.0);
  REQUIRE(genfreq::geometric_product(e1, e1).bivector.magnitude() == 0.0);
}

TEST_CASE("bivector coefficient indexing is signed and skew") {
  Bivector b(4);
  REQUIRE(b.n_coefficients() == 6);
  b.set_coeff(0, 2, 5.0);
  REQUIRE(b.coeff(0, 2) == 5.0);
  REQUIRE(b.coeff(2, 0) == -5.0);
  REQUIRE(b.coeff(1, 1) == 0.0);
  b.set_coeff(3, 1, 2.0);
  REQUIRE(b.coeff(1, 3) == -2.0);
  REQUIRE_THROWS_AS(b.set_coeff(2, 2, 1.0), genfreq::InvalidParameter);
  REQUIRE_THROWS_AS(b.coeff(0, 4), genfreq::DimensionMismatch);

  const Matrix m = b.to_matrix();
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      REQUIRE(m(i, j) == -m(j, i));
      REQUIRE(m(i, j) == b.coeff(i, j));
    }
  }
}

TEST_CASE("bivector magnitude is the root of the coefficient square sum") {
  Bivector b(3);
  b.set_coeff(0, 1, 3.0);
  b.set_coeff(0, 2, 4.0);
  REQUIRE(b.magnitude() == 5.0);
  REQUIRE(genfreq::bivector_magnitude(b) == 5.0);
}

TEST_CASE("orthogonality check accepts rotations and rejects everything else") {
  REQUIRE(genfreq::is_orthogonal(Matrix::identity(4)));

  auto rng = testing::make_rng(707);
  for (std::size_t dim = 2; dim <= 6; ++dim) {
    REQUIRE(genfreq::is_orthogonal(testing::random_orthogonal(rng, dim)));
  }

  Matrix scaled = Matrix::identity(3);
  scaled(1, 1) = 2.0;
  REQUIRE_FALSE(genfreq::is_orthogonal(scaled));

  Matrix perturbed = Matrix::identity(3);
  perturbed(0, 1) = 1e-6;
  REQUIRE_FALSE(genfreq::is_orthogonal(perturbed));
  REQUIRE(genfreq::is_orthogonal(perturbed, 1e-5));

  REQUIRE_FALSE(genfreq::is_orthogonal(Matrix(2, 3)));
}

TEST_CASE("orthogonal maps preserve inner products and wedge magnitudes") {
  auto rng = testing::make_rng(808);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = 2 + trial % 5;
    const Matrix q = testing::random_orthogonal(rng, dim);
    const VecN x = testing::random_vec(rng, dim);
    const VecN y = testing::random_vec(rng, dim);
    const VecN qx = genfreq::apply_orthogonal(x, q);
    const VecN qy = genfreq::apply_orthogonal(y, q);

    const double scale = genfreq::magnitude(x) * genfreq::magnitude(y);
    REQUIRE(std::abs(genfreq::inner(qx, qy) - genfreq::inner(x, y)) <= 1e-12 * scale);
    REQUIRE(std::abs(genfreq::wedge(qx, qy).magnitude() -
                     genfreq::wedge(x, y).magnitude()) <= 1e-12 * scale);
  }
}

TEST_CASE("orthogonal application rejects bad inputs") {
  Matrix shear = Matrix::identity(2);
  shear(0, 1) = 0.5;
  REQUIRE_THROWS_AS(genfreq::apply_orthogonal(VecN{1.0, 2.0}, shear),
                    genfreq::InvalidParameter);
  REQUIRE_THROWS_AS(genfreq::apply_orthogonal(VecN{1.0, 2.0, 3.0}, Matrix::identity(2)),
                    genfreq::DimensionMismatch);
}

TEST_CASE("vector construction and arithmetic validate their inputs") {
  REQUIRE_THROWS_AS(VecN(std::vector<double>{}), genfreq::InvalidParameter);
  REQUIRE_THROWS_AS(VecN({1.0, std::nan("")}), genfreq::InvalidParameter);
  REQUIRE_THROWS_AS(VecN({std::numeric_limits<double>::infinity()}),
                    genfreq::InvalidParameter);

  const VecN x{1.0, 2.0};
  const VecN y{1.0, 2.0, 3.0};
  REQUIRE_THROWS_AS(x + y, genfreq::DimensionMismatch);
  REQUIRE_THROWS_AS(genfreq::inner(x, y), genfreq::DimensionMismatch);
  REQUIRE_THROWS_AS(genfreq::outer(x, y), genfreq::DimensionMismatch);
  REQUIRE_THROWS_AS(genfreq::wedge(x, y), genfreq::DimensionMismatch);
  REQUIRE_THROWS_AS(genfreq::geometric_product(x, y), genfreq::DimensionMismatch);
}

TEST_CASE("vector arithmetic is componentwise") {
  const VecN x{1.0, 2.0};
  const VecN y{10.0, 20.0};
  const VecN sum = x + y;
  REQUIRE(sum[0] == 11.0);
  REQUIRE(sum[1] == 22.0);
  const VecN diff = y - x;
  REQUIRE(diff[0] == 9.0);
  REQUIRE(diff[1] == 18.0);
  const VecN scaled = 2.0 * x;
  REQUIRE(scaled[0] == 2.0);
  REQUIRE(scaled[1] == 4.0);
  const VecN halved = y / 2.0;
  REQUIRE(halved[0] == 5.0);
  REQUIRE(halved[1] == 10.0);
  const VecN neg = -x;
  REQUIRE(neg[0] == -1.0);
  REQUIRE(neg[1] == -2.0);
}
