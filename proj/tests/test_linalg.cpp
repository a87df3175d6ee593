#include <doctest.h>

#include <set>

#include "lca/gf.hpp"
#include "support.hpp"

using namespace lca;

namespace {

// Every vector of GF(p)^n, for brute-force comparisons on tiny sizes.
std::vector<Vec> all_vectors(const Field& f, std::size_t n) {
  std::vector<Vec> out{Vec(n, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Vec> next;
    for (const auto& v : out)
      for (Scalar s = 0; s < f.modulus(); ++s) {
        auto w = v;
        w[i] = s;
        next.push_back(std::move(w));
      }
    out = std::move(next);
  }
  return out;
}

std::size_t count_pow(std::size_t p, long d) {
  std::size_t r = 1;
  for (long i = 0; i < d; ++i) r *= p;
  return r;
}

}  // namespace

TEST_CASE("field arithmetic") {
  const Field f(7);
  CHECK(f.mul(3, 5) == 1);
  CHECK(f.inv(3) == 5);
  CHECK(f.reduce(-1) == 6);
  CHECK(f.neg(0) == 0);
  CHECK_THROWS(Field(9));
  CHECK_THROWS(Field(1));
  const Field big(2147483647u);
  CHECK(big.mul(big.inv(123456789), 123456789) == 1);
  for (Scalar a = 1; a < 7; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
}

TEST_CASE("rref, rank and kernels agree with enumeration") {
  std::mt19937_64 rng(7);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const Field f(p);
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
      const Matrix m = lca::testing::random_matrix(rng, f, rows, cols);
      const auto k = kernel_basis(f, m);
      std::size_t brute = 0;
      for (const auto& v : all_vectors(f, cols)) {
        const bool in_kernel = is_zero(multiply(f, m, v));
        brute += in_kernel;
        CHECK(k.contains(f, v) == in_kernel);
      }
      CHECK(brute == count_pow(p, static_cast<long>(k.dim())));
      CHECK(rank(f, m) + k.dim() == cols);

      std::set<Vec> img;
      for (const auto& v : all_vectors(f, cols)) img.insert(multiply(f, m, v));
      CHECK(img.size() == count_pow(p, static_cast<long>(image(f, m).dim())));

      const auto rr = rref(f, m);
      for (std::size_t i = 0; i < rr.rank; ++i) {
        CHECK(rr.reduced(i, rr.pivots[i]) == 1);
        for (std::size_t j = 0; j < rows; ++j)
          if (j != i) CHECK(rr.reduced(j, rr.pivots[i]) == 0);
      }
    }
  }
}

TEST_CASE("affine solutions agree with enumeration") {
  std::mt19937_64 rng(11);
  for (std::uint32_t p : {2u, 3u}) {
    const Field f(p);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
      const Matrix m = lca::testing::random_matrix(rng, f, rows, cols);
      const Vec b = lca::testing::random_vec(rng, f, rows);
      const auto sol = solve_affine(f, m, b);
      std::size_t brute = 0;
      for (const auto& v : all_vectors(f, cols)) {
        const bool ok = multiply(f, m, v) == b;
        brute += ok;
        CHECK(sol.contains(f, v) == ok);
      }
      if (brute == 0)
        CHECK(sol.is_empty());
      else
        CHECK(brute == count_pow(p, sol.dim()));
    }
  }
}

TEST_CASE("affine subspaces have canonical forms") {
  const Field f(3);
  const auto dirs = Subspace::span(f, {Vec{1, 1, 0}}, 3);
  const auto a = AffineSubspace::make(f, Vec{2, 0, 1}, dirs);
  const auto b = AffineSubspace::make(f, Vec{0, 1, 1}, dirs);  // same coset
  CHECK(a == b);
  CHECK(a.contains(f, Vec{1, 2, 1}));
  CHECK_FALSE(a.contains(f, Vec{0, 0, 1}));
  CHECK(AffineSubspace::empty(3).dim() == -1);
  CHECK(AffineSubspace::single(Vec{1, 2, 0}).dim() == 0);
}

TEST_CASE("images and restrictions of affine sets") {
  const Field f(2);
  const Matrix proj = Matrix::from_rows({Vec{1, 0, 0}, Vec{0, 1, 0}}, 3);
  const auto full = AffineSubspace::make(f, Vec{0, 0, 0}, Subspace::full(3));
  const Matrix sum = Matrix::from_rows({Vec{1, 1, 1}}, 3);
  const auto fiber = restrict_affine(f, full, sum, Vec{1});
  CHECK(fiber.dim() == 2);
  CHECK(fiber.contains(f, Vec{1, 0, 0}));
  CHECK_FALSE(fiber.contains(f, Vec{1, 1, 0}));
  CHECK(image_of_affine(f, proj, fiber).dim() == 2);
  const auto none = restrict_affine(f, fiber, sum, Vec{0});
  CHECK(none.is_empty());
  CHECK(image_of_affine(f, proj, none).is_empty());
}

TEST_CASE("dimension mismatches are reported") {
  const Field f(2);
  CHECK_THROWS_AS(multiply(f, Matrix(2, 3), Matrix(2, 3)), DimensionMismatch);
  CHECK_THROWS_AS(multiply(f, Matrix(2, 3), Vec{1, 0}), DimensionMismatch);
}

TEST_CASE("characteristic two elimination matches the generic path") {
  // GF(2) takes a word-parallel route; compare against rank over GF(2)
  // computed by explicit Gaussian elimination on bool rows.
  std::mt19937_64 rng(3);
  const Field f(2);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t rows = 1 + rng() % 70, cols = 1 + rng() % 70;
    const Matrix m = lca::testing::random_matrix(rng, f, rows, cols);
    std::vector<std::vector<bool>> b(rows, std::vector<bool>(cols));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) b[i][j] = m(i, j) != 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
      std::size_t piv = r;
      while (piv < rows && !b[piv][c]) ++piv;
      if (piv == rows) continue;
      std::swap(b[piv], b[r]);
      for (std::size_t i = 0; i < rows; ++i)
        if (i != r && b[i][c])
          for (std::size_t j = 0; j < cols; ++j) b[i][j] = b[i][j] != b[r][j];
      ++r;
    }
    CHECK(rank(f, m) == r);
  }
}
