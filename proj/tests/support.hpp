#pragma once

#include <algorithm>
#include <array>
#include <random>
#include <vector>

#include "lca/ca.hpp"

namespace lca::testing {

inline std::vector<std::vector<std::int64_t>> cyclic_table(std::int64_t n) {
  std::vector<std::vector<std::int64_t>> t(n, std::vector<std::int64_t>(n));
  for (std::int64_t a = 0; a < n; ++a)
    for (std::int64_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return t;
}

// S3 as permutations of {0,1,2} in lexicographic order; id 0 is the identity.
inline std::vector<std::vector<std::int64_t>> s3_table() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  auto index = [&](const std::array<int, 3>& q) {
    return static_cast<std::int64_t>(std::find(perms.begin(), perms.end(), q) - perms.begin());
  };
  std::vector<std::vector<std::int64_t>> t(6, std::vector<std::int64_t>(6));
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      t[a][b] = index(c);
    }
  return t;
}

inline GroupElement z(std::int64_t n) { return GroupElement({n}); }

inline Matrix random_matrix(std::mt19937_64& rng, const Field& f, std::size_t rows, std::size_t cols) {
  std::uniform_int_distribution<Scalar> d(0, f.modulus() - 1);
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

inline Vec random_vec(std::mt19937_64& rng, const Field& f, std::size_t n) {
  std::uniform_int_distribution<Scalar> d(0, f.modulus() - 1);
  Vec v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

/// Random CA over Z with memory drawn from `pool`.
inline LinearCA random_z_ca(std::mt19937_64& rng, const Field& f, std::size_t dim_v,
                            const std::vector<std::int64_t>& pool) {
  LocalRule r;
  for (auto m : pool) {
    if (rng() % 4 == 0) continue;
    r.memory.push_back(z(m));
    r.blocks.push_back(random_matrix(rng, f, dim_v, dim_v));
  }
  return LinearCA(Group::integers(), f, dim_v, std::move(r));
}

/// Independent evaluation of tau(x)(g) = sum_m B_m x(g m) straight from the
/// definition, with x given as a function.
template <class X>
Vec evaluate_at(const LinearCA& ca, const X& x, const GroupElement& g) {
  const auto& f = ca.field();
  Vec acc(ca.dim_v(), 0);
  for (std::size_t i = 0; i < ca.memory().size(); ++i) {
    const Vec v = x(ca.group().multiply(g, ca.memory()[i]));
    const Matrix& b = ca.block(i);
    for (std::size_t r = 0; r < ca.dim_v(); ++r)
      for (std::size_t c = 0; c < ca.dim_v(); ++c) acc[r] = f.add(acc[r], f.mul(b(r, c), v[c]));
  }
  return acc;
}

}  // namespace lca::testing
