#include <doctest.h>

#include "lca/ca.hpp"
#include "support.hpp"

using namespace lca;
using lca::testing::z;

namespace {

LinearCA random_ca(std::mt19937_64& rng, const Group& g, const Field& f, std::size_t dim_v) {
  auto pool = g.ball(1);
  LocalRule r;
  for (const auto& m : pool) {
    if (rng() % 3 == 0) continue;
    r.memory.push_back(m);
    r.blocks.push_back(lca::testing::random_matrix(rng, f, dim_v, dim_v));
  }
  return LinearCA(g, f, dim_v, std::move(r));
}

Configuration random_finite(std::mt19937_64& rng, const Group& g, const Field& f, std::size_t dim_v) {
  std::map<GroupElement, Vec> cells;
  const auto ball = g.ball(2);
  for (int k = 0; k < 4; ++k) cells[ball[rng() % ball.size()]] = lca::testing::random_vec(rng, f, dim_v);
  return Configuration::finite(dim_v, std::move(cells));
}

std::vector<Group> sample_groups() {
  return {Group::integers(), Group::lattice(2), Group::free(2), Group::finite(lca::testing::s3_table(), 0)};
}

}  // namespace

TEST_CASE("normalized rules") {
  const Field f(3);
  const Matrix one = Matrix::identity(1);
  const LinearCA a(Group::integers(), f, 1, LocalRule{{z(1), z(1), z(2)}, {one, scale(f, 2, one), one}});
  REQUIRE(a.memory().size() == 2);
  CHECK(a.memory()[0] == z(0));
  CHECK(a.block(0).is_zero());
  CHECK(a.memory()[1] == z(2));
  CHECK(equals_identity(LinearCA::identity(Group::integers(), f, 2)));
  CHECK_FALSE(equals_identity(LinearCA::shift(Group::integers(), f, 1, z(1))));
  CHECK_THROWS(LinearCA(Group::integers(), f, 2, LocalRule{{z(0)}, {one}}));
  CHECK_THROWS(LinearCA(Group::integers(), f, 1, LocalRule{{GroupElement({0, 0})}, {one}}));
}

TEST_CASE("shift moves the delta one step left") {
  const Field f(2);
  const auto s = LinearCA::shift(Group::integers(), f, 1, z(1));
  const auto d0 = Configuration::finite(1, {{z(0), Vec{1}}});
  CHECK(apply_config(s, d0) == Configuration::finite(1, {{z(-1), Vec{1}}}));
  const auto id = LinearCA::identity(Group::integers(), f, 1);
  CHECK(apply_config(id, d0) == d0);
}

TEST_CASE("global evaluation matches the defining sum") {
  std::mt19937_64 rng(5);
  for (const auto& g : sample_groups()) {
    for (std::uint32_t p : {2u, 3u}) {
      const Field f(p);
      for (int trial = 0; trial < 10; ++trial) {
        const std::size_t dim_v = 1 + rng() % 2;
        const auto ca = random_ca(rng, g, f, dim_v);
        const auto x = random_finite(rng, g, f, dim_v);
        const auto y = apply_config(ca, x);
        auto xv = [&](const GroupElement& h) { return x.value_at(h); };
        const auto probe = g.is_finite() ? g.elements() : g.ball(4);
        for (const auto& h : probe) CHECK(y.value_at(h) == lca::testing::evaluate_at(ca, xv, h));
      }
    }
  }
}

TEST_CASE("periodic and constant configurations") {
  std::mt19937_64 rng(9);
  const Field f(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto ca = lca::testing::random_z_ca(rng, f, 2, {-1, 0, 1, 2});
    std::vector<Vec> values;
    for (std::size_t k = 0; k < 1 + rng() % 4; ++k) values.push_back(lca::testing::random_vec(rng, f, 2));
    const auto x = Configuration::periodic(2, values);
    const auto y = apply_config(ca, x);
    auto xv = [&](const GroupElement& h) { return x.value_at(h); };
    for (std::int64_t n = -12; n <= 12; ++n) CHECK(y.value_at(z(n)) == lca::testing::evaluate_at(ca, xv, z(n)));
  }
  const auto c = Configuration::constant(Vec{1, 2});
  CHECK(canonicalize(Group::integers(), f, Configuration::periodic(2, {Vec{1, 2}, Vec{1, 2}})) == c);
  CHECK(canonicalize(Group::integers(), f, Configuration::constant(Vec{0, 0})) == Configuration::zero(2));
  CHECK(same_configuration(Group::integers(), f, Configuration::periodic(1, {Vec{1}, Vec{2}, Vec{1}, Vec{2}}),
                           Configuration::periodic(1, {Vec{1}, Vec{2}})));
  CHECK_THROWS_AS(canonicalize(Group::lattice(2), f, Configuration::periodic(1, {Vec{1}, Vec{2}})), GroupMismatch);
  const auto g = Group::finite(lca::testing::cyclic_table(3), 0);
  CHECK(canonicalize(g, f, Configuration::constant(Vec{1})).is_finite_support());
}

TEST_CASE("composition is the composite map") {
  std::mt19937_64 rng(13);
  for (const auto& g : sample_groups()) {
    const Field f(2);
    for (int trial = 0; trial < 8; ++trial) {
      const auto a = random_ca(rng, g, f, 2);
      const auto b = random_ca(rng, g, f, 2);
      const auto x = random_finite(rng, g, f, 2);
      CHECK(same_configuration(g, f, apply_config(compose(a, b), x), apply_config(a, apply_config(b, x))));
    }
  }
  CHECK_THROWS_AS(compose(LinearCA::identity(Group::integers(), Field(2), 1),
                          LinearCA::identity(Group::integers(), Field(3), 1)),
                  GroupMismatch);
}

TEST_CASE("automata commute with the shift action") {
  std::mt19937_64 rng(17);
  for (const auto& g : sample_groups()) {
    const Field f(3);
    const auto ca = random_ca(rng, g, f, 1);
    std::vector<std::pair<GroupElement, Configuration>> samples;
    const auto ball = g.ball(2);
    for (int k = 0; k < 6; ++k) samples.emplace_back(ball[rng() % ball.size()], random_finite(rng, g, f, 1));
    CHECK(equivariance_check(ca, samples));
    // A pointwise map that is not equivariant is caught.
    auto bad = [&](const Configuration& x) {
      std::map<GroupElement, Vec> cells;
      if (!lca::is_zero(x.value_at(g.identity()))) cells[g.identity()] = x.value_at(g.identity());
      return Configuration::finite(1, cells);
    };
    samples.emplace_back(ball.back(), Configuration::finite(1, {{g.identity(), Vec{1}}}));
    CHECK_FALSE(equivariance_check(g, f, bad, samples));
  }
}

TEST_CASE("window maps agree with pattern evaluation") {
  std::mt19937_64 rng(21);
  for (const auto& g : sample_groups()) {
    const Field f(2);
    const auto ca = random_ca(rng, g, f, 2);
    for (std::size_t n = 0; n <= 1; ++n) {
      const auto w = window_map(ca, n);
      CHECK(w.source == windows(ca)(n));
      CHECK(w.target == interior(g, w.source, ca.memory()));
      const Vec v = lca::testing::random_vec(rng, f, w.source.size() * 2);
      const Pattern x = devectorize(w.source, v, 2);
      const Pattern y = apply_pattern(ca, x);
      CHECK(y.domain() == w.target);
      CHECK(vectorize(y, w.target, 2) == multiply(f, w.matrix, v));
    }
  }
}

TEST_CASE("global matrix on a finite group") {
  const Field f(2);
  const auto g = Group::finite(lca::testing::cyclic_table(3), 0);
  const auto ca = LinearCA(g, f, 1, LocalRule{{z(0), z(1)}, {Matrix::identity(1), Matrix::identity(1)}});
  const auto m = global_matrix(ca);
  REQUIRE(m.rows() == 3);
  // Row g reads cells g and g+1.
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) CHECK(m(r, c) == ((c == r || c == (r + 1) % 3) ? 1u : 0u));
}
