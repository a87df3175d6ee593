#include "lca/counterexamples.hpp"

#include <stdexcept>

namespace lca::sigma {

std::uint64_t block_of(std::uint64_t i) {
  if (i == 0) throw std::invalid_argument("basis indices start at 1");
  std::uint64_t j = 1;
  while (block_end(j) < i) ++j;
  return j;
}

SparseVector SparseVector::basis(std::uint64_t i) {
  if (i == 0) throw std::invalid_argument("basis indices start at 1");
  SparseVector v;
  v.coords_[i] = 1;
  return v;
}

Scalar SparseVector::coeff(std::uint64_t i) const {
  auto it = coords_.find(i);
  return it == coords_.end() ? 0 : it->second;
}

void SparseVector::add_term(const Field& f, std::uint64_t i, Scalar c) {
  if (i == 0) throw std::invalid_argument("basis indices start at 1");
  const Scalar s = f.add(coeff(i), c % f.modulus());
  if (s == 0)
    coords_.erase(i);
  else
    coords_[i] = s;
}

SparseVector add(const Field& f, const SparseVector& a, const SparseVector& b) {
  SparseVector out = a;
  for (const auto& [i, c] : b.coords()) out.add_term(f, i, c);
  return out;
}

SparseVector sub(const Field& f, const SparseVector& a, const SparseVector& b) {
  SparseVector out = a;
  for (const auto& [i, c] : b.coords()) out.add_term(f, i, f.neg(c));
  return out;
}

SparseVector phi(const Field& f, const SparseVector& v) {
  SparseVector out;
  for (const auto& [i, c] : v.coords())
    if (i != block_start(block_of(i))) out.add_term(f, i - 1, c);
  return out;
}

SparseVector psi(const Field& f, const SparseVector& v) {
  SparseVector out;
  for (const auto& [i, c] : v.coords()) out.add_term(f, i + 1, c);
  return out;
}

LazySparseConfig::LazySparseConfig(std::map<std::int64_t, SparseVector> cells, std::optional<Tail> tail)
    : tail_(std::move(tail)) {
  for (auto& [n, v] : cells) {
    if (v.is_zero()) continue;
    if (tail_ && n >= tail_->start) throw std::invalid_argument("explicit cell overlaps the tail");
    cells_.emplace(n, std::move(v));
  }
  if (tail_ && tail_->kind == Tail::Kind::Constant && tail_->value.is_zero()) tail_.reset();
}

SparseVector LazySparseConfig::value_at(const Field& f, std::int64_t n) const {
  if (tail_ && n >= tail_->start) {
    if (tail_->kind == Tail::Kind::Constant) return tail_->value;
    SparseVector v;
    const auto top = static_cast<std::uint64_t>(n - tail_->start + 1);
    for (std::uint64_t i = 1; i <= top; ++i) v.add_term(f, i, 1);
    return v;
  }
  auto it = cells_.find(n);
  return it == cells_.end() ? SparseVector{} : it->second;
}

namespace {

void require_no_tail(const LazySparseConfig& x) {
  if (x.tail()) throw std::invalid_argument("sigma needs a configuration without tail");
}

void accumulate(const Field& f, std::map<std::int64_t, SparseVector>& out, std::int64_t n, const SparseVector& v) {
  out[n] = add(f, out[n], v);
}

}  // namespace

LazySparseConfig sigma_apply(const Field& f, const LazySparseConfig& x) {
  require_no_tail(x);
  std::map<std::int64_t, SparseVector> out;
  for (const auto& [n, v] : x.cells()) {
    accumulate(f, out, n, v);
    accumulate(f, out, n - 1, sub(f, SparseVector{}, phi(f, v)));
  }
  return LazySparseConfig(std::move(out));
}

LazySparseConfig sigma_inverse_apply(const Field& f, const LazySparseConfig& x) {
  require_no_tail(x);
  std::map<std::int64_t, SparseVector> out;
  // The term phi^k(x(n + k)) of cell n comes from cell c = n + k.
  for (const auto& [c, v] : x.cells()) {
    for (const auto& [i, a] : v.coords()) {
      const std::uint64_t start = block_start(block_of(i));
      for (std::uint64_t k = 0; i - k >= start; ++k) {
        SparseVector term;
        term.add_term(f, i - k, a);
        accumulate(f, out, c - static_cast<std::int64_t>(k), term);
      }
    }
  }
  return LazySparseConfig(std::move(out));
}

LazySparseConfig sigma_prime_apply(const Field& f, const LazySparseConfig& x) {
  auto at = [&](std::int64_t n) { return sub(f, x.value_at(f, n + 1), psi(f, x.value_at(f, n))); };
  std::map<std::int64_t, SparseVector> out;
  if (!x.tail()) {
    for (const auto& [n, v] : x.cells()) {
      out.emplace(n - 1, at(n - 1));
      out.emplace(n, at(n));
    }
    return LazySparseConfig(std::move(out));
  }
  const std::int64_t start = x.tail()->start;
  std::int64_t lo = start - 1;
  if (!x.cells().empty()) lo = std::min(lo, x.cells().begin()->first - 1);
  for (std::int64_t n = lo; n < start; ++n) out.emplace(n, at(n));
  // Beyond the tail start the image is constant: v_1 for partial sums,
  // c - psi(c) for a constant tail c.
  Tail image{start, Tail::Kind::Constant, {}};
  if (x.tail()->kind == Tail::Kind::PartialSums)
    image.value = SparseVector::basis(1);
  else
    image.value = sub(f, x.tail()->value, psi(f, x.tail()->value));
  return LazySparseConfig(std::move(out), image);
}

bool NonReversibilityWitness::holds() const {
  return agree_left && y_inverse_at_0.is_zero() && z_inverse_at_0 == SparseVector::basis(expected_index) &&
         y_inverse_at_0 != z_inverse_at_0;
}

NonReversibilityWitness sigma_nonreversibility_witness(const Field& f, std::uint64_t j0, std::int64_t window_radius) {
  if (j0 < 2) throw std::invalid_argument("j0 must be at least 2");
  const auto cell = static_cast<std::int64_t>(j0) - 1;
  if (window_radius < static_cast<std::int64_t>(j0)) throw std::invalid_argument("window radius must be at least j0");
  NonReversibilityWitness w;
  w.j0 = j0;
  w.window_radius = window_radius;
  w.y = LazySparseConfig();
  w.z = LazySparseConfig({{cell, SparseVector::basis(block_end(j0))}});
  w.agree_left = true;
  for (std::int64_t n = -window_radius; n <= cell - 1; ++n)
    if (w.y.value_at(f, n) != w.z.value_at(f, n)) w.agree_left = false;
  w.y_inverse_at_0 = sigma_inverse_apply(f, w.y).value_at(f, 0);
  w.z_inverse_at_0 = sigma_inverse_apply(f, w.z).value_at(f, 0);
  w.expected_index = block_start(j0);
  const LazySparseConfig previous({{cell, SparseVector::basis(block_end(j0 - 1))}});
  w.previous_block_variant_at_0 = sigma_inverse_apply(f, previous).value_at(f, 0);
  return w;
}

LazySparseConfig partial_sums_config(std::int64_t n0) {
  return LazySparseConfig({}, Tail{n0, Tail::Kind::PartialSums, {}});
}

std::pair<LazySparseConfig, ClosureReport> sigma_prime_closure_witness(const Field& f, std::int64_t m) {
  if (m < 0) throw std::invalid_argument("window radius must be nonnegative");
  ClosureReport r;
  r.m = m;
  r.start = -m;
  auto x = partial_sums_config(r.start);
  const auto image = sigma_prime_apply(f, x);
  const auto v1 = SparseVector::basis(1);
  r.all_match = true;
  r.symbolic_match = true;
  for (std::int64_t n = -m; n <= m; ++n) {
    const auto pointwise = sub(f, x.value_at(f, n + 1), psi(f, x.value_at(f, n)));
    r.all_match = r.all_match && pointwise == v1;
    r.symbolic_match = r.symbolic_match && image.value_at(f, n) == v1;
    ++r.cells_checked;
  }
  r.zero_before_start = x.value_at(f, r.start - 1).is_zero();
  return {std::move(x), r};
}

ForcedSupportReport sigma_prime_forced_support(const Field& f, std::uint64_t depth) {
  if (depth == 0) throw std::invalid_argument("depth must be at least 1");
  ForcedSupportReport r;
  r.depth = depth;
  r.truncation = depth + 1;
  const std::size_t t = r.truncation;
  const std::size_t cells = depth + 1;
  auto col = [t](std::size_t n, std::size_t k) { return n * t + (k - 1); };

  // x(n+1)_k - x(n)_{k-1} = [k == 1] for n < depth; this is the projection
  // of sigma'(x) = v_1 onto coordinates 1..t.
  Matrix m(depth * t, cells * t);
  Vec rhs(depth * t, 0);
  for (std::size_t n = 0; n < depth; ++n) {
    for (std::size_t k = 1; k <= t; ++k) {
      const std::size_t row = n * t + (k - 1);
      m(row, col(n + 1, k)) = 1;
      if (k >= 2) m(row, col(n, k - 1)) = f.neg(1);
      if (k == 1) rhs[row] = 1;
    }
  }
  const auto sol = solve_affine(f, m, rhs);
  r.solvable = !sol.is_empty();
  if (!r.solvable) return r;
  const Matrix& dirs = sol.directions().basis();
  for (std::size_t k = 1; k <= t; ++k) {
    const std::size_t c = col(depth, k);
    bool forced = true;
    for (std::size_t i = 0; i < dirs.rows() && forced; ++i) forced = dirs(i, c) == 0;
    if (!forced) continue;
    const Scalar value = sol.point()[c];
    r.forced.emplace_back(k, value);
    if (value == 1) ++r.forced_units;
    if (value != 0) ++r.min_support;
  }
  for (std::size_t n = 0; n < cells; ++n) {
    SparseVector v;
    for (std::size_t k = 1; k <= t; ++k) v.add_term(f, k, sol.point()[col(n, k)]);
    r.particular.push_back(std::move(v));
  }
  return r;
}

Matrix phi_matrix(const Field& f, std::uint64_t big_j) {
  (void)f;
  const std::size_t dim = block_end(big_j);
  Matrix m(dim, dim);
  // Column i-1 holds phi(v_i).
  for (std::uint64_t i = 1; i <= dim; ++i)
    if (i != block_start(block_of(i))) m(i - 2, i - 1) = 1;
  return m;
}

LinearCA truncated_sigma(const Field& f, std::uint64_t big_j) {
  const std::size_t dim = block_end(big_j);
  const Matrix minus_phi = scale(f, f.neg(1), phi_matrix(f, big_j));
  return LinearCA(Group::integers(), f, dim,
                  LocalRule{{GroupElement({0}), GroupElement({1})}, {Matrix::identity(dim), minus_phi}});
}

LinearCA truncated_sigma_inverse(const Field& f, std::uint64_t big_j) {
  const std::size_t dim = block_end(big_j);
  const Matrix phi_m = phi_matrix(f, big_j);
  LocalRule rule;
  Matrix power = Matrix::identity(dim);
  for (std::uint64_t k = 0; k < big_j; ++k) {
    rule.memory.emplace_back(std::vector<std::int64_t>{static_cast<std::int64_t>(k)});
    rule.blocks.push_back(power);
    power = multiply(f, power, phi_m);
  }
  return LinearCA(Group::integers(), f, dim, std::move(rule));
}

}  // namespace lca::sigma
