#include "lca/ml.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace lca {

struct ProjectiveAffineSequence::Cache {
  std::mutex mu;
  std::map<std::size_t, AffineSubspace> levels;
};

ProjectiveAffineSequence::ProjectiveAffineSequence(Field field, LevelFn level, BondingFn bonding)
    : field_(field), level_(std::move(level)), bonding_(std::move(bonding)), cache_(std::make_shared<Cache>()) {}

const AffineSubspace& ProjectiveAffineSequence::level(std::size_t n) const {
  std::lock_guard lock(cache_->mu);
  auto it = cache_->levels.find(n);
  if (it == cache_->levels.end()) it = cache_->levels.emplace(n, level_(n)).first;
  return it->second;
}

Matrix ProjectiveAffineSequence::bonding(std::size_t n, std::size_t m) const {
  if (m < n) throw std::invalid_argument("bonding map f_nm needs m >= n");
  return bonding_(n, m);
}

Matrix restriction_matrix(const std::vector<GroupElement>& small, const std::vector<GroupElement>& large,
                          std::size_t dim_v) {
  std::map<GroupElement, std::size_t> column;
  for (std::size_t i = 0; i < large.size(); ++i) column.emplace(large[i], i);
  Matrix r(small.size() * dim_v, large.size() * dim_v);
  for (std::size_t i = 0; i < small.size(); ++i) {
    auto it = column.find(small[i]);
    if (it == column.end()) throw std::invalid_argument("restriction: windows are not nested");
    for (std::size_t k = 0; k < dim_v; ++k) r(i * dim_v + k, it->second * dim_v + k) = 1;
  }
  return r;
}

namespace {

ProjectiveAffineSequence::BondingFn window_bonding(const LinearCA& ca) {
  return [w = windows(ca), d = ca.dim_v()](std::size_t n, std::size_t m) {
    return restriction_matrix(w(n), w(m), d);
  };
}

}  // namespace

ProjectiveAffineSequence kernel_sequence(const LinearCA& ca) {
  auto level = [ca](std::size_t n) {
    const auto w = window_map(ca, n);
    return AffineSubspace::make(ca.field(), Vec(w.matrix.cols(), 0), kernel_basis(ca.field(), w.matrix));
  };
  return ProjectiveAffineSequence(ca.field(), level, window_bonding(ca));
}

ProjectiveAffineSequence preimage_sequence(const LinearCA& ca, const Configuration& y) {
  if (y.dim_v() != ca.dim_v()) throw DimensionMismatch("target dimension differs from dimV");
  auto level = [ca, y](std::size_t n) {
    const auto w = window_map(ca, n);
    return solve_affine(ca.field(), w.matrix, vectorize(restrict_to(y, w.target), w.target, ca.dim_v()));
  };
  return ProjectiveAffineSequence(ca.field(), level, window_bonding(ca));
}

bool UniversalChain::non_increasing(const Field& f) const {
  for (std::size_t i = 0; i + 1 < images.size(); ++i)
    if (!images[i].contains(f, images[i + 1]) || images[i + 1].dim() > images[i].dim()) return false;
  return true;
}

const AffineSubspace& UniversalChain::stable() const {
  if (!plateau) throw std::logic_error("universal chain has no plateau");
  return images.at(*plateau - n);
}

UniversalChain universal_spaces(const ProjectiveAffineSequence& seq, std::size_t n, std::size_t cutoff,
                                std::size_t plateau_k) {
  if (cutoff < n) throw std::invalid_argument("universal_spaces: cutoff below n");
  if (plateau_k == 0) throw std::invalid_argument("universal_spaces: plateau_k must be positive");
  UniversalChain chain;
  chain.n = n;
  for (std::size_t m = n; m <= cutoff; ++m)
    chain.images.push_back(image_of_affine(seq.field(), seq.bonding(n, m), seq.level(m)));
  for (std::size_t i = 0; i + plateau_k <= chain.images.size(); ++i) {
    bool flat = true;
    for (std::size_t j = 1; j < plateau_k && flat; ++j) flat = chain.images[i + j] == chain.images[i];
    if (flat) {
      chain.plateau = n + i;
      break;
    }
  }
  return chain;
}

std::optional<LiftRecord> lift_element(const ProjectiveAffineSequence& seq, const UniversalChain& at_n,
                                       const UniversalChain& at_next, const Vec& x, std::size_t cutoff) {
  if (!at_n.plateau || !at_next.plateau || at_next.n != at_n.n + 1)
    throw std::invalid_argument("lift_element needs plateaus at consecutive levels");
  const auto& f = seq.field();
  const std::size_t n = at_n.n;
  for (std::size_t p = std::max(*at_n.plateau, *at_next.plateau); p <= cutoff; ++p) {
    const auto fiber = restrict_affine(f, seq.level(p), seq.bonding(n, p), x);
    if (fiber.is_empty()) continue;
    LiftRecord rec;
    rec.n = n;
    rec.witness_level = p;
    rec.from = x;
    rec.to = image_of_affine(f, seq.bonding(n + 1, p), fiber).point();
    rec.restricts_correctly = multiply(f, seq.bonding(n, n + 1), rec.to) == x;
    rec.in_stable_image = at_next.stable().contains(f, rec.to);
    return rec;
  }
  return std::nullopt;
}

ExtractionResult extract_limit_prefix(const ProjectiveAffineSequence& seq, std::size_t big_n, std::size_t cutoff,
                                      std::size_t plateau_k) {
  if (cutoff < big_n) return CutoffFailure{big_n, "cutoff below the requested level"};
  for (std::size_t m = 0; m <= cutoff; ++m)
    if (seq.level(m).is_empty()) return EmptyLevel{m};

  Extracted out;
  for (std::size_t n = 0; n <= big_n; ++n) {
    out.chains.push_back(universal_spaces(seq, n, cutoff, plateau_k));
    if (!out.chains.back().plateau) return CutoffFailure{n, "image chain did not reach a plateau"};
  }
  out.chain.push_back(out.chains[0].stable().point());
  for (std::size_t n = 0; n < big_n; ++n) {
    auto rec = lift_element(seq, out.chains[n], out.chains[n + 1], out.chain.back(), cutoff);
    if (!rec) return CutoffFailure{n, "no lift found within the cutoff"};
    out.chain.push_back(rec->to);
    out.lifts.push_back(std::move(*rec));
  }
  return out;
}

std::optional<LinearCA> solve_left_inverse(const LinearCA& ca, std::size_t n) {
  const auto& grp = ca.group();
  const auto& f = ca.field();
  const std::size_t d = ca.dim_v();
  const auto a = windows(ca)(n);

  std::vector<GroupElement> products;
  for (const auto& x : a)
    for (const auto& m : ca.memory()) products.push_back(grp.multiply(x, m));
  const auto k = canonical_set(std::move(products));
  std::map<GroupElement, std::size_t> k_index;
  for (std::size_t i = 0; i < k.size(); ++i) k_index.emplace(k[i], i);

  // Row r of the unknown rule, read block by block, solves
  //   sum_{a m = k} T_m^T nu_a[r]^T = [k == 1] e_r.
  Matrix system(d * k.size(), d * a.size());
  for (std::size_t ai = 0; ai < a.size(); ++ai) {
    for (std::size_t mi = 0; mi < ca.memory().size(); ++mi) {
      const std::size_t ki = k_index.at(grp.multiply(a[ai], ca.memory()[mi]));
      const Matrix& t = ca.block(mi);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c)
          system(ki * d + r, ai * d + c) = f.add(system(ki * d + r, ai * d + c), t(c, r));
    }
  }
  const std::size_t one = k_index.at(grp.identity());
  std::vector<Matrix> blocks(a.size(), Matrix(d, d));
  for (std::size_t r = 0; r < d; ++r) {
    Vec rhs(d * k.size(), 0);
    rhs[one * d + r] = 1;
    const auto sol = solve_affine(f, system, rhs);
    if (sol.is_empty()) return std::nullopt;
    for (std::size_t ai = 0; ai < a.size(); ++ai)
      for (std::size_t c = 0; c < d; ++c) blocks[ai](r, c) = sol.point()[ai * d + c];
  }
  return LinearCA(grp, f, d, LocalRule{a, std::move(blocks)});
}

std::optional<Configuration> finite_kernel_witness(const LinearCA& ca, const std::vector<GroupElement>& support_in) {
  const auto& grp = ca.group();
  const std::size_t d = ca.dim_v();
  const auto support = canonical_set(support_in);
  std::vector<GroupElement> reach;
  for (const auto& s : support)
    for (const auto& m : ca.memory()) reach.push_back(grp.multiply(s, grp.invert(m)));
  const auto targets = canonical_set(std::move(reach));
  std::map<GroupElement, std::size_t> column;
  for (std::size_t i = 0; i < support.size(); ++i) column.emplace(support[i], i);

  Matrix m(d * targets.size(), d * support.size());
  for (std::size_t ti = 0; ti < targets.size(); ++ti) {
    for (std::size_t mi = 0; mi < ca.memory().size(); ++mi) {
      auto it = column.find(grp.multiply(targets[ti], ca.memory()[mi]));
      if (it == column.end()) continue;
      const Matrix& b = ca.block(mi);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c)
          m(ti * d + r, it->second * d + c) = ca.field().add(m(ti * d + r, it->second * d + c), b(r, c));
    }
  }
  const auto ker = kernel_basis(ca.field(), m);
  if (ker.dim() == 0) return std::nullopt;
  return Configuration::finite(d, devectorize(support, ker.basis().row(0), d).cells);
}

std::optional<Configuration> periodic_kernel_witness(const LinearCA& ca, std::size_t period) {
  if (period == 0) return std::nullopt;
  const std::size_t d = ca.dim_v();
  if (ca.group().kind() != GroupKind::Integers) {
    // Constant configurations exist on every group: x = c is in the kernel
    // iff (sum of the blocks) c = 0.
    if (period != 1) return std::nullopt;
    Matrix sum(d, d);
    for (std::size_t i = 0; i < ca.memory().size(); ++i) sum = add(ca.field(), sum, ca.block(i));
    const auto ker = kernel_basis(ca.field(), sum);
    if (ker.dim() == 0) return std::nullopt;
    return canonicalize(ca.group(), ca.field(), Configuration::constant(ker.basis().row(0)));
  }
  const auto q = static_cast<std::int64_t>(period);
  Matrix m(d * period, d * period);
  for (std::int64_t i = 0; i < q; ++i) {
    for (std::size_t mi = 0; mi < ca.memory().size(); ++mi) {
      const auto j = static_cast<std::size_t>(((i + ca.memory()[mi].coords[0]) % q + q) % q);
      const Matrix& b = ca.block(mi);
      const auto row0 = static_cast<std::size_t>(i) * d;
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) m(row0 + r, j * d + c) = ca.field().add(m(row0 + r, j * d + c), b(r, c));
    }
  }
  const auto ker = kernel_basis(ca.field(), m);
  if (ker.dim() == 0) return std::nullopt;
  const Vec v = ker.basis().row(0);
  std::vector<Vec> values;
  for (std::size_t i = 0; i < period; ++i)
    values.emplace_back(v.begin() + static_cast<std::ptrdiff_t>(i * d), v.begin() + static_cast<std::ptrdiff_t>((i + 1) * d));
  return canonicalize(ca.group(), ca.field(), Configuration::periodic(d, std::move(values)));
}

std::optional<Configuration> kernel_witness(const LinearCA& ca, std::size_t support_bound, std::size_t period_bound) {
  for (std::size_t k = 1; k <= std::max(support_bound, period_bound); ++k) {
    if (k <= support_bound)
      if (auto w = finite_kernel_witness(ca, ca.group().ball(k - 1))) return w;
    if (k <= period_bound)
      if (auto w = periodic_kernel_witness(ca, k)) return w;
  }
  return std::nullopt;
}

namespace {

std::optional<WindowWitness> window_counterexample(const LinearCA& ca, std::size_t n) {
  const auto w = window_map(ca, n);
  const std::size_t rows = w.matrix.rows();
  const auto im = image(ca.field(), w.matrix);
  if (im.dim() == rows) return std::nullopt;
  for (std::size_t i = 0; i < rows; ++i) {
    Vec e(rows, 0);
    e[i] = 1;
    if (!im.contains(ca.field(), e)) return WindowWitness{n, devectorize(w.target, e, ca.dim_v())};
  }
  return std::nullopt;
}

}  // namespace

std::optional<WindowWitness> surjectivity_counterexample(const LinearCA& ca, std::size_t max_radius) {
  for (std::size_t n = 0; n <= max_radius; ++n)
    if (auto w = window_counterexample(ca, n)) return w;
  return std::nullopt;
}

bool window_fiber_nonempty(const LinearCA& ca, std::size_t n, const Pattern& target) {
  const auto w = window_map(ca, n);
  const Vec b = vectorize(target, w.target, ca.dim_v());
  Matrix aug(w.matrix.rows(), w.matrix.cols() + 1);
  for (std::size_t i = 0; i < w.matrix.rows(); ++i) {
    for (std::size_t j = 0; j < w.matrix.cols(); ++j) aug(i, j) = w.matrix(i, j);
    aug(i, w.matrix.cols()) = b[i] % ca.field().modulus();
  }
  return rank(ca.field(), w.matrix) == rank(ca.field(), aug);
}

InvertResult invert_ca(const LinearCA& ca, std::size_t max_radius) {
  for (std::size_t n = 0; n <= max_radius; ++n) {
    if (auto nu = solve_left_inverse(ca, n)) {
      const auto left = compose(*nu, ca);
      const auto right = compose(ca, *nu);
      if (equals_identity(left) && equals_identity(right))
        return ReversibilityCertificate{nu->rule(), left.rule(), right.rule(), n};
      if (equals_identity(left)) return NotInvertible{LeftInverseWitness{nu->rule()}};
    }
    if (auto w = finite_kernel_witness(ca, windows(ca)(n))) return NotInvertible{KernelWitness{*w}};
    if (auto w = periodic_kernel_witness(ca, n + 1)) return NotInvertible{KernelWitness{*w}};
    if (auto w = window_counterexample(ca, n)) return NotInvertible{*w};
  }
  return Unknown{max_radius, "no inverse or witness found up to the maximal radius"};
}

PreimageResult preimage_extract(const LinearCA& ca, const Configuration& y, std::size_t big_n, std::size_t cutoff,
                                std::size_t plateau_k) {
  const auto seq = preimage_sequence(ca, y);
  auto res = extract_limit_prefix(seq, big_n, cutoff, plateau_k);
  if (auto* ex = std::get_if<Extracted>(&res)) {
    Pattern x = devectorize(windows(ca)(big_n), ex->chain.back(), ca.dim_v());
    return Preimage{std::move(x), std::move(*ex)};
  }
  if (const auto* empty = std::get_if<EmptyLevel>(&res))
    return NotInImage{empty->level, restrict_to(y, window_map(ca, empty->level).target)};
  const auto& fail = std::get<CutoffFailure>(res);
  return Unknown{fail.n, fail.reason};
}

}  // namespace lca
