#include "lca/ca.hpp"

#include <algorithm>
#include <numeric>

namespace lca {

namespace {

void check_block(const Matrix& b, std::size_t dim_v) {
  if (b.rows() != dim_v || b.cols() != dim_v)
    throw DimensionMismatch("rule block must be dimV x dimV");
}

// x += B*v
void accumulate(const Field& f, Vec& x, const Matrix& b, const Vec& v) {
  const Vec bv = multiply(f, b, v);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = f.add(x[i], bv[i]);
}

std::int64_t mod(std::int64_t a, std::int64_t q) {
  const auto r = a % q;
  return r < 0 ? r + q : r;
}

void require_integers(const Group& g) {
  if (g.kind() != GroupKind::Integers)
    throw GroupMismatch("periodic configurations are only supported over the integers");
}

}  // namespace

LocalRule normalize_rule(const Group& g, const Field& f, std::size_t dim_v, LocalRule rule) {
  if (rule.memory.size() != rule.blocks.size())
    throw std::invalid_argument("rule needs exactly one block per memory element");
  std::map<GroupElement, Matrix> merged;
  for (std::size_t i = 0; i < rule.memory.size(); ++i) {
    g.check(rule.memory[i]);
    check_block(rule.blocks[i], dim_v);
    Matrix b = reduce(f, rule.blocks[i]);
    auto [it, inserted] = merged.try_emplace(rule.memory[i], b);
    if (!inserted) it->second = add(f, it->second, b);
  }
  const GroupElement one = g.identity();
  merged.try_emplace(one, Matrix(dim_v, dim_v));
  LocalRule out;
  for (auto& [m, b] : merged) {
    if (m != one && b.is_zero()) continue;
    out.memory.push_back(m);
    out.blocks.push_back(std::move(b));
  }
  return out;
}

LinearCA::LinearCA(Group group, Field field, std::size_t dim_v, LocalRule rule)
    : group_(std::move(group)), field_(field), dim_v_(dim_v), rule_() {
  rule_ = normalize_rule(group_, field_, dim_v_, std::move(rule));
}

LinearCA LinearCA::identity(Group group, Field field, std::size_t dim_v) {
  auto one = group.identity();
  return LinearCA(std::move(group), field, dim_v, LocalRule{{one}, {Matrix::identity(dim_v)}});
}

LinearCA LinearCA::shift(Group group, Field field, std::size_t dim_v, const GroupElement& s) {
  return LinearCA(std::move(group), field, dim_v, LocalRule{{s}, {Matrix::identity(dim_v)}});
}

std::vector<GroupElement> Pattern::domain() const {
  std::vector<GroupElement> d;
  d.reserve(cells.size());
  for (const auto& [g, v] : cells) d.push_back(g);
  return d;
}

Configuration Configuration::zero(std::size_t dim_v) { return {dim_v, FiniteSupport{}}; }

Configuration Configuration::finite(std::size_t dim_v, std::map<GroupElement, Vec> cells) {
  for (auto it = cells.begin(); it != cells.end();) {
    if (it->second.size() != dim_v) throw DimensionMismatch("configuration value has wrong dimension");
    it = lca::is_zero(it->second) ? cells.erase(it) : std::next(it);
  }
  return {dim_v, FiniteSupport{std::move(cells)}};
}

Configuration Configuration::periodic(std::size_t dim_v, std::vector<Vec> values) {
  if (values.empty()) throw std::invalid_argument("period must be at least 1");
  for (const auto& v : values)
    if (v.size() != dim_v) throw DimensionMismatch("configuration value has wrong dimension");
  return {dim_v, Periodic{std::move(values)}};
}

Configuration Configuration::constant(Vec value) {
  const auto d = value.size();
  return {d, Constant{std::move(value)}};
}

Vec Configuration::value_at(const GroupElement& g) const {
  return std::visit(
      [&](const auto& d) -> Vec {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, FiniteSupport>) {
          auto it = d.cells.find(g);
          return it == d.cells.end() ? Vec(dim_v_, 0) : it->second;
        } else if constexpr (std::is_same_v<T, Periodic>) {
          const auto q = static_cast<std::int64_t>(d.values.size());
          return d.values[static_cast<std::size_t>(mod(g.coords.at(0), q))];
        } else {
          return d.value;
        }
      },
      data_);
}

bool Configuration::is_zero() const {
  return std::visit(
      [](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, FiniteSupport>) {
          return d.cells.empty();
        } else if constexpr (std::is_same_v<T, Periodic>) {
          return std::all_of(d.values.begin(), d.values.end(), [](const Vec& v) { return lca::is_zero(v); });
        } else {
          return lca::is_zero(d.value);
        }
      },
      data_);
}

Configuration canonicalize(const Group& g, const Field& f, const Configuration& x) {
  const auto dim_v = x.dim_v();
  auto reduced = [&](Vec v) {
    for (auto& s : v) s %= f.modulus();
    return v;
  };
  if (x.is_periodic()) require_integers(g);
  if (g.is_finite()) {
    std::map<GroupElement, Vec> cells;
    for (const auto& e : g.elements()) cells.emplace(e, reduced(x.value_at(e)));
    return Configuration::finite(dim_v, std::move(cells));
  }
  if (const auto* fs = std::get_if<Configuration::FiniteSupport>(&x.data())) {
    std::map<GroupElement, Vec> cells;
    for (const auto& [e, v] : fs->cells) {
      g.check(e);
      cells.emplace(e, reduced(v));
    }
    return Configuration::finite(dim_v, std::move(cells));
  }
  std::vector<Vec> values;
  if (const auto* per = std::get_if<Configuration::Periodic>(&x.data())) {
    for (const auto& v : per->values) values.push_back(reduced(v));
  } else {
    values.push_back(reduced(std::get<Configuration::Constant>(x.data()).value));
  }
  const std::size_t q = values.size();
  std::size_t period = q;
  for (std::size_t d = 1; d < q; ++d) {
    if (q % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < q && ok; ++i) ok = values[i] == values[i % d];
    if (ok) {
      period = d;
      break;
    }
  }
  values.resize(period);
  if (period > 1) return Configuration::periodic(dim_v, std::move(values));
  if (lca::is_zero(values[0])) return Configuration::zero(dim_v);
  return Configuration::constant(std::move(values[0]));
}

bool same_configuration(const Group& g, const Field& f, const Configuration& a, const Configuration& b) {
  return canonicalize(g, f, a) == canonicalize(g, f, b);
}

Configuration shift(const Group& grp, const GroupElement& g, const Configuration& x) {
  grp.check(g);
  if (const auto* fs = std::get_if<Configuration::FiniteSupport>(&x.data())) {
    std::map<GroupElement, Vec> cells;
    for (const auto& [h, v] : fs->cells) cells.emplace(grp.multiply(g, h), v);
    return Configuration::finite(x.dim_v(), std::move(cells));
  }
  if (const auto* per = std::get_if<Configuration::Periodic>(&x.data())) {
    require_integers(grp);
    const auto q = static_cast<std::int64_t>(per->values.size());
    std::vector<Vec> values(per->values.size());
    for (std::int64_t i = 0; i < q; ++i)
      values[static_cast<std::size_t>(i)] = per->values[static_cast<std::size_t>(mod(i - g.coords[0], q))];
    return Configuration::periodic(x.dim_v(), std::move(values));
  }
  return x;
}

Pattern apply_pattern(const LinearCA& ca, const Pattern& x) {
  const auto& grp = ca.group();
  const auto& f = ca.field();
  Pattern out;
  if (x.cells.empty()) return out;
  for (const auto& g : interior(grp, x.domain(), ca.memory())) {
    Vec acc(ca.dim_v(), 0);
    for (std::size_t i = 0; i < ca.memory().size(); ++i)
      accumulate(f, acc, ca.block(i), x.cells.at(grp.multiply(g, ca.memory()[i])));
    out.cells.emplace(g, std::move(acc));
  }
  return out;
}

Configuration apply_config(const LinearCA& ca, const Configuration& x) {
  const auto& grp = ca.group();
  const auto& f = ca.field();
  const auto dim_v = ca.dim_v();
  if (x.dim_v() != dim_v) throw DimensionMismatch("configuration dimension differs from dimV");
  const Configuration in = canonicalize(grp, f, x);

  if (const auto* fs = std::get_if<Configuration::FiniteSupport>(&in.data())) {
    // Cell s contributes B_m x(s) to cell s m^-1.
    std::map<GroupElement, Vec> out;
    for (const auto& [s, v] : fs->cells) {
      for (std::size_t i = 0; i < ca.memory().size(); ++i) {
        auto g = grp.multiply(s, grp.invert(ca.memory()[i]));
        auto [it, _] = out.try_emplace(std::move(g), Vec(dim_v, 0));
        accumulate(f, it->second, ca.block(i), v);
      }
    }
    return canonicalize(grp, f, Configuration::finite(dim_v, std::move(out)));
  }
  if (const auto* per = std::get_if<Configuration::Periodic>(&in.data())) {
    const auto q = static_cast<std::int64_t>(per->values.size());
    std::vector<Vec> out(per->values.size(), Vec(dim_v, 0));
    for (std::int64_t n = 0; n < q; ++n)
      for (std::size_t i = 0; i < ca.memory().size(); ++i)
        accumulate(f, out[static_cast<std::size_t>(n)], ca.block(i),
                   per->values[static_cast<std::size_t>(mod(n + ca.memory()[i].coords[0], q))]);
    return canonicalize(grp, f, Configuration::periodic(dim_v, std::move(out)));
  }
  const auto& c = std::get<Configuration::Constant>(in.data()).value;
  Vec acc(dim_v, 0);
  for (std::size_t i = 0; i < ca.memory().size(); ++i) accumulate(f, acc, ca.block(i), c);
  return canonicalize(grp, f, Configuration::constant(std::move(acc)));
}

LinearCA compose(const LinearCA& ca2, const LinearCA& ca1) {
  if (!(ca2.group() == ca1.group()) || !(ca2.field() == ca1.field()) || ca2.dim_v() != ca1.dim_v())
    throw GroupMismatch("compose: automata differ in group, field or dimV");
  const auto& grp = ca1.group();
  const auto& f = ca1.field();
  std::map<GroupElement, Matrix> blocks;
  for (std::size_t i = 0; i < ca2.memory().size(); ++i) {
    for (std::size_t j = 0; j < ca1.memory().size(); ++j) {
      auto m = grp.multiply(ca2.memory()[i], ca1.memory()[j]);
      auto prod = multiply(f, ca2.block(i), ca1.block(j));
      auto [it, inserted] = blocks.try_emplace(std::move(m), prod);
      if (!inserted) it->second = add(f, it->second, prod);
    }
  }
  LocalRule rule;
  for (auto& [m, b] : blocks) {
    rule.memory.push_back(m);
    rule.blocks.push_back(std::move(b));
  }
  return LinearCA(grp, f, ca1.dim_v(), std::move(rule));
}

bool equals_identity(const LinearCA& ca) {
  return ca.memory().size() == 1 && ca.memory()[0] == ca.group().identity() &&
         ca.block(0) == Matrix::identity(ca.dim_v());
}

bool equivariance_check(const Group& g, const Field& f, const ConfigMap& tau,
                        const std::vector<std::pair<GroupElement, Configuration>>& samples) {
  for (const auto& [h, x] : samples) {
    if (!same_configuration(g, f, tau(shift(g, h, x)), shift(g, h, tau(x)))) return false;
  }
  return true;
}

bool equivariance_check(const LinearCA& ca,
                        const std::vector<std::pair<GroupElement, Configuration>>& samples) {
  return equivariance_check(ca.group(), ca.field(),
                            [&](const Configuration& x) { return apply_config(ca, x); }, samples);
}

BallSequence windows(const LinearCA& ca) {
  return BallSequence{ca.group(), max_word_length(ca.group(), ca.memory())};
}

WindowMap window_map_on(const LinearCA& ca, const std::vector<GroupElement>& source_in) {
  const auto& grp = ca.group();
  const auto d = ca.dim_v();
  WindowMap w;
  w.source = canonical_set(source_in);
  w.target = w.source.empty() ? std::vector<GroupElement>{} : interior(grp, w.source, ca.memory());
  std::map<GroupElement, std::size_t> column;
  for (std::size_t i = 0; i < w.source.size(); ++i) column.emplace(w.source[i], i);
  w.matrix = Matrix(d * w.target.size(), d * w.source.size());
  for (std::size_t r = 0; r < w.target.size(); ++r) {
    for (std::size_t i = 0; i < ca.memory().size(); ++i) {
      const std::size_t c = column.at(grp.multiply(w.target[r], ca.memory()[i]));
      const Matrix& b = ca.block(i);
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t k = 0; k < d; ++k)
          w.matrix(r * d + a, c * d + k) = ca.field().add(w.matrix(r * d + a, c * d + k), b(a, k));
    }
  }
  return w;
}

WindowMap window_map(const LinearCA& ca, std::size_t n) { return window_map_on(ca, windows(ca)(n)); }

Matrix global_matrix(const LinearCA& ca) {
  if (!ca.group().is_finite()) throw GroupMismatch("global matrix needs a finite group");
  return window_map_on(ca, ca.group().elements()).matrix;
}

Vec vectorize(const Pattern& x, const std::vector<GroupElement>& order, std::size_t dim_v) {
  Vec out;
  out.reserve(order.size() * dim_v);
  for (const auto& g : order) {
    const auto& v = x.cells.at(g);
    if (v.size() != dim_v) throw DimensionMismatch("pattern value has wrong dimension");
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

Pattern devectorize(const std::vector<GroupElement>& order, const Vec& v, std::size_t dim_v) {
  if (v.size() != order.size() * dim_v) throw DimensionMismatch("devectorize: size mismatch");
  Pattern p;
  for (std::size_t i = 0; i < order.size(); ++i)
    p.cells.emplace(order[i], Vec(v.begin() + static_cast<std::ptrdiff_t>(i * dim_v),
                                  v.begin() + static_cast<std::ptrdiff_t>((i + 1) * dim_v)));
  return p;
}

Pattern restrict_to(const Configuration& x, const std::vector<GroupElement>& domain) {
  Pattern p;
  for (const auto& g : domain) p.cells.emplace(g, x.value_at(g));
  return p;
}

Pattern restrict_to(const Pattern& x, const std::vector<GroupElement>& domain) {
  Pattern p;
  for (const auto& g : domain) p.cells.emplace(g, x.cells.at(g));
  return p;
}

}  // namespace lca
