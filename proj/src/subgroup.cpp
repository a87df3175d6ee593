#include "lca/subgroup.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace lca {

namespace {

using IntRow = std::vector<std::int64_t>;

void axpy_row(IntRow& dst, const IntRow& src, std::int64_t q) {
  for (std::size_t k = 0; k < dst.size(); ++k) dst[k] -= q * src[k];
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

HermiteForm hermite_form(const std::vector<IntRow>& input, std::size_t cols) {
  std::vector<IntRow> a = input;
  const std::size_t r = a.size();
  for (auto& row : a)
    if (row.size() != cols) throw std::invalid_argument("hermite_form: ragged rows");
  std::vector<IntRow> u(r, IntRow(r, 0));
  for (std::size_t i = 0; i < r; ++i) u[i][i] = 1;

  HermiteForm out;
  std::size_t pr = 0;
  for (std::size_t c = 0; c < cols && pr < r; ++c) {
    while (true) {
      std::size_t best = r;
      for (std::size_t i = pr; i < r; ++i)
        if (a[i][c] != 0 && (best == r || std::llabs(a[i][c]) < std::llabs(a[best][c]))) best = i;
      if (best == r) break;
      std::swap(a[pr], a[best]);
      std::swap(u[pr], u[best]);
      bool clean = true;
      for (std::size_t i = pr + 1; i < r; ++i) {
        if (a[i][c] == 0) continue;
        const std::int64_t q = a[i][c] / a[pr][c];
        axpy_row(a[i], a[pr], q);
        axpy_row(u[i], u[pr], q);
        if (a[i][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (a[pr][c] == 0) continue;
    if (a[pr][c] < 0) {
      for (auto& v : a[pr]) v = -v;
      for (auto& v : u[pr]) v = -v;
    }
    for (std::size_t i = 0; i < pr; ++i) {
      const std::int64_t q = floor_div(a[i][c], a[pr][c]);
      axpy_row(a[i], a[pr], q);
      axpy_row(u[i], u[pr], q);
    }
    out.pivots.push_back(c);
    ++pr;
  }
  out.rows.assign(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(pr));
  out.transform.assign(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(pr));
  return out;
}

Embedding Embedding::from_images(Group sub, Group ambient, std::vector<GroupElement> images) {
  for (const auto& x : images) ambient.check(x);
  Embedding e(std::move(sub), std::move(ambient), std::move(images));
  const Group& h = e.sub_;
  const Group& g = e.ambient_;

  if (h.is_finite()) {
    if (e.images_.size() != h.order())
      throw std::invalid_argument("finite embedding needs one image per subgroup element");
    for (std::size_t a = 0; a < h.order(); ++a)
      for (std::size_t b = 0; b < h.order(); ++b)
        if (e.images_[h.table()[a][b]] != g.multiply(e.images_[a], e.images_[b]))
          throw std::invalid_argument("embedding images do not define a homomorphism");
    if (canonical_set(e.images_).size() != e.images_.size())
      throw std::invalid_argument("embedding is not injective");
    return e;
  }

  const std::size_t r = h.dimension();
  if (e.images_.size() != r)
    throw std::invalid_argument("embedding needs one image per subgroup generator");
  switch (g.kind()) {
    case GroupKind::Integers:
    case GroupKind::Lattice: {
      std::vector<IntRow> rows;
      for (const auto& x : e.images_) rows.push_back(x.coords);
      auto hf = hermite_form(rows, g.dimension());
      if (hf.rows.size() != r) throw std::invalid_argument("embedding is not injective");
      e.echelon_ = std::move(hf.rows);
      e.transform_ = std::move(hf.transform);
      e.pivots_ = std::move(hf.pivots);
      return e;
    }
    case GroupKind::Free:
      if (r != 1) throw UnsupportedSubgroup("only cyclic subgroups of free groups are supported");
      if (e.images_[0] == g.identity()) throw std::invalid_argument("embedding is not injective");
      return e;
    case GroupKind::Finite:
      throw std::invalid_argument("an infinite group cannot embed in a finite group");
  }
  return e;
}

GroupElement Embedding::embed(const GroupElement& hx) const {
  sub_.check(hx);
  if (sub_.is_finite()) return images_[static_cast<std::size_t>(hx.coords[0])];
  GroupElement out = ambient_.identity();
  for (std::size_t i = 0; i < images_.size(); ++i)
    out = ambient_.multiply(out, ambient_.power(images_[i], hx.coords[i]));
  return out;
}

std::optional<GroupElement> Embedding::recognize(const GroupElement& gx) const {
  if (!ambient_.contains(gx)) return std::nullopt;
  if (sub_.is_finite()) {
    auto it = std::find(images_.begin(), images_.end(), gx);
    if (it == images_.end()) return std::nullopt;
    return GroupElement({static_cast<std::int64_t>(it - images_.begin())});
  }
  if (ambient_.kind() == GroupKind::Free) return recognize_free(gx);
  return recognize_abelian(gx);
}

std::optional<GroupElement> Embedding::recognize_abelian(const GroupElement& gx) const {
  const std::size_t r = echelon_.size();
  // Solve y * E = x along the pivot columns, then check the remaining columns.
  IntRow y(r, 0);
  for (std::size_t i = 0; i < r; ++i) {
    std::int64_t rest = gx.coords[pivots_[i]];
    for (std::size_t k = 0; k < i; ++k) rest -= y[k] * echelon_[k][pivots_[i]];
    if (rest % echelon_[i][pivots_[i]] != 0) return std::nullopt;
    y[i] = rest / echelon_[i][pivots_[i]];
  }
  for (std::size_t c = 0; c < gx.coords.size(); ++c) {
    std::int64_t s = 0;
    for (std::size_t k = 0; k < r; ++k) s += y[k] * echelon_[k][c];
    if (s != gx.coords[c]) return std::nullopt;
  }
  // x = y*U*B, so the coordinates in H are y*U.
  IntRow h(r, 0);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t k = 0; k < r; ++k) h[j] += y[k] * transform_[k][j];
  return GroupElement(std::move(h));
}

std::optional<GroupElement> Embedding::recognize_free(const GroupElement& gx) const {
  const auto& w = images_[0].coords;
  // w = u c u^-1 with c cyclically reduced, so |w^k| = 2|u| + |k||c|.
  std::size_t u = 0;
  while (2 * u + 1 < w.size() && w[u] == (w[w.size() - 1 - u] ^ 1)) ++u;
  const std::size_t core = w.size() - 2 * u;
  if (gx.coords.empty()) return GroupElement({0});
  if (gx.coords.size() <= 2 * u) return std::nullopt;
  const std::size_t len = gx.coords.size() - 2 * u;
  if (len % core != 0) return std::nullopt;
  const auto k = static_cast<std::int64_t>(len / core);
  for (std::int64_t cand : {k, -k})
    if (ambient_.power(images_[0], cand) == gx) return GroupElement({cand});
  return std::nullopt;
}

Embedding subgroup_generated(const Group& g, const std::vector<GroupElement>& m) {
  for (const auto& x : m) g.check(x);
  const Group trivial = Group::finite({{0}}, 0);

  switch (g.kind()) {
    case GroupKind::Integers:
    case GroupKind::Lattice: {
      std::vector<IntRow> rows;
      for (const auto& x : m) rows.push_back(x.coords);
      auto hf = hermite_form(rows, g.dimension());
      std::vector<GroupElement> basis;
      for (auto& row : hf.rows) basis.emplace_back(row);
      if (basis.empty()) return Embedding::from_images(trivial, g, {g.identity()});
      Group h = basis.size() == 1 ? Group::integers() : Group::lattice(basis.size());
      return Embedding::from_images(std::move(h), g, std::move(basis));
    }
    case GroupKind::Finite: {
      std::set<std::int64_t> closure{g.identity_id()};
      std::vector<std::int64_t> frontier{g.identity_id()};
      while (!frontier.empty()) {
        std::vector<std::int64_t> next;
        for (auto a : frontier)
          for (const auto& x : m) {
            auto b = g.table()[a][x.coords[0]];
            if (closure.insert(b).second) next.push_back(b);
          }
        frontier = std::move(next);
      }
      std::vector<std::int64_t> ids(closure.begin(), closure.end());
      std::map<std::int64_t, std::int64_t> index;
      for (std::size_t i = 0; i < ids.size(); ++i) index[ids[i]] = static_cast<std::int64_t>(i);
      std::vector<std::vector<std::int64_t>> table(ids.size(), std::vector<std::int64_t>(ids.size()));
      for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = 0; j < ids.size(); ++j) table[i][j] = index.at(g.table()[ids[i]][ids[j]]);
      std::vector<GroupElement> images;
      for (auto id : ids) images.emplace_back(std::vector<std::int64_t>{id});
      return Embedding::from_images(Group::finite(std::move(table), index.at(g.identity_id())), g,
                                    std::move(images));
    }
    case GroupKind::Free: {
      std::vector<GroupElement> nontrivial;
      for (const auto& x : m)
        if (x != g.identity()) nontrivial.push_back(x);
      nontrivial = canonical_set(std::move(nontrivial));
      if (nontrivial.empty()) return Embedding::from_images(trivial, g, {g.identity()});
      if (nontrivial.size() > 1)
        throw UnsupportedSubgroup("subgroups of free groups need a single nontrivial generator");
      return Embedding::from_images(Group::integers(), g, {nontrivial[0]});
    }
  }
  throw UnsupportedSubgroup("unsupported group kind");
}

}  // namespace lca
