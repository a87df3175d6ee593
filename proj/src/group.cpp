#include "lca/group.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace lca {

std::string to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::Integers: return "integers";
    case GroupKind::Lattice: return "lattice";
    case GroupKind::Finite: return "finite";
    case GroupKind::Free: return "free";
  }
  return "?";
}

Group Group::integers() {
  Group g;
  g.kind_ = GroupKind::Integers;
  g.dim_ = 1;
  g.generators_ = {GroupElement({1})};
  return g;
}

Group Group::lattice(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("lattice dimension must be positive");
  Group g;
  g.kind_ = GroupKind::Lattice;
  g.dim_ = dim;
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<std::int64_t> e(dim, 0);
    e[i] = 1;
    g.generators_.emplace_back(e);
  }
  return g;
}

Group Group::free(std::size_t rank) {
  if (rank == 0 || rank > 26) throw std::invalid_argument("free group rank must be in [1, 26]");
  Group g;
  g.kind_ = GroupKind::Free;
  g.rank_ = rank;
  for (std::size_t i = 0; i < rank; ++i)
    g.generators_.emplace_back(std::vector<std::int64_t>{static_cast<std::int64_t>(2 * i)});
  return g;
}

Group Group::finite(std::vector<std::vector<std::int64_t>> table, std::int64_t identity,
                    std::vector<std::int64_t> generators) {
  const auto n = static_cast<std::int64_t>(table.size());
  if (n == 0) throw std::invalid_argument("finite group table is empty");
  if (identity < 0 || identity >= n) throw std::invalid_argument("identity id out of range");
  for (const auto& row : table) {
    if (static_cast<std::int64_t>(row.size()) != n)
      throw std::invalid_argument("finite group table is not square");
    for (auto v : row)
      if (v < 0 || v >= n) throw std::invalid_argument("finite group table entry out of range");
  }
  for (std::int64_t a = 0; a < n; ++a)
    if (table[identity][a] != a || table[a][identity] != a)
      throw std::invalid_argument("identity element does not act trivially");
  for (std::int64_t a = 0; a < n; ++a)
    for (std::int64_t b = 0; b < n; ++b)
      for (std::int64_t c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw std::invalid_argument("finite group table is not associative");

  Group g;
  g.kind_ = GroupKind::Finite;
  g.identity_id_ = identity;
  g.inverse_.assign(n, -1);
  for (std::int64_t a = 0; a < n; ++a) {
    for (std::int64_t b = 0; b < n; ++b)
      if (table[a][b] == identity && table[b][a] == identity) g.inverse_[a] = b;
    if (g.inverse_[a] < 0) throw std::invalid_argument("finite group table lacks an inverse");
  }
  g.table_ = std::move(table);

  if (generators.empty()) {
    for (std::int64_t a = 0; a < n; ++a)
      if (a != identity) generators.push_back(a);
  }
  for (auto s : generators) {
    if (s < 0 || s >= n) throw std::invalid_argument("generator id out of range");
    g.generators_.emplace_back(std::vector<std::int64_t>{s});
  }

  // Word lengths by breadth-first search over right multiplication.
  constexpr auto kUnseen = static_cast<std::size_t>(-1);
  g.finite_length_.assign(n, kUnseen);
  g.finite_length_[identity] = 0;
  std::deque<std::int64_t> queue{identity};
  while (!queue.empty()) {
    auto a = queue.front();
    queue.pop_front();
    for (auto s : generators) {
      for (auto t : {s, g.inverse_[s]}) {
        auto b = g.table_[a][t];
        if (g.finite_length_[b] == kUnseen) {
          g.finite_length_[b] = g.finite_length_[a] + 1;
          queue.push_back(b);
        }
      }
    }
  }
  for (auto len : g.finite_length_)
    if (len == kUnseen) throw std::invalid_argument("generators do not generate the finite group");
  return g;
}

GroupElement Group::identity() const {
  switch (kind_) {
    case GroupKind::Integers:
    case GroupKind::Lattice: return GroupElement(std::vector<std::int64_t>(dim_, 0));
    case GroupKind::Finite: return GroupElement({identity_id_});
    case GroupKind::Free: return GroupElement();
  }
  return {};
}

bool Group::contains(const GroupElement& a) const {
  switch (kind_) {
    case GroupKind::Integers:
    case GroupKind::Lattice: return a.coords.size() == dim_;
    case GroupKind::Finite:
      return a.coords.size() == 1 && a.coords[0] >= 0 &&
             a.coords[0] < static_cast<std::int64_t>(table_.size());
    case GroupKind::Free: {
      const auto letters = static_cast<std::int64_t>(2 * rank_);
      for (std::size_t i = 0; i < a.coords.size(); ++i) {
        if (a.coords[i] < 0 || a.coords[i] >= letters) return false;
        if (i > 0 && (a.coords[i] ^ 1) == a.coords[i - 1]) return false;
      }
      return true;
    }
  }
  return false;
}

void Group::check(const GroupElement& a) const {
  if (!contains(a))
    throw GroupMismatch("element is not a canonical element of the " + to_string(kind_) + " group");
}

GroupElement Group::multiply(const GroupElement& a, const GroupElement& b) const {
  check(a);
  check(b);
  switch (kind_) {
    case GroupKind::Integers:
    case GroupKind::Lattice: {
      GroupElement r = a;
      for (std::size_t i = 0; i < dim_; ++i) r.coords[i] += b.coords[i];
      return r;
    }
    case GroupKind::Finite: return GroupElement({table_[a.coords[0]][b.coords[0]]});
    case GroupKind::Free: {
      auto w = a.coords;
      for (auto letter : b.coords) {
        if (!w.empty() && w.back() == (letter ^ 1))
          w.pop_back();
        else
          w.push_back(letter);
      }
      return GroupElement(std::move(w));
    }
  }
  return {};
}

GroupElement Group::invert(const GroupElement& a) const {
  check(a);
  switch (kind_) {
    case GroupKind::Integers:
    case GroupKind::Lattice: {
      GroupElement r = a;
      for (auto& c : r.coords) c = -c;
      return r;
    }
    case GroupKind::Finite: return GroupElement({inverse_[a.coords[0]]});
    case GroupKind::Free: {
      std::vector<std::int64_t> w(a.coords.rbegin(), a.coords.rend());
      for (auto& letter : w) letter ^= 1;
      return GroupElement(std::move(w));
    }
  }
  return {};
}

GroupElement Group::power(const GroupElement& a, std::int64_t k) const {
  GroupElement base = k < 0 ? invert(a) : a;
  std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
  GroupElement result = identity();
  while (e > 0) {
    if (e & 1) result = multiply(result, base);
    e >>= 1;
    if (e > 0) base = multiply(base, base);
  }
  return result;
}

std::size_t Group::word_length(const GroupElement& a) const {
  check(a);
  switch (kind_) {
    case GroupKind::Integers:
    case GroupKind::Lattice: {
      std::size_t len = 0;
      for (auto c : a.coords) len += static_cast<std::size_t>(c < 0 ? -c : c);
      return len;
    }
    case GroupKind::Finite: return finite_length_[a.coords[0]];
    case GroupKind::Free: return a.coords.size();
  }
  return 0;
}

namespace {

void lattice_ball(std::size_t dim, std::int64_t budget, std::vector<std::int64_t>& prefix,
                  std::vector<GroupElement>& out, std::size_t limit) {
  if (prefix.size() == dim) {
    if (out.size() >= limit) throw ResourceLimit("ball enumeration exceeds size limit");
    out.emplace_back(prefix);
    return;
  }
  for (std::int64_t c = -budget; c <= budget; ++c) {
    prefix.push_back(c);
    lattice_ball(dim, budget - (c < 0 ? -c : c), prefix, out, limit);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<GroupElement> Group::ball(std::size_t n, std::size_t limit) const {
  std::vector<GroupElement> out;
  switch (kind_) {
    case GroupKind::Integers:
    case GroupKind::Lattice: {
      std::vector<std::int64_t> prefix;
      lattice_ball(dim_, static_cast<std::int64_t>(n), prefix, out, limit);
      break;
    }
    case GroupKind::Finite:
      for (std::size_t a = 0; a < table_.size(); ++a)
        if (finite_length_[a] <= n) out.emplace_back(std::vector<std::int64_t>{static_cast<std::int64_t>(a)});
      break;
    case GroupKind::Free: {
      out.emplace_back();
      std::size_t frontier = 0;
      for (std::size_t len = 1; len <= n; ++len) {
        const std::size_t end = out.size();
        for (std::size_t i = frontier; i < end; ++i) {
          for (std::int64_t letter = 0; letter < static_cast<std::int64_t>(2 * rank_); ++letter) {
            const auto& w = out[i].coords;
            if (!w.empty() && w.back() == (letter ^ 1)) continue;
            if (out.size() >= limit) throw ResourceLimit("ball enumeration exceeds size limit");
            auto next = w;
            next.push_back(letter);
            out.emplace_back(std::move(next));
          }
        }
        frontier = end;
      }
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<GroupElement> Group::elements() const {
  std::vector<GroupElement> out;
  for (std::size_t a = 0; a < table_.size(); ++a)
    out.emplace_back(std::vector<std::int64_t>{static_cast<std::int64_t>(a)});
  return out;
}

std::vector<GroupElement> canonical_set(std::vector<GroupElement> s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

std::vector<GroupElement> interior(const Group& g, const std::vector<GroupElement>& a,
                                   const std::vector<GroupElement>& m) {
  if (m.empty()) throw std::invalid_argument("interior requires a nonempty memory set");
  const std::set<GroupElement> members(a.begin(), a.end());
  const GroupElement m0_inv = g.invert(m.front());
  std::vector<GroupElement> out;
  for (const auto& x : members) {
    GroupElement cand = g.multiply(x, m0_inv);
    bool inside = true;
    for (const auto& mi : m) {
      if (!members.contains(g.multiply(cand, mi))) {
        inside = false;
        break;
      }
    }
    if (inside) out.push_back(std::move(cand));
  }
  return canonical_set(std::move(out));
}

std::size_t max_word_length(const Group& g, const std::vector<GroupElement>& m) {
  std::size_t r = 0;
  for (const auto& x : m) r = std::max(r, g.word_length(x));
  return r;
}

std::string format_element(const Group& g, const GroupElement& a) {
  switch (g.kind()) {
    case GroupKind::Integers:
    case GroupKind::Finite: return std::to_string(a.coords.at(0));
    case GroupKind::Lattice: {
      std::string s = "(";
      for (std::size_t i = 0; i < a.coords.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(a.coords[i]);
      }
      return s + ")";
    }
    case GroupKind::Free: {
      std::string s;
      for (auto letter : a.coords) {
        const char base = (letter & 1) ? 'A' : 'a';
        s += static_cast<char>(base + letter / 2);
      }
      return s;
    }
  }
  return {};
}

}  // namespace lca
