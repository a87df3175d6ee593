#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lca {

/// Raised when an element does not belong to the group it is used with, or
/// when two descriptors that must agree do not.
class GroupMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an enumeration would exceed the configured size limit.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Canonical form of a group element. The meaning of the coordinates
/// depends on the group kind:
///   integers  one integer
///   lattice   d integers
///   finite    element id
///   free      freely reduced word; letter 2i is generator i, 2i+1 its inverse
///
/// Ordering is length first, then lexicographic. For every kind this is the
/// canonical element order used for matrix layouts.
struct GroupElement {
  std::vector<std::int64_t> coords;

  GroupElement() = default;
  explicit GroupElement(std::vector<std::int64_t> c) : coords(std::move(c)) {}

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend std::strong_ordering operator<=>(const GroupElement& a,
                                          const GroupElement& b) {
    if (auto c = a.coords.size() <=> b.coords.size(); c != 0) return c;
    return a.coords <=> b.coords;
  }
};

enum class GroupKind { Integers, Lattice, Finite, Free };

std::string to_string(GroupKind kind);

/// A finitely generated group with canonical forms: Z, Z^d, a finite group
/// given by its multiplication table, or a free group of finite rank.
class Group {
 public:
  static Group integers();
  static Group lattice(std::size_t dim);
  /// `table[a][b]` is the id of a*b. Generators default to every
  /// non-identity element; custom generators must generate the group.
  static Group finite(std::vector<std::vector<std::int64_t>> table,
                      std::int64_t identity,
                      std::vector<std::int64_t> generators = {});
  static Group free(std::size_t rank);

  GroupKind kind() const { return kind_; }
  /// Lattice dimension (1 for integers, 0 otherwise).
  std::size_t dimension() const { return dim_; }
  std::size_t rank() const { return rank_; }
  /// Number of elements of a finite group, 0 for infinite kinds.
  std::size_t order() const { return table_.size(); }
  bool is_finite() const { return kind_ == GroupKind::Finite; }
  const std::vector<std::vector<std::int64_t>>& table() const { return table_; }
  std::int64_t identity_id() const { return identity_id_; }
  const std::vector<GroupElement>& generators() const { return generators_; }

  GroupElement identity() const;
  GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
  GroupElement invert(const GroupElement& a) const;
  GroupElement power(const GroupElement& a, std::int64_t k) const;

  /// True iff `a` is a well-formed canonical element of this group.
  bool contains(const GroupElement& a) const;
  /// Throws GroupMismatch unless contains(a).
  void check(const GroupElement& a) const;

  /// Word length with respect to generators().
  std::size_t word_length(const GroupElement& a) const;

  /// Word-metric ball of radius n about the identity, canonically sorted.
  std::vector<GroupElement> ball(std::size_t n,
                                 std::size_t limit = kDefaultBallLimit) const;

  /// All elements of a finite group, in id order.
  std::vector<GroupElement> elements() const;

  friend bool operator==(const Group&, const Group&) = default;

  static constexpr std::size_t kDefaultBallLimit = 4'000'000;

 private:
  Group() = default;

  GroupKind kind_ = GroupKind::Integers;
  std::size_t dim_ = 0;
  std::size_t rank_ = 0;
  std::vector<std::vector<std::int64_t>> table_;
  std::int64_t identity_id_ = 0;
  std::vector<std::int64_t> inverse_;
  std::vector<std::size_t> finite_length_;
  std::vector<GroupElement> generators_;
};

/// {g : g*m in A for every m in M}, canonically sorted. `A` need not be sorted.
std::vector<GroupElement> interior(const Group& g,
                                   const std::vector<GroupElement>& a,
                                   const std::vector<GroupElement>& m);

/// Word length of the longest element of M together with the identity.
std::size_t max_word_length(const Group& g, const std::vector<GroupElement>& m);

/// Sorted, deduplicated copy.
std::vector<GroupElement> canonical_set(std::vector<GroupElement> s);

/// The exhausting sequence A_n = ball(r0 + n).
struct BallSequence {
  Group group;
  std::size_t offset = 0;

  std::vector<GroupElement> operator()(std::size_t n) const {
    return group.ball(offset + n);
  }
};

/// Human-readable element text: integers, "(x,y)", finite ids, or free words
/// over a..z with capitals for inverses ("" is the identity).
std::string format_element(const Group& g, const GroupElement& a);

}  // namespace lca
