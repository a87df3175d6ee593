#pragma once

#include <functional>
#include <map>
#include <utility>
#include <variant>
#include <vector>

#include "lca/gf.hpp"
#include "lca/group.hpp"

namespace lca {

/// Local rule mu(y) = sum over m in memory of blocks[m] * y(m).
struct LocalRule {
  std::vector<GroupElement> memory;
  std::vector<Matrix> blocks;

  friend bool operator==(const LocalRule&, const LocalRule&) = default;
};

/// Canonical form of a rule: identity element present, zero blocks elsewhere
/// pruned, duplicate memory elements merged, memory sorted.
LocalRule normalize_rule(const Group& g, const Field& f, std::size_t dim_v, LocalRule rule);

/// A linear cellular automaton over `group` with alphabet GF(p)^dimV.
/// The rule is kept normalized, so two automata are equal as maps exactly
/// when they compare equal here.
class LinearCA {
 public:
  LinearCA(Group group, Field field, std::size_t dim_v, LocalRule rule);

  static LinearCA identity(Group group, Field field, std::size_t dim_v);
  /// tau(x)(g) = x(g*s): a single identity block at memory element s.
  static LinearCA shift(Group group, Field field, std::size_t dim_v, const GroupElement& s);

  const Group& group() const { return group_; }
  const Field& field() const { return field_; }
  std::size_t dim_v() const { return dim_v_; }
  const LocalRule& rule() const { return rule_; }
  const std::vector<GroupElement>& memory() const { return rule_.memory; }
  const Matrix& block(std::size_t i) const { return rule_.blocks[i]; }

  friend bool operator==(const LinearCA&, const LinearCA&) = default;

 private:
  Group group_;
  Field field_;
  std::size_t dim_v_;
  LocalRule rule_;
};

/// A finite partial configuration. The domain is the key set.
struct Pattern {
  std::map<GroupElement, Vec> cells;

  std::vector<GroupElement> domain() const;
  friend bool operator==(const Pattern&, const Pattern&) = default;
};

/// Global configurations with decidable equality: finitely supported,
/// periodic (integers only) or constant.
class Configuration {
 public:
  struct FiniteSupport {
    std::map<GroupElement, Vec> cells;  // zero vectors never stored
    friend bool operator==(const FiniteSupport&, const FiniteSupport&) = default;
  };
  struct Periodic {
    std::vector<Vec> values;  // x(n) = values[n mod period]
    friend bool operator==(const Periodic&, const Periodic&) = default;
  };
  struct Constant {
    Vec value;
    friend bool operator==(const Constant&, const Constant&) = default;
  };
  using Data = std::variant<FiniteSupport, Periodic, Constant>;

  static Configuration zero(std::size_t dim_v);
  static Configuration finite(std::size_t dim_v, std::map<GroupElement, Vec> cells);
  static Configuration periodic(std::size_t dim_v, std::vector<Vec> values);
  static Configuration constant(Vec value);

  std::size_t dim_v() const { return dim_v_; }
  const Data& data() const { return data_; }
  bool is_finite_support() const { return std::holds_alternative<FiniteSupport>(data_); }
  bool is_periodic() const { return std::holds_alternative<Periodic>(data_); }
  bool is_constant() const { return std::holds_alternative<Constant>(data_); }

  Vec value_at(const GroupElement& g) const;
  bool is_zero() const;

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  Configuration(std::size_t dim_v, Data data) : dim_v_(dim_v), data_(std::move(data)) {}
  std::size_t dim_v_ = 0;
  Data data_;
};

/// Unique representative for equality: minimal periods, period 1 becomes
/// constant, zero becomes the empty finite support, and on finite groups
/// everything is finitely supported. Throws GroupMismatch for periodic data
/// on non-integer groups.
Configuration canonicalize(const Group& g, const Field& f, const Configuration& x);
bool same_configuration(const Group& g, const Field& f, const Configuration& a, const Configuration& b);

/// The shift action (gx)(h) = x(g^-1 h).
Configuration shift(const Group& grp, const GroupElement& g, const Configuration& x);

/// Output on interior(domain, M), never reading outside g*M.
Pattern apply_pattern(const LinearCA& ca, const Pattern& x);
Configuration apply_config(const LinearCA& ca, const Configuration& x);

/// ca2 o ca1.
LinearCA compose(const LinearCA& ca2, const LinearCA& ca1);
bool equals_identity(const LinearCA& ca);

using ConfigMap = std::function<Configuration(const Configuration&)>;
/// tau(gx) == g tau(x) on every sample.
bool equivariance_check(const Group& g, const Field& f, const ConfigMap& tau,
                        const std::vector<std::pair<GroupElement, Configuration>>& samples);
bool equivariance_check(const LinearCA& ca,
                        const std::vector<std::pair<GroupElement, Configuration>>& samples);

/// Window sequence A_n = ball(r0 + n) with r0 the longest memory word.
BallSequence windows(const LinearCA& ca);

struct WindowMap {
  std::vector<GroupElement> source;  // A_n
  std::vector<GroupElement> target;  // B_n = interior(A_n, M)
  Matrix matrix;                     // dimV|B_n| x dimV|A_n|
};

/// Matrix of tau restricted to the window A_n -> B_n.
WindowMap window_map(const LinearCA& ca, std::size_t n);
/// Same construction for an arbitrary finite source window.
WindowMap window_map_on(const LinearCA& ca, const std::vector<GroupElement>& source);
/// Matrix of tau on V^G for a finite group G.
Matrix global_matrix(const LinearCA& ca);

/// Concatenates values in the given element order.
Vec vectorize(const Pattern& x, const std::vector<GroupElement>& order, std::size_t dim_v);
Pattern devectorize(const std::vector<GroupElement>& order, const Vec& v, std::size_t dim_v);
Pattern restrict_to(const Configuration& x, const std::vector<GroupElement>& domain);
Pattern restrict_to(const Pattern& x, const std::vector<GroupElement>& domain);

}  // namespace lca
