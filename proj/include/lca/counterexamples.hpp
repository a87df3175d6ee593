#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "lca/ca.hpp"
#include "lca/gf.hpp"

namespace lca::sigma {

/// Index of the block containing basis vector v_i (i >= 1): the unique j with
/// (j-1)j/2 < i <= j(j+1)/2.
std::uint64_t block_of(std::uint64_t i);
inline std::uint64_t block_start(std::uint64_t j) { return (j - 1) * j / 2 + 1; }
inline std::uint64_t block_end(std::uint64_t j) { return j * (j + 1) / 2; }

/// A finite combination of the basis vectors v_1, v_2, ...
class SparseVector {
 public:
  SparseVector() = default;
  static SparseVector basis(std::uint64_t i);

  const std::map<std::uint64_t, Scalar>& coords() const { return coords_; }
  bool is_zero() const { return coords_.empty(); }
  Scalar coeff(std::uint64_t i) const;
  std::size_t support_size() const { return coords_.size(); }

  /// Adds c * v_i; zero results are erased.
  void add_term(const Field& f, std::uint64_t i, Scalar c);

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::map<std::uint64_t, Scalar> coords_;
};

SparseVector add(const Field& f, const SparseVector& a, const SparseVector& b);
SparseVector sub(const Field& f, const SparseVector& a, const SparseVector& b);
/// The block nilpotent map: v_i -> 0 at a block start, v_i -> v_{i-1} otherwise.
SparseVector phi(const Field& f, const SparseVector& v);
/// v_i -> v_{i+1}.
SparseVector psi(const Field& f, const SparseVector& v);

/// Configuration Z -> V with finitely many explicit cells and an optional
/// closed-form right tail from `start` onward.
struct Tail {
  enum class Kind { PartialSums, Constant };
  std::int64_t start = 0;
  Kind kind = Kind::PartialSums;  // PartialSums: x(n) = v_1 + ... + v_{n-start+1}
  SparseVector value;             // Constant: x(n) = value

  friend bool operator==(const Tail&, const Tail&) = default;
};

class LazySparseConfig {
 public:
  LazySparseConfig() = default;
  /// Zero cells are dropped. Throws if an explicit cell overlaps the tail.
  explicit LazySparseConfig(std::map<std::int64_t, SparseVector> cells, std::optional<Tail> tail = std::nullopt);

  const std::map<std::int64_t, SparseVector>& cells() const { return cells_; }
  const std::optional<Tail>& tail() const { return tail_; }
  SparseVector value_at(const Field& f, std::int64_t n) const;

  friend bool operator==(const LazySparseConfig&, const LazySparseConfig&) = default;

 private:
  std::map<std::int64_t, SparseVector> cells_;
  std::optional<Tail> tail_;
};

/// x(n) - phi(x(n+1)).
LazySparseConfig sigma_apply(const Field& f, const LazySparseConfig& x);
/// Blockwise sum over k < j of phi^k(x_j(n+k)).
LazySparseConfig sigma_inverse_apply(const Field& f, const LazySparseConfig& x);
/// x(n+1) - psi(x(n)).
LazySparseConfig sigma_prime_apply(const Field& f, const LazySparseConfig& x);

struct NonReversibilityWitness {
  std::uint64_t j0 = 0;
  std::int64_t window_radius = 0;
  LazySparseConfig y;
  LazySparseConfig z;
  bool agree_left = false;     // y and z agree on [-R, j0 - 2]
  SparseVector y_inverse_at_0;
  SparseVector z_inverse_at_0;
  std::uint64_t expected_index = 0;  // (j0-1)j0/2 + 1
  /// Inverse image at 0 of v_{j0(j0-1)/2} placed at j0 - 1, the top of the
  /// previous block; it vanishes and so separates nothing.
  SparseVector previous_block_variant_at_0;

  bool holds() const;
};

/// y = 0 and z = v_{j0(j0+1)/2} at cell j0 - 1: they agree left of j0 - 1
/// while their inverse images differ at 0. Requires j0 >= 2 and
/// window_radius >= j0.
NonReversibilityWitness sigma_nonreversibility_witness(const Field& f, std::uint64_t j0, std::int64_t window_radius);

/// The approximant equal to 0 before n0 and v_1 + ... + v_{n-n0+1} from n0.
LazySparseConfig partial_sums_config(std::int64_t n0);

struct ClosureReport {
  std::int64_t m = 0;
  std::int64_t start = 0;
  std::size_t cells_checked = 0;
  bool all_match = false;          // sigma'(x_F)(n) == v_1 on [-m, m], pointwise
  bool symbolic_match = false;     // same via the lazy image
  bool zero_before_start = false;  // x_F(n0 - 1) == 0
};

/// Approximant x_F with n0 = -m and the check of sigma'(x_F) against the
/// constant configuration v_1 on [-m, m].
std::pair<LazySparseConfig, ClosureReport> sigma_prime_closure_witness(const Field& f, std::int64_t m);

struct ForcedSupportReport {
  std::uint64_t depth = 0;
  std::uint64_t truncation = 0;  // coordinates 1..truncation are modelled
  std::vector<std::pair<std::uint64_t, Scalar>> forced;  // at the right-end cell
  std::size_t forced_units = 0;
  std::size_t min_support = 0;
  bool solvable = false;
  std::vector<SparseVector> particular;  // one solution, cells 0..depth
};

/// Solves sigma'(x) = v_1 on cells 0..depth-1 over coordinates 1..depth+1
/// and reports which coordinates of x(depth) are forced.
ForcedSupportReport sigma_prime_forced_support(const Field& f, std::uint64_t depth);

/// sigma restricted to the blocks j <= J as a CA over Z with
/// dimV = J(J+1)/2: memory {0, 1}, blocks I and -Phi.
LinearCA truncated_sigma(const Field& f, std::uint64_t big_j);
/// The closed-form inverse: memory {0..J-1}, block k = Phi^k.
LinearCA truncated_sigma_inverse(const Field& f, std::uint64_t big_j);
/// Matrix of Phi on the first J blocks.
Matrix phi_matrix(const Field& f, std::uint64_t big_j);

}  // namespace lca::sigma
