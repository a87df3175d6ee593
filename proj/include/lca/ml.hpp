#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lca/ca.hpp"
#include "lca/gf.hpp"

namespace lca {

/// A projective sequence of affine subspaces X_n with linear bonding maps
/// f_nm : ambient(X_m) -> ambient(X_n), m >= n, mapping X_m into X_n.
/// Levels are generated on demand and memoized; copies share the cache.
class ProjectiveAffineSequence {
 public:
  using LevelFn = std::function<AffineSubspace(std::size_t)>;
  using BondingFn = std::function<Matrix(std::size_t n, std::size_t m)>;

  ProjectiveAffineSequence(Field field, LevelFn level, BondingFn bonding);

  const Field& field() const { return field_; }
  const AffineSubspace& level(std::size_t n) const;
  Matrix bonding(std::size_t n, std::size_t m) const;

 private:
  struct Cache;
  Field field_;
  LevelFn level_;
  BondingFn bonding_;
  std::shared_ptr<Cache> cache_;
};

/// Levels X_n = Ker(tau_n) on the windows A_n, bonded by restriction.
ProjectiveAffineSequence kernel_sequence(const LinearCA& ca);
/// Levels X_n = tau_n^-1(y|B_n), bonded by restriction.
ProjectiveAffineSequence preimage_sequence(const LinearCA& ca, const Configuration& y);
/// Selection matrix V^large -> V^small for small a subset of large.
Matrix restriction_matrix(const std::vector<GroupElement>& small, const std::vector<GroupElement>& large,
                          std::size_t dim_v);

/// The images f_nm(X_m) for m = n..cutoff.
struct UniversalChain {
  std::size_t n = 0;
  std::vector<AffineSubspace> images;  // images[i] = f_{n,n+i}(X_{n+i})
  std::optional<std::size_t> plateau;  // absolute level m

  /// Each image contains the next one.
  bool non_increasing(const Field& f) const;
  /// The image at the plateau; requires plateau.
  const AffineSubspace& stable() const;
};

/// Plateau = first m whose image equals the next plateau_k - 1 images. This
/// is evidence of stabilization only; everything built on it is re-verified.
UniversalChain universal_spaces(const ProjectiveAffineSequence& seq, std::size_t n, std::size_t cutoff,
                                std::size_t plateau_k = 2);

struct LiftRecord {
  std::size_t n = 0;               // lifted from level n to n + 1
  std::size_t witness_level = 0;   // p with x_{n+1} = f_{n+1,p}(x_p)
  Vec from;
  Vec to;
  bool restricts_correctly = false;  // f_{n,n+1}(to) == from
  bool in_stable_image = false;      // to lies in the stable image at n + 1
};

/// Lifts x (a member of the stable image at n) to level n + 1 by solving
/// for x_p in X_p with f_np(x_p) = x, trying p from the later plateau up to
/// `cutoff`. Picks the canonical smallest lift. nullopt means no lift was
/// found within the cutoff.
std::optional<LiftRecord> lift_element(const ProjectiveAffineSequence& seq, const UniversalChain& at_n,
                                       const UniversalChain& at_next, const Vec& x, std::size_t cutoff);

struct Extracted {
  std::vector<Vec> chain;  // x'_0 <- x'_1 <- ... <- x'_N
  std::vector<UniversalChain> chains;
  std::vector<LiftRecord> lifts;
};
struct EmptyLevel {
  std::size_t level = 0;
};
struct CutoffFailure {
  std::size_t n = 0;
  std::string reason;
};
using ExtractionResult = std::variant<Extracted, EmptyLevel, CutoffFailure>;

ExtractionResult extract_limit_prefix(const ProjectiveAffineSequence& seq, std::size_t big_n, std::size_t cutoff,
                                      std::size_t plateau_k = 2);

struct ReversibilityCertificate {
  LocalRule inverse;
  LocalRule left;   // normalized rule of inverse o tau
  LocalRule right;  // normalized rule of tau o inverse
  std::size_t radius = 0;
};
struct KernelWitness {
  Configuration witness;
};
/// A pattern on B_n with no preimage under tau_n.
struct WindowWitness {
  std::size_t n = 0;
  Pattern pattern;
};
/// inverse o tau = Id but tau o inverse != Id, so tau is not surjective.
struct LeftInverseWitness {
  LocalRule left_inverse;
};
struct NotInvertible {
  std::variant<KernelWitness, WindowWitness, LeftInverseWitness> witness;
};
struct Unknown {
  std::size_t radius = 0;
  std::string reason;
};
using InvertResult = std::variant<ReversibilityCertificate, NotInvertible, Unknown>;

/// Candidate inverse with memory A_n, solving inverse o tau = Id; nullopt if
/// no such rule exists at this radius.
std::optional<LinearCA> solve_left_inverse(const LinearCA& ca, std::size_t n);

InvertResult invert_ca(const LinearCA& ca, std::size_t max_radius);

/// Nonzero kernel configuration: finitely supported on ball(k - 1) for
/// k <= support_bound, or periodic of period k <= period_bound. Periods
/// above 1 are only tried on Z; period 1 means constant, on any group.
std::optional<Configuration> kernel_witness(const LinearCA& ca, std::size_t support_bound,
                                            std::size_t period_bound);
std::optional<Configuration> finite_kernel_witness(const LinearCA& ca, const std::vector<GroupElement>& support);
std::optional<Configuration> periodic_kernel_witness(const LinearCA& ca, std::size_t period);

std::optional<WindowWitness> surjectivity_counterexample(const LinearCA& ca, std::size_t max_radius);
/// Independent consistency check: rank(W) == rank([W | b]).
bool window_fiber_nonempty(const LinearCA& ca, std::size_t n, const Pattern& target);

struct Preimage {
  Pattern pattern;  // on A_N
  Extracted extraction;
};
struct NotInImage {
  std::size_t n = 0;
  Pattern target_window;  // y restricted to B_n, whose fiber is empty
};
using PreimageResult = std::variant<Preimage, NotInImage, Unknown>;

PreimageResult preimage_extract(const LinearCA& ca, const Configuration& y, std::size_t big_n,
                                std::size_t cutoff, std::size_t plateau_k = 2);

}  // namespace lca
