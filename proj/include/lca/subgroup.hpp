#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "lca/group.hpp"

namespace lca {

class UnsupportedSubgroup : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An injective homomorphism from a subgroup H into an ambient group G,
/// together with membership recognition for its image.
///
/// Two shapes are supported. When H is Z or Z^r the embedding is given by the
/// images of the standard basis (these must commute in G, which holds for Z,
/// Z^d, and for a single word in a free group). When H is finite the image of
/// every element id is listed.
class Embedding {
 public:
  /// Builds an embedding from images of H's standard generators (H integers
  /// or lattice) or of all of H's elements (H finite). Injectivity and the
  /// homomorphism property are certified; otherwise throws.
  static Embedding from_images(Group sub, Group ambient, std::vector<GroupElement> images);

  const Group& sub() const { return sub_; }
  const Group& ambient() const { return ambient_; }
  const std::vector<GroupElement>& images() const { return images_; }

  GroupElement embed(const GroupElement& h) const;
  /// H-form of g when g lies in the image, nullopt otherwise.
  std::optional<GroupElement> recognize(const GroupElement& g) const;

  friend bool operator==(const Embedding& a, const Embedding& b) {
    return a.sub_ == b.sub_ && a.ambient_ == b.ambient_ && a.images_ == b.images_;
  }

 private:
  Embedding(Group sub, Group ambient, std::vector<GroupElement> images)
      : sub_(std::move(sub)), ambient_(std::move(ambient)), images_(std::move(images)) {}

  std::optional<GroupElement> recognize_abelian(const GroupElement& g) const;
  std::optional<GroupElement> recognize_free(const GroupElement& g) const;

  Group sub_;
  Group ambient_;
  std::vector<GroupElement> images_;
  // Free-abelian case inside Z^d: echelon form E = U * B of the image rows.
  std::vector<std::vector<std::int64_t>> echelon_;
  std::vector<std::vector<std::int64_t>> transform_;
  std::vector<std::size_t> pivots_;
};

/// The subgroup generated by M, with canonical forms of its own.
/// Supported: G integers (H = dZ), G lattice (Hermite basis), G finite
/// (closure), G free with a single nontrivial element of M.
Embedding subgroup_generated(const Group& g, const std::vector<GroupElement>& m);

/// Integer row echelon (Hermite) form: returns the nonzero rows of H = U*rows
/// with positive pivots and entries above each pivot reduced into [0, pivot).
struct HermiteForm {
  std::vector<std::vector<std::int64_t>> rows;       // nonzero echelon rows
  std::vector<std::vector<std::int64_t>> transform;  // U restricted to those rows
  std::vector<std::size_t> pivots;
};
HermiteForm hermite_form(const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols);

}  // namespace lca
