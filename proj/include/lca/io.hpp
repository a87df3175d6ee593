#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "lca/ca.hpp"
#include "lca/counterexamples.hpp"
#include "lca/subgroup.hpp"

namespace lca::io {

using nlohmann::json;

inline constexpr int kFormatVersion = 1;

/// Malformed or schema-violating input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json group_to_json(const Group& g);
Group group_from_json(const json& j);

json element_to_json(const Group& g, const GroupElement& e);
GroupElement element_from_json(const Group& g, const json& j);

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols, const Field& f);

json vec_to_json(const Vec& v);
Vec vec_from_json(const json& j, std::size_t dim_v, const Field& f);

/// {"memory": [...], "blocks": [...]}
json rule_to_json(const Group& g, const LocalRule& r);
LocalRule rule_from_json(const Group& g, const Field& f, std::size_t dim_v, const json& j);

json ca_to_json(const LinearCA& ca);
LinearCA ca_from_json(const json& j);

json config_to_json(const Group& g, const Configuration& x);
Configuration config_from_json(const Group& g, const Field& f, std::size_t dim_v, const json& j);

json pattern_to_json(const Group& g, const Pattern& x, std::size_t dim_v);
Pattern pattern_from_json(const Group& g, const Field& f, std::size_t dim_v, const json& j);
bool is_pattern_json(const json& j);

json embedding_to_json(const Embedding& e);
Embedding embedding_from_json(const json& j);

json sparse_to_json(const sigma::SparseVector& v);
sigma::SparseVector sparse_from_json(const Field& f, const json& j);
json lazy_to_json(const sigma::LazySparseConfig& x);
sigma::LazySparseConfig lazy_from_json(const Field& f, const json& j);

/// Sorted keys, two-space indent, trailing newline.
std::string canonical_dump(const json& j);
/// FNV-1a 64-bit digest of canonical_dump, as 16 hex digits.
std::string content_hash(const json& j);

json read_json_file(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace lca::io
