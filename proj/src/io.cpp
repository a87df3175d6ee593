#include "lca/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace lca::io {

namespace {

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::int64_t as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

std::size_t as_size(const json& j, const char* what) {
  const auto v = as_int(j, what);
  if (v < 0) throw ParseError(std::string(what) + " must be nonnegative");
  return static_cast<std::size_t>(v);
}

const json& as_array(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  return j;
}

void check_format(const json& j) {
  if (j.contains("format") && as_int(j.at("format"), "format") != kFormatVersion)
    throw ParseError("unsupported format version");
}

}  // namespace

json group_to_json(const Group& g) {
  switch (g.kind()) {
    case GroupKind::Integers: return {{"kind", "integers"}};
    case GroupKind::Lattice: return {{"kind", "lattice"}, {"dim", g.dimension()}};
    case GroupKind::Free: return {{"kind", "free"}, {"rank", g.rank()}};
    case GroupKind::Finite: {
      json gens = json::array();
      for (const auto& s : g.generators()) gens.push_back(s.coords[0]);
      return {{"kind", "finite"}, {"table", g.table()}, {"identity", g.identity_id()}, {"generators", gens}};
    }
  }
  return {};
}

Group group_from_json(const json& j) {
  const auto& kind = require(j, "kind");
  if (!kind.is_string()) throw ParseError("group kind must be a string");
  const auto k = kind.get<std::string>();
  try {
    if (k == "integers") return Group::integers();
    if (k == "lattice") return Group::lattice(as_size(require(j, "dim"), "dim"));
    if (k == "free") return Group::free(as_size(require(j, "rank"), "rank"));
    if (k == "finite") {
      std::vector<std::vector<std::int64_t>> table;
      for (const auto& row : as_array(require(j, "table"), "table")) {
        std::vector<std::int64_t> r;
        for (const auto& v : as_array(row, "table row")) r.push_back(as_int(v, "table entry"));
        table.push_back(std::move(r));
      }
      std::vector<std::int64_t> gens;
      if (j.contains("generators"))
        for (const auto& v : as_array(j.at("generators"), "generators")) gens.push_back(as_int(v, "generator"));
      return Group::finite(std::move(table), as_int(require(j, "identity"), "identity"), std::move(gens));
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid group: ") + e.what());
  }
  throw ParseError("unknown group kind '" + k + "'");
}

json element_to_json(const Group& g, const GroupElement& e) {
  switch (g.kind()) {
    case GroupKind::Integers:
    case GroupKind::Finite: return e.coords.at(0);
    case GroupKind::Lattice: return e.coords;
    case GroupKind::Free: return format_element(g, e);
  }
  return {};
}

GroupElement element_from_json(const Group& g, const json& j) {
  GroupElement e;
  switch (g.kind()) {
    case GroupKind::Integers:
    case GroupKind::Finite: e = GroupElement({as_int(j, "element")}); break;
    case GroupKind::Lattice:
      for (const auto& c : as_array(j, "lattice element")) e.coords.push_back(as_int(c, "lattice coordinate"));
      break;
    case GroupKind::Free: {
      if (!j.is_string()) throw ParseError("free group elements are strings");
      GroupElement w = g.identity();
      for (char ch : j.get<std::string>()) {
        std::int64_t letter;
        if (ch >= 'a' && ch <= 'z')
          letter = 2 * (ch - 'a');
        else if (ch >= 'A' && ch <= 'Z')
          letter = 2 * (ch - 'A') + 1;
        else
          throw ParseError("free group words use letters a..z and A..Z");
        if (static_cast<std::size_t>(letter / 2) >= g.rank()) throw ParseError("letter beyond the free rank");
        w = g.multiply(w, GroupElement({letter}));
      }
      e = std::move(w);
      break;
    }
  }
  if (!g.contains(e)) throw ParseError("element does not belong to the group");
  return e;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  return rows;
}

Matrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols, const Field& f) {
  const auto& arr = as_array(j, "matrix");
  if (arr.size() != rows) throw ParseError("matrix has the wrong number of rows");
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const Vec row = vec_from_json(arr[i], cols, f);
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = row[c];
  }
  return m;
}

json vec_to_json(const Vec& v) { return v; }

Vec vec_from_json(const json& j, std::size_t dim_v, const Field& f) {
  const auto& arr = as_array(j, "vector");
  if (arr.size() != dim_v) throw ParseError("vector has the wrong length");
  Vec v;
  for (const auto& s : arr) {
    const auto x = as_int(s, "scalar");
    if (x < 0 || x >= static_cast<std::int64_t>(f.modulus())) throw ParseError("scalar outside [0, p)");
    v.push_back(static_cast<Scalar>(x));
  }
  return v;
}

json rule_to_json(const Group& g, const LocalRule& r) {
  json memory = json::array(), blocks = json::array();
  for (std::size_t i = 0; i < r.memory.size(); ++i) {
    memory.push_back(element_to_json(g, r.memory[i]));
    blocks.push_back(matrix_to_json(r.blocks[i]));
  }
  return {{"memory", memory}, {"blocks", blocks}};
}

LocalRule rule_from_json(const Group& g, const Field& f, std::size_t dim_v, const json& j) {
  LocalRule r;
  for (const auto& e : as_array(require(j, "memory"), "memory")) r.memory.push_back(element_from_json(g, e));
  for (const auto& b : as_array(require(j, "blocks"), "blocks")) r.blocks.push_back(matrix_from_json(b, dim_v, dim_v, f));
  if (r.memory.size() != r.blocks.size()) throw ParseError("memory and blocks differ in length");
  return r;
}

json ca_to_json(const LinearCA& ca) {
  json j = rule_to_json(ca.group(), ca.rule());
  j["format"] = kFormatVersion;
  j["group"] = group_to_json(ca.group());
  j["p"] = ca.field().modulus();
  j["dimV"] = ca.dim_v();
  return j;
}

LinearCA ca_from_json(const json& j) {
  check_format(j);
  Group g = group_from_json(require(j, "group"));
  const auto p = as_int(require(j, "p"), "p");
  if (p < 2 || p >= (1LL << 31) || !is_prime(static_cast<std::uint64_t>(p))) throw ParseError("p must be a prime");
  const Field f(static_cast<std::uint32_t>(p));
  const std::size_t dim_v = as_size(require(j, "dimV"), "dimV");
  LocalRule r = rule_from_json(g, f, dim_v, j);
  return LinearCA(std::move(g), f, dim_v, std::move(r));
}

namespace {

json cells_to_json(const Group& g, const std::map<GroupElement, Vec>& cells) {
  json arr = json::array();
  for (const auto& [e, v] : cells) arr.push_back(json::array({element_to_json(g, e), v}));
  return arr;
}

std::map<GroupElement, Vec> cells_from_json(const Group& g, const Field& f, std::size_t dim_v, const json& j) {
  std::map<GroupElement, Vec> cells;
  for (const auto& entry : as_array(j, "cells")) {
    if (!entry.is_array() || entry.size() != 2) throw ParseError("cells are [element, vector] pairs");
    if (!cells.emplace(element_from_json(g, entry[0]), vec_from_json(entry[1], dim_v, f)).second)
      throw ParseError("duplicate cell");
  }
  return cells;
}

// Optional "group" and "dimV" fields must match the automaton they are used with.
void check_domain(const Group& g, std::size_t dim_v, const json& j) {
  if (j.contains("dimV") && as_size(j.at("dimV"), "dimV") != dim_v)
    throw DimensionMismatch("input dimV differs from the automaton's");
  if (j.contains("group") && !(group_from_json(j.at("group")) == g))
    throw GroupMismatch("input is over another group");
}

}  // namespace

json config_to_json(const Group& g, const Configuration& x) {
  json j;
  j["dimV"] = x.dim_v();
  if (const auto* fs = std::get_if<Configuration::FiniteSupport>(&x.data())) {
    j["kind"] = "finite-support";
    j["cells"] = cells_to_json(g, fs->cells);
  } else if (const auto* per = std::get_if<Configuration::Periodic>(&x.data())) {
    j["kind"] = "periodic";
    j["values"] = per->values;
  } else {
    j["kind"] = "constant";
    j["value"] = std::get<Configuration::Constant>(x.data()).value;
  }
  return j;
}

Configuration config_from_json(const Group& g, const Field& f, std::size_t dim_v, const json& j) {
  check_domain(g, dim_v, j);
  const auto& kind = require(j, "kind");
  if (!kind.is_string()) throw ParseError("configuration kind must be a string");
  const auto k = kind.get<std::string>();
  if (k == "finite-support") return Configuration::finite(dim_v, cells_from_json(g, f, dim_v, require(j, "cells")));
  if (k == "periodic") {
    std::vector<Vec> values;
    for (const auto& v : as_array(require(j, "values"), "values")) values.push_back(vec_from_json(v, dim_v, f));
    if (values.empty()) throw ParseError("periodic configuration needs at least one value");
    return Configuration::periodic(dim_v, std::move(values));
  }
  if (k == "constant") return Configuration::constant(vec_from_json(require(j, "value"), dim_v, f));
  throw ParseError("unknown configuration kind '" + k + "'");
}

json pattern_to_json(const Group& g, const Pattern& x, std::size_t dim_v) {
  return {{"kind", "pattern"}, {"dimV", dim_v}, {"cells", cells_to_json(g, x.cells)}};
}

Pattern pattern_from_json(const Group& g, const Field& f, std::size_t dim_v, const json& j) {
  if (!is_pattern_json(j)) throw ParseError("not a pattern");
  check_domain(g, dim_v, j);
  return Pattern{cells_from_json(g, f, dim_v, require(j, "cells"))};
}

bool is_pattern_json(const json& j) {
  return j.is_object() && j.contains("kind") && j.at("kind") == "pattern";
}

json embedding_to_json(const Embedding& e) {
  json images = json::array();
  for (const auto& x : e.images()) images.push_back(element_to_json(e.ambient(), x));
  return {{"format", kFormatVersion},
          {"subgroup", group_to_json(e.sub())},
          {"ambient", group_to_json(e.ambient())},
          {"images", images}};
}

Embedding embedding_from_json(const json& j) {
  check_format(j);
  Group h = group_from_json(require(j, "subgroup"));
  Group g = group_from_json(require(j, "ambient"));
  std::vector<GroupElement> images;
  for (const auto& x : as_array(require(j, "images"), "images")) images.push_back(element_from_json(g, x));
  try {
    return Embedding::from_images(std::move(h), std::move(g), std::move(images));
  } catch (const UnsupportedSubgroup&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid embedding: ") + e.what());
  }
}

json sparse_to_json(const sigma::SparseVector& v) {
  json arr = json::array();
  for (const auto& [i, c] : v.coords()) arr.push_back(json::array({i, c}));
  return arr;
}

sigma::SparseVector sparse_from_json(const Field& f, const json& j) {
  sigma::SparseVector v;
  for (const auto& term : as_array(j, "sparse vector")) {
    if (!term.is_array() || term.size() != 2) throw ParseError("sparse terms are [index, coefficient] pairs");
    const auto i = as_int(term[0], "basis index");
    const auto c = as_int(term[1], "coefficient");
    if (i < 1) throw ParseError("basis indices start at 1");
    if (c < 0 || c >= static_cast<std::int64_t>(f.modulus())) throw ParseError("coefficient outside [0, p)");
    v.add_term(f, static_cast<std::uint64_t>(i), static_cast<Scalar>(c));
  }
  return v;
}

json lazy_to_json(const sigma::LazySparseConfig& x) {
  json cells = json::array();
  for (const auto& [n, v] : x.cells()) cells.push_back(json::array({n, sparse_to_json(v)}));
  json j = {{"cells", cells}, {"tail", nullptr}};
  if (const auto& t = x.tail()) {
    const bool partial = t->kind == sigma::Tail::Kind::PartialSums;
    j["tail"] = {{"start", t->start}, {"kind", partial ? "partial-sums" : "constant"}, {"value", sparse_to_json(t->value)}};
  }
  return j;
}

sigma::LazySparseConfig lazy_from_json(const Field& f, const json& j) {
  std::map<std::int64_t, sigma::SparseVector> cells;
  for (const auto& entry : as_array(require(j, "cells"), "cells")) {
    if (!entry.is_array() || entry.size() != 2) throw ParseError("cells are [index, vector] pairs");
    cells.emplace(as_int(entry[0], "cell"), sparse_from_json(f, entry[1]));
  }
  std::optional<sigma::Tail> tail;
  if (j.contains("tail") && !j.at("tail").is_null()) {
    const auto& t = j.at("tail");
    sigma::Tail out;
    out.start = as_int(require(t, "start"), "tail start");
    const auto kind = require(t, "kind");
    if (kind == "partial-sums")
      out.kind = sigma::Tail::Kind::PartialSums;
    else if (kind == "constant")
      out.kind = sigma::Tail::Kind::Constant;
    else
      throw ParseError("unknown tail kind");
    if (t.contains("value")) out.value = sparse_from_json(f, t.at("value"));
    tail = std::move(out);
  }
  try {
    return sigma::LazySparseConfig(std::move(cells), std::move(tail));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

std::string content_hash(const json& j) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_dump(j)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace lca::io
