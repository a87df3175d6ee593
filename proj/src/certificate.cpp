#include "lca/certificate.hpp"

#include "lca/counterexamples.hpp"

namespace lca::cert {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw io::ParseError(std::string("certificate lacks '") + key + "'");
  return j.at(key);
}

std::size_t size_field(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    throw io::ParseError(std::string(key) + " must be a nonnegative integer");
  return v.get<std::size_t>();
}

Field field_of(const json& payload) {
  const auto p = size_field(payload, "p");
  if (p < 2 || p >= (1ULL << 31) || !is_prime(p)) throw io::ParseError("p must be a prime");
  return Field(static_cast<std::uint32_t>(p));
}

json rule_json(const LinearCA& ca) { return io::rule_to_json(ca.group(), ca.rule()); }

LinearCA rule_ca(const LinearCA& ca, const json& rule) {
  return LinearCA(ca.group(), ca.field(), ca.dim_v(), io::rule_from_json(ca.group(), ca.field(), ca.dim_v(), rule));
}

Configuration config_of(const LinearCA& ca, const json& j) {
  return io::config_from_json(ca.group(), ca.field(), ca.dim_v(), j);
}

Pattern pattern_of(const LinearCA& ca, const json& j) {
  return io::pattern_from_json(ca.group(), ca.field(), ca.dim_v(), j);
}

json pattern_json(const LinearCA& ca, const Pattern& x) { return io::pattern_to_json(ca.group(), x, ca.dim_v()); }

json compositions(const LinearCA& ca, const LinearCA& nu) {
  const auto left = compose(nu, ca);
  const auto right = compose(ca, nu);
  return {{"left", rule_json(left)},
          {"right", rule_json(right)},
          {"left_identity", equals_identity(left)},
          {"right_identity", equals_identity(right)}};
}

json window_check(const LinearCA& ca, std::size_t n, const Pattern& target) {
  const auto w = window_map(ca, n);
  const bool on_window = target.domain() == w.target;
  const bool fiber = on_window && window_fiber_nonempty(ca, n, target);
  return {{"n", n}, {"domain_is_window", on_window}, {"fiber_nonempty", fiber}, {"valid", on_window && !fiber}};
}

json transcript_ca(const std::string& kind, const LinearCA& ca, const json& payload) {
  if (kind == "reversible") {
    json t = compositions(ca, rule_ca(ca, field(payload, "inverse")));
    t["valid"] = t["left_identity"].get<bool>() && t["right_identity"].get<bool>();
    return t;
  }
  if (kind == "left-inverse-only") {
    // nu o tau = Id and tau o nu != Id: tau is injective, and were it also
    // surjective nu would be its two-sided inverse.
    json t = compositions(ca, rule_ca(ca, field(payload, "left_inverse")));
    t["valid"] = t["left_identity"].get<bool>() && !t["right_identity"].get<bool>();
    return t;
  }
  if (kind == "kernel-witness") {
    const auto x = canonicalize(ca.group(), ca.field(), config_of(ca, field(payload, "witness")));
    const auto image = canonicalize(ca.group(), ca.field(), apply_config(ca, x));
    return {{"witness_nonzero", !x.is_zero()},
            {"image", io::config_to_json(ca.group(), image)},
            {"image_zero", image.is_zero()},
            {"valid", !x.is_zero() && image.is_zero()}};
  }
  if (kind == "window-witness") return window_check(ca, size_field(payload, "n"), pattern_of(ca, field(payload, "pattern")));
  if (kind == "not-in-image") {
    const auto n = size_field(payload, "n");
    const auto y = config_of(ca, field(payload, "target"));
    return window_check(ca, n, restrict_to(y, window_map(ca, n).target));
  }
  if (kind == "preimage") {
    const auto n = size_field(payload, "window");
    const auto y = config_of(ca, field(payload, "target"));
    const auto x = pattern_of(ca, field(payload, "pattern"));
    const auto w = window_map(ca, n);
    const bool on_window = x.domain() == w.source;
    const auto image = apply_pattern(ca, x);
    const bool agrees = on_window && image.domain() == w.target && image == restrict_to(y, w.target);
    return {{"window", n},
            {"domain_is_window", on_window},
            {"image", pattern_json(ca, image)},
            {"agrees_on_window", agrees},
            {"valid", agrees}};
  }
  if (kind == "unknown" || kind == "unknown-preimage")
    return {{"radius", size_field(payload, "radius")}, {"valid", true}};
  throw io::ParseError("unknown certificate kind '" + kind + "'");
}

sigma::SparseVector value_at(const Field& f, const sigma::LazySparseConfig& x, std::int64_t n) {
  return x.value_at(f, n);
}

json sparse_at(const Field& f, const sigma::LazySparseConfig& x, std::int64_t n) {
  return io::sparse_to_json(value_at(f, x, n));
}

// Uses sigma_apply only: sigma is bijective, so sigma(pre) == target pins
// pre down as the inverse image.
json transcript_sigma(const json& payload) {
  const Field f = field_of(payload);
  const auto j0 = size_field(payload, "j0");
  const auto r = static_cast<std::int64_t>(size_field(payload, "window"));
  const auto y = io::lazy_from_json(f, field(payload, "y"));
  const auto z = io::lazy_from_json(f, field(payload, "z"));
  const auto y_pre = io::lazy_from_json(f, field(payload, "y_preimage"));
  const auto z_pre = io::lazy_from_json(f, field(payload, "z_preimage"));
  if (j0 < 2) throw io::ParseError("j0 must be at least 2");

  bool agree = true;
  for (std::int64_t n = -r; n <= static_cast<std::int64_t>(j0) - 2; ++n)
    agree = agree && value_at(f, y, n) == value_at(f, z, n);
  const bool y_ok = !y.tail() && !y_pre.tail() && sigma::sigma_apply(f, y_pre) == y;
  const bool z_ok = !z.tail() && !z_pre.tail() && sigma::sigma_apply(f, z_pre) == z;
  const auto expected = sigma::block_start(j0);
  const auto y0 = value_at(f, y_pre, 0);
  const auto z0 = value_at(f, z_pre, 0);
  json t = {{"agree_left", agree},
            {"y_preimage_checked", y_ok},
            {"z_preimage_checked", z_ok},
            {"y_inverse_at_0", io::sparse_to_json(y0)},
            {"z_inverse_at_0", io::sparse_to_json(z0)},
            {"expected_index", expected}};
  bool valid = agree && y_ok && z_ok && y0 != z0 && z0 == sigma::SparseVector::basis(expected);

  if (payload.contains("literal_reading")) {
    const auto& lit = payload.at("literal_reading");
    const auto lz = io::lazy_from_json(f, field(lit, "z"));
    const auto lpre = io::lazy_from_json(f, field(lit, "z_preimage"));
    const bool ok = !lz.tail() && !lpre.tail() && sigma::sigma_apply(f, lpre) == lz;
    t["literal_reading"] = {{"preimage_checked", ok}, {"inverse_at_0", sparse_at(f, lpre, 0)}};
    valid = valid && ok;
  }
  t["valid"] = valid;
  return t;
}

json transcript_sigma_prime(const json& payload) {
  const Field f = field_of(payload);
  const auto depth = size_field(payload, "depth");
  const auto m = static_cast<std::int64_t>(size_field(payload, "window"));
  const auto x = io::lazy_from_json(f, field(payload, "approximant"));
  if (depth == 0) throw io::ParseError("depth must be at least 1");

  const auto image = sigma::sigma_prime_apply(f, x);
  const auto v1 = sigma::SparseVector::basis(1);
  bool closure = true;
  for (std::int64_t n = -m; n <= m; ++n) closure = closure && image.value_at(f, n) == v1;

  const auto forced = sigma::sigma_prime_forced_support(f, depth);
  json coords = json::array();
  for (const auto& [k, v] : forced.forced) coords.push_back(json::array({k, v}));
  return {{"closure_on_window", closure},
          {"forced", coords},
          {"forced_units", forced.forced_units},
          {"min_support", forced.min_support},
          {"valid", closure && forced.solvable && forced.forced_units == depth}};
}

}  // namespace

json make(const std::string& kind, const json& ca, const json& payload) {
  json j = {{"format", io::kFormatVersion}, {"kind", kind}, {"ca", ca}, {"payload", payload}};
  j["ca_hash"] = ca.is_null() ? json(nullptr) : json(io::content_hash(ca));
  j["transcript"] = transcript(j);
  return j;
}

json reversible(const LinearCA& ca, const ReversibilityCertificate& c) {
  return make("reversible", io::ca_to_json(ca), {{"inverse", io::rule_to_json(ca.group(), c.inverse)}, {"radius", c.radius}});
}

json not_invertible(const LinearCA& ca, const NotInvertible& c) {
  const json caj = io::ca_to_json(ca);
  if (const auto* k = std::get_if<KernelWitness>(&c.witness)) return kernel(ca, k->witness);
  if (const auto* w = std::get_if<WindowWitness>(&c.witness))
    return make("window-witness", caj, {{"n", w->n}, {"pattern", pattern_json(ca, w->pattern)}});
  const auto& l = std::get<LeftInverseWitness>(c.witness);
  return make("left-inverse-only", caj, {{"left_inverse", io::rule_to_json(ca.group(), l.left_inverse)}});
}

json unknown(const LinearCA& ca, const Unknown& u) {
  return make("unknown", io::ca_to_json(ca), {{"radius", u.radius}, {"reason", u.reason}});
}

json from_invert(const LinearCA& ca, const InvertResult& r) {
  if (const auto* c = std::get_if<ReversibilityCertificate>(&r)) return reversible(ca, *c);
  if (const auto* n = std::get_if<NotInvertible>(&r)) return not_invertible(ca, *n);
  return unknown(ca, std::get<Unknown>(r));
}

json kernel(const LinearCA& ca, const Configuration& witness) {
  return make("kernel-witness", io::ca_to_json(ca), {{"witness", io::config_to_json(ca.group(), witness)}});
}

json preimage(const LinearCA& ca, const Configuration& y, std::size_t big_n, const Preimage& p) {
  return make("preimage", io::ca_to_json(ca),
              {{"target", io::config_to_json(ca.group(), y)}, {"window", big_n}, {"pattern", pattern_json(ca, p.pattern)}});
}

json not_in_image(const LinearCA& ca, const Configuration& y, const NotInImage& n) {
  return make("not-in-image", io::ca_to_json(ca), {{"target", io::config_to_json(ca.group(), y)}, {"n", n.n}});
}

json unknown_preimage(const LinearCA& ca, const Configuration& y, const Unknown& u) {
  return make("unknown-preimage", io::ca_to_json(ca),
              {{"target", io::config_to_json(ca.group(), y)}, {"radius", u.radius}, {"reason", u.reason}});
}

json sigma_nonreversibility(const Field& f, std::uint64_t j0, std::int64_t window_radius) {
  const auto w = sigma::sigma_nonreversibility_witness(f, j0, window_radius);
  const auto cell = static_cast<std::int64_t>(j0) - 1;
  const sigma::LazySparseConfig literal({{cell, sigma::SparseVector::basis(sigma::block_end(j0 - 1))}});
  json payload = {{"p", f.modulus()},
                  {"j0", j0},
                  {"window", window_radius},
                  {"y", io::lazy_to_json(w.y)},
                  {"z", io::lazy_to_json(w.z)},
                  {"y_preimage", io::lazy_to_json(sigma::sigma_inverse_apply(f, w.y))},
                  {"z_preimage", io::lazy_to_json(sigma::sigma_inverse_apply(f, w.z))},
                  {"literal_reading",
                   {{"note", "z placed at the top of block j0 - 1 instead; its inverse image vanishes at 0"},
                    {"z", io::lazy_to_json(literal)},
                    {"z_preimage", io::lazy_to_json(sigma::sigma_inverse_apply(f, literal))}}}};
  return make("sigma-nonreversibility", nullptr, payload);
}

json sigma_prime_nonclosure(const Field& f, std::uint64_t depth, std::int64_t window) {
  const auto [x, report] = sigma::sigma_prime_closure_witness(f, window);
  (void)report;
  json payload = {{"p", f.modulus()}, {"depth", depth}, {"window", window}, {"approximant", io::lazy_to_json(x)}};
  return make("sigma-prime-nonclosure", nullptr, payload);
}

json transcript(const json& cert) {
  const auto& kind_j = field(cert, "kind");
  if (!kind_j.is_string()) throw io::ParseError("kind must be a string");
  const auto kind = kind_j.get<std::string>();
  const auto& payload = field(cert, "payload");
  if (kind == "sigma-nonreversibility") return transcript_sigma(payload);
  if (kind == "sigma-prime-nonclosure") return transcript_sigma_prime(payload);
  return transcript_ca(kind, io::ca_from_json(field(cert, "ca")), payload);
}

Verdict verdict(const json& cert) {
  const auto kind = field(cert, "kind").get<std::string>();
  if (kind == "reversible" || kind == "preimage") return Verdict::Positive;
  if (kind == "unknown" || kind == "unknown-preimage") return Verdict::Unknown;
  return Verdict::Negative;
}

Check verify(const json& cert) {
  if (!cert.contains("format") || cert.at("format") != io::kFormatVersion) return {false, "unsupported format version"};
  const auto& ca = field(cert, "ca");
  const json expected_hash = ca.is_null() ? json(nullptr) : json(io::content_hash(ca));
  if (field(cert, "ca_hash") != expected_hash) return {false, "CA hash mismatch"};
  const json t = transcript(cert);
  if (t != field(cert, "transcript")) return {false, "transcript mismatch"};
  if (!t.at("valid").get<bool>()) return {false, "transcript does not establish the claim"};
  return {true, "ok"};
}

}  // namespace lca::cert
