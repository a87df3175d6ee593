#pragma once

#include <cstdint>
#include <string>

#include "lca/io.hpp"
#include "lca/ml.hpp"

namespace lca::cert {

using io::json;

/// Certificate files: {format, kind, ca, ca_hash, payload, transcript}.
/// The transcript is a pure function of (kind, ca, payload), so `verify`
/// recomputes it and compares exactly. Every transcript carries "valid".
enum class Verdict { Positive, Negative, Unknown };

json make(const std::string& kind, const json& ca, const json& payload);

json reversible(const LinearCA& ca, const ReversibilityCertificate& c);
json not_invertible(const LinearCA& ca, const NotInvertible& c);
json unknown(const LinearCA& ca, const Unknown& u);
json from_invert(const LinearCA& ca, const InvertResult& r);

json kernel(const LinearCA& ca, const Configuration& witness);

json preimage(const LinearCA& ca, const Configuration& y, std::size_t big_n, const Preimage& p);
json not_in_image(const LinearCA& ca, const Configuration& y, const NotInImage& n);
json unknown_preimage(const LinearCA& ca, const Configuration& y, const Unknown& u);

json sigma_nonreversibility(const Field& f, std::uint64_t j0, std::int64_t window_radius);
json sigma_prime_nonclosure(const Field& f, std::uint64_t depth, std::int64_t window);

/// Recomputes the transcript for `cert`; throws io::ParseError on malformed
/// payloads.
json transcript(const json& cert);

Verdict verdict(const json& cert);

struct Check {
  bool ok = false;
  std::string message;
};
Check verify(const json& cert);

}  // namespace lca::cert
