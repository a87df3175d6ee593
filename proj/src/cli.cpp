#include "lca/cli.hpp"

#include <CLI11.hpp>

#include <ostream>
#include <random>

#include "lca/certificate.hpp"
#include "lca/counterexamples.hpp"
#include "lca/io.hpp"
#include "lca/ml.hpp"
#include "lca/transfer.hpp"

namespace lca::cli {

namespace {

using io::json;

struct Options {
  std::string ca_file, second_file, input_file, embedding_file, cert_file, out_file;
  std::size_t max_radius = 8;
  std::size_t period = 8;
  std::size_t cutoff = 14;
  std::size_t plateau_k = 2;
  std::size_t window = 6;
  std::size_t depth = 12;
  std::int64_t demo_window = -1;
  std::uint64_t j0 = 2;
  std::uint32_t p = 2;
  std::uint64_t seed = 1;
  bool memory_subgroup = false;
};

void emit(const Options& o, std::ostream& out, const json& j) {
  const auto text = io::canonical_dump(j);
  if (o.out_file.empty() || o.out_file == "-")
    out << text;
  else
    io::write_text(o.out_file, text);
}

int exit_for(cert::Verdict v) {
  switch (v) {
    case cert::Verdict::Positive: return kPositive;
    case cert::Verdict::Negative: return kNegative;
    case cert::Verdict::Unknown: return kUnknown;
  }
  return kFailure;
}

int cmd_eval(const Options& o, std::ostream& out) {
  const auto ca = io::ca_from_json(io::read_json_file(o.ca_file));
  const auto in = io::read_json_file(o.input_file);
  if (io::is_pattern_json(in)) {
    const auto x = io::pattern_from_json(ca.group(), ca.field(), ca.dim_v(), in);
    emit(o, out, io::pattern_to_json(ca.group(), apply_pattern(ca, x), ca.dim_v()));
  } else {
    const auto x = io::config_from_json(ca.group(), ca.field(), ca.dim_v(), in);
    emit(o, out, io::config_to_json(ca.group(), canonicalize(ca.group(), ca.field(), apply_config(ca, x))));
  }
  return kPositive;
}

int cmd_compose(const Options& o, std::ostream& out) {
  const auto outer = io::ca_from_json(io::read_json_file(o.ca_file));
  const auto inner = io::ca_from_json(io::read_json_file(o.second_file));
  emit(o, out, io::ca_to_json(compose(outer, inner)));
  return kPositive;
}

int cmd_invert(const Options& o, std::ostream& out, std::ostream& err) {
  const auto ca = io::ca_from_json(io::read_json_file(o.ca_file));
  const auto c = cert::from_invert(ca, invert_ca(ca, o.max_radius));
  emit(o, out, c);
  err << "invert: " << c.at("kind").get<std::string>() << "\n";
  return exit_for(cert::verdict(c));
}

int cmd_kernel(const Options& o, std::ostream& out, std::ostream& err) {
  const auto ca = io::ca_from_json(io::read_json_file(o.ca_file));
  if (auto w = kernel_witness(ca, o.max_radius, o.period)) {
    emit(o, out, cert::kernel(ca, *w));
    return kNegative;
  }
  err << "kernel-witness: none with support radius < " << o.max_radius << " or period <= " << o.period << "\n";
  emit(o, out, cert::unknown(ca, Unknown{o.max_radius, "no kernel witness within the search bounds"}));
  return kUnknown;
}

int cmd_preimage(const Options& o, std::ostream& out, std::ostream& err) {
  const auto ca = io::ca_from_json(io::read_json_file(o.ca_file));
  const auto y = io::config_from_json(ca.group(), ca.field(), ca.dim_v(), io::read_json_file(o.input_file));
  const auto r = preimage_extract(ca, y, o.window, o.cutoff, o.plateau_k);
  json c;
  if (const auto* p = std::get_if<Preimage>(&r))
    c = cert::preimage(ca, y, o.window, *p);
  else if (const auto* n = std::get_if<NotInImage>(&r))
    c = cert::not_in_image(ca, y, *n);
  else
    c = cert::unknown_preimage(ca, y, std::get<Unknown>(r));
  emit(o, out, c);
  err << "preimage: " << c.at("kind").get<std::string>() << "\n";
  return exit_for(cert::verdict(c));
}

int cmd_restrict(const Options& o, std::ostream& out) {
  const auto ca = io::ca_from_json(io::read_json_file(o.ca_file));
  if (o.memory_subgroup == !o.embedding_file.empty())
    throw CLI::ValidationError("restrict", "give exactly one of --embedding and --memory-subgroup");
  const auto sub = o.memory_subgroup ? restrict_to_memory_subgroup(ca)
                                     : restrict_ca(ca, io::embedding_from_json(io::read_json_file(o.embedding_file)));
  emit(o, out, io::ca_to_json(sub));
  return kPositive;
}

int cmd_induce(const Options& o, std::ostream& out) {
  const auto ca = io::ca_from_json(io::read_json_file(o.ca_file));
  emit(o, out, io::ca_to_json(induce_ca(ca, io::embedding_from_json(io::read_json_file(o.embedding_file)))));
  return kPositive;
}

// Random sparse configurations: up to 8 cells, coordinates in blocks j <= 6.
bool sigma_round_trips(const Field& f, std::uint64_t seed, std::ostream& err) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> ncells(0, 8), cell(-10, 10), nterms(1, 4);
  std::uniform_int_distribution<std::uint64_t> index(1, sigma::block_end(6));
  std::uniform_int_distribution<Scalar> coeff(1, f.modulus() - 1);
  const int trials = 64;
  for (int t = 0; t < trials; ++t) {
    std::map<std::int64_t, sigma::SparseVector> cells;
    for (int c = ncells(rng); c > 0; --c) {
      auto& v = cells[cell(rng)];
      for (int k = nterms(rng); k > 0; --k) v.add_term(f, index(rng), coeff(rng));
    }
    const sigma::LazySparseConfig x(std::move(cells));
    if (sigma::sigma_apply(f, sigma::sigma_inverse_apply(f, x)) != x ||
        sigma::sigma_inverse_apply(f, sigma::sigma_apply(f, x)) != x) {
      err << "demo sigma: round trip failed at trial " << t << "\n";
      return false;
    }
  }
  err << "demo sigma: " << trials << " random round trips agree (seed " << seed << ")\n";
  return true;
}

int cmd_demo_sigma(const Options& o, std::ostream& out, std::ostream& err) {
  const Field f(o.p);
  const std::int64_t r = o.demo_window < 0 ? static_cast<std::int64_t>(o.j0) : o.demo_window;
  const auto c = cert::sigma_nonreversibility(f, o.j0, r);
  emit(o, out, c);
  const auto& t = c.at("transcript");
  err << "demo sigma: j0 = " << o.j0 << ", inverse image of z at 0 = " << t.at("z_inverse_at_0").dump()
      << ", expected v_" << t.at("expected_index").dump() << "\n"
      << "demo sigma: literal reading (top of block j0 - 1) gives "
      << t.at("literal_reading").at("inverse_at_0").dump() << " at 0\n";
  const bool trips = sigma_round_trips(f, o.seed, err);
  return t.at("valid").get<bool>() && trips ? kPositive : kFailure;
}

int cmd_demo_sigma_prime(const Options& o, std::ostream& out, std::ostream& err) {
  const Field f(o.p);
  const std::int64_t m = o.demo_window < 0 ? 16 : o.demo_window;
  const auto c = cert::sigma_prime_nonclosure(f, o.depth, m);
  emit(o, out, c);
  const auto& t = c.at("transcript");
  err << "demo sigma-prime: closure on [-" << m << ", " << m << "] " << (t.at("closure_on_window").get<bool>() ? "holds" : "fails")
      << ", forced units at depth " << o.depth << ": " << t.at("forced_units").dump() << "\n";
  return t.at("valid").get<bool>() ? kPositive : kFailure;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const auto c = io::read_json_file(o.cert_file);
  const auto check = cert::verify(c);
  out << (check.ok ? "verified: " : "rejected: ") << check.message << "\n";
  return check.ok ? kPositive : kFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Linear cellular automata over groups with exact certificates", "lca"};
  app.require_subcommand(1);
  Options o;

  auto out_opt = [&](CLI::App* s) { s->add_option("-o,--out", o.out_file, "Output file (default stdout)"); };

  auto* eval = app.add_subcommand("eval", "Apply a CA to a configuration or pattern");
  eval->add_option("ca", o.ca_file)->required();
  eval->add_option("input", o.input_file)->required();
  out_opt(eval);

  auto* comp = app.add_subcommand("compose", "Compose OUTER o INNER");
  comp->add_option("outer", o.ca_file)->required();
  comp->add_option("inner", o.second_file)->required();
  out_opt(comp);

  auto* inv = app.add_subcommand("invert", "Synthesize an inverse rule or a witness against one");
  inv->add_option("ca", o.ca_file)->required();
  inv->add_option("--max-radius", o.max_radius, "Largest inverse memory radius")->capture_default_str();
  out_opt(inv);

  auto* ker = app.add_subcommand("kernel-witness", "Search for a nonzero kernel configuration");
  ker->add_option("ca", o.ca_file)->required();
  ker->add_option("--max-radius", o.max_radius, "Supports within ball(k - 1), k up to this")->capture_default_str();
  ker->add_option("--period", o.period, "Largest period tried on Z")->capture_default_str();
  out_opt(ker);

  auto* pre = app.add_subcommand("preimage", "Extract a preimage prefix on a window");
  pre->add_option("ca", o.ca_file)->required();
  pre->add_option("target", o.input_file)->required();
  pre->add_option("--window", o.window, "Window index N")->capture_default_str();
  pre->add_option("--cutoff", o.cutoff, "Largest level examined")->capture_default_str();
  pre->add_option("--plateau-k", o.plateau_k, "Equal consecutive images that count as stable")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  out_opt(pre);

  auto* res = app.add_subcommand("restrict", "Restrict a CA to a subgroup containing its memory");
  res->add_option("ca", o.ca_file)->required();
  res->add_option("--embedding", o.embedding_file, "Embedding file");
  res->add_flag("--memory-subgroup", o.memory_subgroup, "Use the subgroup generated by the memory");
  out_opt(res);

  auto* ind = app.add_subcommand("induce", "Induce a CA from a subgroup to the ambient group");
  ind->add_option("ca", o.ca_file)->required();
  ind->add_option("--embedding", o.embedding_file, "Embedding file")->required();
  out_opt(ind);

  auto* demo = app.add_subcommand("demo", "Counterexample witnesses");
  demo->require_subcommand(1);
  auto* ds = demo->add_subcommand("sigma", "Bijective but not reversible");
  ds->add_option("--j0", o.j0, "Block index of the witness, at least 2")->capture_default_str();
  ds->add_option("--window", o.demo_window, "Left window radius (default j0)");
  ds->add_option("-p", o.p, "Field modulus")->capture_default_str();
  ds->add_option("--seed", o.seed, "Seed for random round-trip checks")->capture_default_str();
  out_opt(ds);
  auto* dp = demo->add_subcommand("sigma-prime", "Image not closed");
  dp->add_option("--depth", o.depth, "Forced-support depth")->capture_default_str()->check(CLI::PositiveNumber);
  dp->add_option("--window", o.demo_window, "Closure window radius (default 16)");
  dp->add_option("-p", o.p, "Field modulus")->capture_default_str();
  out_opt(dp);

  auto* ver = app.add_subcommand("verify", "Recheck a certificate");
  ver->add_option("certificate", o.cert_file)->required();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPositive : kUsage;
  }

  try {
    if (*eval) return cmd_eval(o, out);
    if (*comp) return cmd_compose(o, out);
    if (*inv) return cmd_invert(o, out, err);
    if (*ker) return cmd_kernel(o, out, err);
    if (*pre) return cmd_preimage(o, out, err);
    if (*res) return cmd_restrict(o, out);
    if (*ind) return cmd_induce(o, out);
    if (*ds) return cmd_demo_sigma(o, out, err);
    if (*dp) return cmd_demo_sigma_prime(o, out, err);
    if (*ver) return cmd_verify(o, out);
  } catch (const CLI::ValidationError& e) {
    err << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const io::ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const io::json::exception& e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const GroupMismatch& e) {
    err << "domain mismatch: " << e.what() << "\n";
    return kDomainMismatch;
  } catch (const DimensionMismatch& e) {
    err << "domain mismatch: " << e.what() << "\n";
    return kDomainMismatch;
  } catch (const UnsupportedSubgroup& e) {
    err << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << "\n";
    return kResourceLimit;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

}  // namespace lca::cli
