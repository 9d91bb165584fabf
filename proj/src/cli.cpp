#include "irrgen/cli.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "irrgen/certificate_io.hpp"
#include "irrgen/certify.hpp"
#include "irrgen/descriptor.hpp"
#include "irrgen/nielsen.hpp"
#include "irrgen/product.hpp"
#include "irrgen/redundancy.hpp"

namespace irrgen {

namespace {

using nlohmann::ordered_json;

struct GlobalConfig {
  int threads = 0;
  std::uint64_t seed = 1;
  std::uint64_t node_budget = 100'000'000;
  double time_budget = 600.0;
  std::string format = "table";
  std::vector<std::uint32_t> primes;
  int exceptional_floor = kDefaultExceptionalFloor;
  int max_primes = 10;
  bool timing = false;
};

struct Result {
  ordered_json json;
  int code = kExitOk;
};

ordered_json base_config(const GlobalConfig& g) {
  ordered_json c;
  c["seed"] = g.seed;
  c["node_budget"] = g.node_budget;
  c["time_budget"] = g.time_budget;
  return c;
}

SearchLimits limits_of(const GlobalConfig& g) {
  SearchLimits l;
  l.node_budget = g.node_budget;
  l.time_budget_seconds = g.time_budget;
  l.threads = g.threads;
  l.seed = g.seed;
  return l;
}

ordered_json tuple_json(const GeneratingTuple& t) {
  ordered_json a = ordered_json::array();
  for (const auto& e : t.items) a.push_back(element_to_string(t.group, e));
  return a;
}

void add_stats(ordered_json& j, const SearchStats& s, bool timing) {
  j["stats"]["nodes"] = s.nodes;
  j["stats"]["prunes"] = s.prunes;
  // Lattice sizes depend on how tasks land on threads; wall time on the machine.
  if (timing) {
    j["stats"]["subgroups_interned"] = s.subgroups;
    j["stats"]["wall_seconds"] = s.wall_seconds;
  }
}

// Human rendering of the structured output.
void render_table(const ordered_json& j, std::ostream& out, const std::string& indent = "") {
  auto scalar = [](const ordered_json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& v = it.value();
    if (v.is_object()) {
      out << indent << it.key() << ":\n";
      render_table(v, out, indent + "  ");
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      out << indent << it.key() << ":\n";
      std::vector<std::string> cols;
      for (auto c = v.front().begin(); c != v.front().end(); ++c) cols.push_back(c.key());
      std::vector<std::size_t> width(cols.size());
      std::vector<std::vector<std::string>> rows;
      for (const auto& row : v) {
        rows.emplace_back();
        for (const auto& c : cols) rows.back().push_back(row.contains(c) ? scalar(row.at(c)) : "");
      }
      for (std::size_t c = 0; c < cols.size(); ++c) {
        width[c] = cols[c].size();
        for (const auto& r : rows) width[c] = std::max(width[c], r[c].size());
      }
      auto line = [&](const std::vector<std::string>& cells) {
        out << indent << "  ";
        for (std::size_t c = 0; c < cells.size(); ++c)
          out << cells[c] << std::string(width[c] - cells[c].size() + (c + 1 < cells.size() ? 2 : 0), ' ');
        out << "\n";
      };
      line(cols);
      for (const auto& r : rows) line(r);
    } else if (v.is_array()) {
      out << indent << it.key() << ":";
      for (const auto& x : v) out << " " << scalar(x);
      out << "\n";
    } else {
      out << indent << it.key() << ": " << scalar(v) << "\n";
    }
  }
}

Result cmd_rank(const GlobalConfig& g, const std::string& desc) {
  const GroupSpec spec = parse_group(desc);
  if (!spec.is_finite()) throw InputError("m(Z) is infinite; use 'zdemo <n>' for explicit irredundant generating sets");
  const auto r = max_irredundant_size(spec, limits_of(g));
  Result res;
  res.json["command"] = "rank";
  res.json["config"] = base_config(g);
  res.json["config"]["group"] = desc;
  auto& o = res.json["result"];
  o["group"] = describe(spec);
  o["order"] = *group_order(spec);
  o["m"] = r.computed;
  o["exhaustive"] = r.exhaustive;
  o["witness"] = tuple_json(r.witness);
  o["witness_verdict"] = to_string(is_redundant(r.witness).verdict);
  add_stats(o, r.stats, g.timing);
  res.code = r.exhaustive ? kExitOk : kExitBudget;
  return res;
}

Result cmd_mu(const GlobalConfig& g, const std::string& desc) {
  const GroupSpec spec = parse_group(desc);
  if (!spec.is_finite()) throw InputError("mu is computed for finite groups only");
  if (*group_order(spec) > IndexedGroup::kMaxOrder)
    throw InputError("group order exceeds " + std::to_string(IndexedGroup::kMaxOrder) + "; mu needs an indexed group");
  const auto r = mu_rank(spec, limits_of(g));
  Result res;
  res.json["command"] = "mu";
  res.json["config"] = base_config(g);
  res.json["config"]["group"] = desc;
  auto& o = res.json["result"];
  o["group"] = describe(spec);
  o["order"] = *group_order(spec);
  o["mu"] = r.mu.computed;
  o["m"] = r.m;
  o["d"] = r.d;
  o["exhaustive"] = r.mu.exhaustive;
  o["witness"] = tuple_json(r.mu.witness);
  o["orbits_explored"] = r.orbits_explored;
  o["unknown_orbits"] = r.unknown_orbits;
  add_stats(o, r.mu.stats, g.timing);
  res.code = r.mu.exhaustive ? kExitOk : kExitBudget;
  return res;
}

Result cmd_zdemo(const GlobalConfig& g, int n) {
  const auto t = z_witness(n);
  const auto rep = is_redundant(t);
  Result res;
  res.json["command"] = "zdemo";
  res.json["config"] = base_config(g);
  res.json["config"]["n"] = n;
  auto& o = res.json["result"];
  o["tuple"] = tuple_json(t);
  o["generates"] = rep.generates;
  o["droppable"] = rep.droppable;
  o["verdict"] = to_string(rep.verdict);
  return res;
}

Result cmd_witness(const GlobalConfig& g, const std::string& desc, int size, bool involutions) {
  const GroupSpec spec = parse_group(desc);
  const auto w = irredundant_witness(spec, size, WitnessConstraints{involutions}, limits_of(g));
  Result res;
  res.json["command"] = "witness";
  res.json["config"] = base_config(g);
  res.json["config"]["group"] = desc;
  res.json["config"]["size"] = size;
  res.json["config"]["involutions"] = involutions;
  auto& o = res.json["result"];
  o["found"] = w.tuple.has_value();
  if (w.tuple) {
    o["tuple"] = tuple_json(*w.tuple);
    o["verdict"] = to_string(is_redundant(*w.tuple).verdict);
  }
  o["indeterminate"] = w.indeterminate;
  add_stats(o, w.stats, g.timing);
  res.code = w.indeterminate ? kExitBudget : kExitOk;
  return res;
}

Result cmd_product_check(const GlobalConfig& g, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::optional<GroupSpec> spec;
  std::vector<Element> items;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (!spec) {
      spec = parse_group(line);
      if (!std::holds_alternative<ProductGroup>(spec->kind)) throw InputError("product-check needs a prod(...) group");
      continue;
    }
    items.push_back(parse_element(*spec, line));
  }
  if (!spec || items.empty()) throw InputError("expected a group descriptor followed by at least one element");
  const auto t = GeneratingTuple::make(*spec, std::move(items));
  ProductDiagnosis d;
  try {
    d = product_generates(t);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  Result res;
  res.json["command"] = "product-check";
  res.json["config"] = base_config(g);
  res.json["config"]["input"] = path;
  auto& o = res.json["result"];
  o["group"] = describe(*spec);
  o["tuple"] = tuple_json(t);
  o["generates"] = d.generates;
  o["verdict"] = d.verdict == ProductVerdict::Generates          ? "generates"
                 : d.verdict == ProductVerdict::ProjectionProper ? "projection proper"
                                                                 : "graph of isomorphism";
  o["diagnosis"] = d.diagnosis;
  o["isomorphic_factors"] = d.isomorphic_factors;
  if (d.blocking_projection) o["blocking_projection"] = d.blocking_projection;
  if (d.aligning) o["isomorphism"] = d.aligning->label();
  o["method"] = kProductMethod;
  return res;
}

Result cmd_orbit(const GlobalConfig& g, const std::string& desc, int n) {
  const GroupSpec spec = parse_group(desc);
  const auto s = orbit_statistics(spec, n);
  Result res;
  res.json["command"] = "orbit";
  res.json["config"] = base_config(g);
  res.json["config"]["group"] = desc;
  res.json["config"]["n"] = n;
  auto& o = res.json["result"];
  o["generating_tuples"] = s.generating_tuples;
  o["orbits"] = s.orbit_count();
  o["orbit_sizes"] = s.orbit_sizes;
  o["orbits_with_redundant"] = s.orbits_with_redundant;
  o["redundant_fraction"] = s.redundant_fraction();
  return res;
}

Result cmd_certify(const GlobalConfig& g, const std::string& path, const std::string& output, int k, bool nielsen) {
  const auto t = read_tuple_file(path);
  PrimePlanConfig pc;
  pc.exceptional_floor = g.exceptional_floor;
  pc.max_primes = g.max_primes;
  pc.primes = g.primes;
  const auto plan = plan_primes(t, pc);
  Result res;
  res.json["command"] = "certify";
  auto& cfg = res.json["config"];
  cfg = base_config(g);
  cfg["input"] = path;
  cfg["exceptional_floor"] = g.exceptional_floor;
  cfg["max_primes"] = g.max_primes;
  cfg["primes"] = g.primes;
  cfg["irredundancy_primes"] = k;
  cfg["nielsen"] = nielsen;
  auto& o = res.json["result"];
  std::vector<std::vector<std::string>> entries;
  for (const auto& m : t.items) entries.push_back(m.entry_strings());
  o["fingerprint"] = tuple_fingerprint(t.dim, entries);
  o["plan"] = to_json(plan);
  if (plan.candidates.empty()) throw InputError("no usable primes in the plan");
  const auto cert = certify_density(t, plan);
  o["certified"] = cert.certified();
  if (cert.certified()) {
    o["certificate"] = to_json(*cert.certificate);
    if (!output.empty()) {
      std::ofstream f(output);
      if (!f) throw InputError("cannot write " + output);
      f << to_json(*cert.certificate).dump(2) << "\n";
    }
  } else {
    o["per_prime"] = ordered_json::array();
    for (const auto& r : cert.per_prime) o["per_prime"].push_back(to_json(r));
    o["note"] = cert.note;
    res.code = kExitNotCertified;
    return res;
  }
  bool mixed = false;
  try {
    const auto ev = assess_irredundancy(t, plan, k);
    o["irredundancy"] = to_json(ev);
    mixed |= ev.summary == EvidenceSummary::Mixed;
  } catch (const std::invalid_argument& e) {
    o["irredundancy"]["error"] = e.what();
  }
  if (nielsen) {
    try {
      OrbitLimits ol;
      ol.max_states = g.node_budget;
      ol.time_budget_seconds = g.time_budget;
      const auto ev = assess_nielsen_irredundancy(t, plan, k, ol);
      o["nielsen"] = to_json(ev);
      mixed |= ev.summary == EvidenceSummary::Mixed;
    } catch (const std::invalid_argument& e) {
      o["nielsen"]["error"] = e.what();
    }
  }
  res.code = mixed ? kExitMixed : kExitOk;
  return res;
}

Result cmd_verify(const GlobalConfig& g, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  const auto c = certificate_from_json(j);
  const auto r = replay(c);
  Result res;
  res.json["command"] = "verify";
  res.json["config"] = base_config(g);
  res.json["config"]["input"] = path;
  res.json["result"]["ok"] = r.ok;
  res.json["result"]["detail"] = r.detail;
  res.json["result"]["fingerprint"] = c.fingerprint;
  res.code = r.ok ? kExitOk : kExitData;
  return res;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Irredundant and Nielsen-irredundant generating sets of finite groups", "irrgen"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalConfig g;
  app.add_option("--threads", g.threads, "Worker threads (0: OpenMP default)")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--node-budget", g.node_budget, "Search node budget")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--time-budget", g.time_budget, "Time budget in seconds")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"table", "json"}))->capture_default_str();
  app.add_option("--primes", g.primes, "Explicit candidate primes")->delimiter(',');
  app.add_option("--exceptional-floor", g.exceptional_floor, "Primes at or below are skipped")->capture_default_str();
  app.add_option("--max-primes", g.max_primes, "Primes to try")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_flag("--timing", g.timing, "Include wall time and thread-dependent statistics");

  std::function<Result()> action;
  std::string group, path, output;
  int n = 0, size = 0, k = 3;
  bool involutions = false, nielsen = false;

  auto* rank = app.add_subcommand("rank", "Largest irredundant generating set m(G)");
  rank->add_option("group", group, "Group descriptor")->required();
  rank->callback([&] { action = [&] { return cmd_rank(g, group); }; });

  auto* mu = app.add_subcommand("mu", "Largest Nielsen-irredundant generating tuple mu(G)");
  mu->add_option("group", group, "Group descriptor")->required();
  mu->callback([&] { action = [&] { return cmd_mu(g, group); }; });

  auto* cert = app.add_subcommand("certify", "Zariski density certificate and irredundancy evidence");
  cert->add_option("input", path, "Tuple file")->required();
  cert->add_option("--output,-o", output, "Write the certificate here");
  cert->add_option("--irredundancy-primes", k, "Primes used for irredundancy evidence")->capture_default_str()->check(CLI::PositiveNumber);
  cert->add_flag("--nielsen", nielsen, "Also collect Nielsen evidence");
  cert->callback([&] { action = [&] { return cmd_certify(g, path, output, k, nielsen); }; });

  auto* verify = app.add_subcommand("verify", "Replay a density certificate");
  verify->add_option("certificate", path, "Certificate file")->required();
  verify->callback([&] { action = [&] { return cmd_verify(g, path); }; });

  auto* zdemo = app.add_subcommand("zdemo", "Irredundant generating n-set of Z");
  zdemo->add_option("n", n, "Size")->required()->check(CLI::Range(1, 15));
  zdemo->callback([&] { action = [&] { return cmd_zdemo(g, n); }; });

  auto* witness = app.add_subcommand("witness", "Find an irredundant generating k-tuple");
  witness->add_option("group", group, "Group descriptor")->required();
  witness->add_option("--size", size, "Tuple size")->required()->check(CLI::NonNegativeNumber);
  witness->add_flag("--involutions", involutions, "Only involutions");
  witness->callback([&] { action = [&] { return cmd_witness(g, group, size, involutions); }; });

  auto* product = app.add_subcommand("product-check", "Generation in a product of two simple groups");
  product->add_option("input", path, "Tuple file")->required();
  product->callback([&] { action = [&] { return cmd_product_check(g, path); }; });

  auto* orbit = app.add_subcommand("orbit", "Nielsen orbit statistics on generating n-tuples");
  orbit->add_option("group", group, "Group descriptor")->required();
  orbit->add_option("n", n, "Tuple length")->required()->check(CLI::NonNegativeNumber);
  orbit->callback([&] { action = [&] { return cmd_orbit(g, group, n); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    const Result r = action();
    if (g.format == "json")
      out << r.json.dump(2) << "\n";
    else
      render_table(r.json, out);
    return r.code;
  } catch (const DescriptorError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace irrgen
