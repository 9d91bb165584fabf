#include "irrgen/certificate_io.hpp"

#include <fstream>
#include <sstream>

namespace irrgen {

using nlohmann::ordered_json;

ordered_json to_json(const PrimeRecord& r) {
  ordered_json j;
  j["prime"] = r.prime;
  j["status"] = r.status;
  j["diagnosis"] = r.diagnosis;
  j["closure_order"] = r.closure_order ? ordered_json(*r.closure_order) : ordered_json(nullptr);
  return j;
}

ordered_json to_json(const PrimePlan& plan) {
  ordered_json j;
  j["candidates"] = plan.candidates;
  j["excluded_denominator_primes"] = plan.excluded_denominator_primes;
  j["exceptional_floor"] = plan.exceptional_floor;
  j["floor_clamped"] = plan.floor_clamped;
  j["max_primes_to_try"] = plan.max_primes_to_try;
  return j;
}

ordered_json to_json(const DensityCertificate& c) {
  ordered_json j;
  j["version"] = c.version;
  j["ambient"] = c.ambient();
  j["tuple_entries"] = c.tuple_entries;
  j["witness_prime"] = c.witness_prime;
  j["evidence_kind"] = c.evidence_kind;
  j["closure_order"] = c.closure_order ? ordered_json(*c.closure_order) : ordered_json(nullptr);
  j["transcript"] = c.transcript;
  j["caveat"] = c.caveat;
  j["per_prime"] = ordered_json::array();
  for (const auto& r : c.per_prime) j["per_prime"].push_back(to_json(r));
  j["fingerprint"] = c.fingerprint;
  return j;
}

ordered_json to_json(const IrredundancyEvidence& e) {
  ordered_json j;
  j["kind"] = e.nielsen ? "nielsen" : "plain";
  j["per_prime"] = ordered_json::array();
  for (const auto& v : e.per_prime) {
    ordered_json p;
    p["prime"] = v.prime;
    p["generates"] = v.generates;
    p["verdict"] = v.verdict;
    if (e.nielsen) {
      p["orbit_states"] = v.orbit_states;
      p["path_length"] = v.path_length;
    } else {
      p["droppable"] = v.droppable;
    }
    j["per_prime"].push_back(p);
  }
  j["irredundant"] = e.irredundant;
  j["redundant"] = e.redundant;
  j["not_generating"] = e.not_generating;
  j["unknown"] = e.unknown;
  j["summary"] = to_string(e.summary);
  return j;
}

DensityCertificate certificate_from_json(const ordered_json& j) {
  try {
    DensityCertificate c;
    c.version = j.at("version").get<int>();
    const auto ambient = j.at("ambient").get<std::string>();
    if (ambient.size() < 5 || ambient.rfind("SL(", 0) != 0 || ambient.back() != ')')
      throw InputError("unrecognized ambient group '" + ambient + "'");
    c.dim = std::stoi(ambient.substr(3, ambient.size() - 4));
    c.tuple_entries = j.at("tuple_entries").get<std::vector<std::vector<std::string>>>();
    c.witness_prime = j.at("witness_prime").get<std::uint32_t>();
    c.evidence_kind = j.at("evidence_kind").get<std::string>();
    if (!j.at("closure_order").is_null()) c.closure_order = j.at("closure_order").get<std::uint64_t>();
    c.transcript = j.at("transcript").get<std::string>();
    c.caveat = j.at("caveat").get<std::string>();
    for (const auto& r : j.at("per_prime")) {
      PrimeRecord rec;
      rec.prime = r.at("prime").get<std::uint32_t>();
      rec.status = r.at("status").get<std::string>();
      rec.diagnosis = r.at("diagnosis").get<std::string>();
      if (!r.at("closure_order").is_null()) rec.closure_order = r.at("closure_order").get<std::uint64_t>();
      c.per_prime.push_back(std::move(rec));
    }
    c.fingerprint = j.at("fingerprint").get<std::string>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed certificate: ") + e.what());
  } catch (const std::logic_error& e) {
    throw InputError(std::string("malformed certificate: ") + e.what());
  }
}

RationalTuple parse_tuple(std::istream& in) {
  std::string line;
  int dim = 0;
  int line_no = 0;
  std::vector<RationalMatrix> items;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::vector<std::string> words;
    for (std::string w; ls >> w;) words.push_back(w);
    if (words.empty() || words[0][0] == '#') continue;
    if (dim == 0) {
      if (words.size() != 2 || words[0] != "sl") throw InputError("line " + std::to_string(line_no) + ": expected header 'sl <n>'");
      try {
        dim = std::stoi(words[1]);
      } catch (const std::exception&) {
        throw InputError("line " + std::to_string(line_no) + ": bad dimension '" + words[1] + "'");
      }
      if (dim < 2 || dim > 4) throw InputError("dimension must be 2, 3 or 4");
      continue;
    }
    try {
      items.push_back(RationalMatrix::from_strings(dim, words));
    } catch (const InputError& e) {
      throw InputError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (dim == 0) throw InputError("missing header 'sl <n>'");
  if (items.empty()) throw InputError("no matrices given");
  return RationalTuple::make(dim, std::move(items));
}

RationalTuple read_tuple_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return parse_tuple(in);
}

}  // namespace irrgen
