#pragma once

// Serialization of certificates and evidence, and the tuple input format:
//
//   sl <n>
//   a/b a/b ... (n*n exact rationals, row-major, one matrix per line)
//
// Blank lines and lines starting with '#' are ignored.

#include <istream>
#include <string>

#include <json.hpp>

#include "irrgen/certify.hpp"

namespace irrgen {

nlohmann::ordered_json to_json(const PrimeRecord& r);
nlohmann::ordered_json to_json(const PrimePlan& plan);
nlohmann::ordered_json to_json(const DensityCertificate& c);
nlohmann::ordered_json to_json(const IrredundancyEvidence& e);

/// Throws InputError on missing or mistyped fields.
DensityCertificate certificate_from_json(const nlohmann::ordered_json& j);

/// Throws InputError on malformed input or det != 1.
RationalTuple parse_tuple(std::istream& in);
RationalTuple read_tuple_file(const std::string& path);

}  // namespace irrgen
