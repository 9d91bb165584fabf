#pragma once

// Declarative descriptions of the supported groups and a uniform element
// representation. All values are immutable once built.

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "irrgen/matrix.hpp"

namespace irrgen {

struct SpecialLinear {
  int n;
  std::uint32_t p;
};

struct ProjectiveSpecialLinear {
  int n;
  std::uint32_t p;
};

/// (Z/m)^k; m need not be prime.
struct CyclicPower {
  std::uint32_t m;
  int k;
};

/// The infinite cyclic group; only gcd semantics are supported.
struct IntegersZ {};

/// An explicit multiplication table on {0, ..., N-1}.
struct CayleyTable {
  std::string name;
  std::uint32_t identity = 0;
  std::vector<std::uint32_t> table;  // row-major N x N
  std::uint32_t n = 0;                // filled in by GroupSpec::cayley
  std::uint32_t size() const { return n; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return table[a * n + b]; }
};

struct GroupSpec;

struct ProductGroup {
  std::vector<GroupSpec> factors;
};

struct GroupSpec {
  std::variant<SpecialLinear, ProjectiveSpecialLinear, CyclicPower, IntegersZ, std::shared_ptr<const CayleyTable>,
               ProductGroup>
      kind;

  static GroupSpec sl(int n, std::uint32_t p);
  static GroupSpec psl(int n, std::uint32_t p);
  static GroupSpec cyclic_power(std::uint32_t m, int k);
  static GroupSpec integers();
  /// Validates identity, closure, inverses and associativity.
  static GroupSpec cayley(CayleyTable table);
  static GroupSpec product(std::vector<GroupSpec> factors);

  bool is_finite() const { return !std::holds_alternative<IntegersZ>(kind); }
  /// True for SL(2,p) and PSL(2,p).
  bool is_rank_one_linear() const;
  std::optional<std::uint32_t> field_prime() const;
};

/// Exact order; nullopt for IntegersZ. Throws std::overflow_error past 2^64.
std::optional<std::uint64_t> group_order(const GroupSpec& g);

/// Descriptor string, e.g. "psl2:5", "cyclic:5^3", "prod(psl2:5,psl2:7)".
std::string describe(const GroupSpec& g);

bool same_group(const GroupSpec& a, const GroupSpec& b);

struct ModVector {
  std::vector<std::uint32_t> coords;
};

struct TableElement {
  std::uint32_t index;
};

struct Element;

struct ProductElement {
  std::vector<Element> parts;
};

struct Element {
  std::variant<FpMatrix, ProjectiveMatrix, ModVector, std::int64_t, TableElement, ProductElement> value;

  bool operator==(const Element& rhs) const;
};

Element identity(const GroupSpec& g);
Element multiply(const GroupSpec& g, const Element& a, const Element& b);
Element invert(const GroupSpec& g, const Element& a);
Element power(const GroupSpec& g, const Element& a, std::int64_t e);
/// g a g^-1
Element conjugate(const GroupSpec& g, const Element& by, const Element& a);

/// Throws std::invalid_argument when `e` is not an element of `g`.
void validate_element(const GroupSpec& g, const Element& e);

/// Canonical byte encoding; equal elements have equal encodings.
void encode(const GroupSpec& g, const Element& e, std::string& out);
std::string encode(const GroupSpec& g, const Element& e);

std::string element_to_string(const GroupSpec& g, const Element& e);

std::uint64_t element_order(const GroupSpec& g, const Element& e);

/// A generating set of the whole (finite) group.
std::vector<Element> standard_generators(const GroupSpec& g);

/// Uniform random element (finite groups only).
Element random_element(const GroupSpec& g, std::mt19937_64& rng);

/// Center size of SL(n,p) / PSL(n,p); 1 for other kinds.
std::uint64_t center_size(const GroupSpec& g);

/// Ordered tuple of elements of one group.
struct GeneratingTuple {
  GroupSpec group;
  std::vector<Element> items;

  /// Validates membership of every item.
  static GeneratingTuple make(GroupSpec group, std::vector<Element> items);

  std::size_t size() const { return items.size(); }
  GeneratingTuple without(std::size_t index) const;
  GeneratingTuple subtuple(const std::vector<std::size_t>& indices) const;
};

std::string tuple_to_string(const GeneratingTuple& t);

/// Convenience constructors for matrix elements.
Element sl_element(std::uint32_t p, int n, std::initializer_list<std::int64_t> rows);
Element psl_element(std::uint32_t p, int n, std::initializer_list<std::int64_t> rows);

}  // namespace irrgen
