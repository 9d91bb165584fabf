#pragma once

// Group descriptors:
//
//   sl<n>:<p>   psl<n>:<p>   cyclic:<m>^<k>   prod(<desc>,<desc>)   z
//
// and element literals: a matrix is n*n integers (row-major), a vector in
// (Z/m)^k is k integers, an integer is itself; product components are
// separated by '|'.

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "irrgen/group_spec.hpp"

namespace irrgen {

/// Text that does not follow the grammar.
struct DescriptorError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Throws DescriptorError on syntax errors and InputError (rational.hpp) for
/// well-formed descriptors naming unsupported groups, e.g. psl2:4.
GroupSpec parse_group(std::string_view text);

/// Throws InputError when the literal is malformed or not in the group.
Element parse_element(const GroupSpec& g, std::string_view text);

}  // namespace irrgen
