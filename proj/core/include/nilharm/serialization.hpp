#pragma once

// JSON form of group elements:
//   {"m": 3, "entries": [n12, n13, n23], "log_a": [t1, t2]}
// with the strictly upper entries in row-major order. "log_a" is omitted
// for elements of N.

#include <string>
#include <string_view>
#include <vector>

#include "nilharm/lie_groups.hpp"

namespace nilharm {

std::vector<double> row_major_entries(const UnipotentElement& g);
UnipotentElement from_row_major_entries(const GroupSpec& spec, const std::vector<double>& entries);

std::string to_json(const UnipotentElement& g);
std::string to_json(const SolvableElement& p);

/// Throws InvalidArgument on malformed JSON or inconsistent sizes.
UnipotentElement unipotent_from_json(std::string_view text);
/// A missing "log_a" means the identity of A.
SolvableElement solvable_from_json(std::string_view text);

}  // namespace nilharm
