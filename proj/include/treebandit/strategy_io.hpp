#pragma once

#include <string>

#include "treebandit/tree.hpp"

namespace tb {

// Text format:
//   tree_hash <16 hex digits>
//   <decision point> <action> <value>     one line per sequence, values in %.17g
void write_strategy(const std::string& path, const Tree& tree, const Vec& x);
std::string format_strategy(const Tree& tree, const Vec& x);

// Throws std::runtime_error on I/O failure, malformed input or a hash mismatch.
Vec read_strategy(const std::string& path, const Tree& tree);
Vec parse_strategy(const std::string& text, const Tree& tree);

std::string hash_hex(std::uint64_t h);

}  // namespace tb
