#include "treebandit/strategy_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tb {

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_strategy(const Tree& tree, const Vec& x) {
  if (static_cast<int>(x.size()) != tree.num_sequences())
    throw std::invalid_argument("format_strategy: vector length does not match the tree");
  std::string out = "tree_hash " + hash_hex(tree.hash()) + "\n";
  char buf[64];
  for (int s = 0; s < tree.num_sequences(); ++s) {
    std::snprintf(buf, sizeof buf, "%d %d %.17g\n", tree.owner(s), tree.action(s), x[s]);
    out += buf;
  }
  return out;
}

void write_strategy(const std::string& path, const Tree& tree, const Vec& x) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << format_strategy(tree, x);
  if (!f) throw std::runtime_error("write failed: " + path);
}

Vec parse_strategy(const std::string& text, const Tree& tree) {
  std::istringstream in(text);
  std::string tag, hex;
  if (!(in >> tag >> hex) || tag != "tree_hash") throw std::runtime_error("strategy file: missing header");
  if (hex != hash_hex(tree.hash())) throw std::runtime_error("strategy file: tree hash mismatch");
  Vec x(tree.num_sequences(), 0.0);
  std::vector<char> seen(x.size(), 0);
  int j, a;
  std::string value;
  while (in >> j >> a >> value) {
    if (j < 0 || j >= tree.num_decisions() || a < 0 || a >= tree.num_actions(j))
      throw std::runtime_error("strategy file: sequence out of range");
    const int s = tree.seq_begin(j) + a;
    if (seen[s]++) throw std::runtime_error("strategy file: duplicate sequence");
    try {
      x[s] = std::stod(value);
    } catch (const std::exception&) {
      throw std::runtime_error("strategy file: bad value " + value);
    }
  }
  if (!in.eof()) throw std::runtime_error("strategy file: malformed line");
  for (char c : seen)
    if (!c) throw std::runtime_error("strategy file: missing sequence");
  return x;
}

Vec read_strategy(const std::string& path, const Tree& tree) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_strategy(ss.str(), tree);
}

}  // namespace tb
