#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tb {

using Vec = std::vector<double>;

class TreeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class NodeKind { Decision, Observation };

// Raw structural description of a decision process. Edges carry a label and
// the index of the next node, or -1 for the terminal node.
struct SpecNode {
  NodeKind kind = NodeKind::Decision;
  std::string label;
  std::vector<std::string> edge_labels;
  std::vector<int> next;
};

struct TreeSpec {
  std::vector<SpecNode> nodes;
  int root = 0;

  int add(NodeKind kind, std::string label);
  int add_decision(std::string label) { return add(NodeKind::Decision, std::move(label)); }
  int add_observation(std::string label) { return add(NodeKind::Observation, std::move(label)); }
  void add_edge(int from, std::string label, int to);
};

// JSON layout:
//   {"root": "j0",
//    "nodes": [{"id": "j0", "kind": "decision",
//               "edges": [{"label": "a", "next": null}, {"label": "b", "next": "k"}]}, ...]}
TreeSpec parse_tree_json(const std::string& text);
TreeSpec load_tree_json(const std::string& path);

// Normalized tree. Decision points are numbered in depth-first preorder and
// the actions of each decision point occupy a contiguous block of sequence
// indices. Observation points are not stored explicitly: every sequence keeps
// the list of decision points that can be reached right after it (observation
// chains flattened, terminal signals dropped). The root is always decision
// point 0 and the empty sequence is encoded as -1.
class Tree {
 public:
  int num_sequences() const { return static_cast<int>(seq_owner_.size()); }
  int num_decisions() const { return static_cast<int>(dp_begin_.size()); }
  int max_depth() const { return max_depth_; }

  int num_actions(int j) const { return dp_count_[j]; }
  int seq_begin(int j) const { return dp_begin_[j]; }
  int seq_end(int j) const { return dp_begin_[j] + dp_count_[j]; }
  int parent_seq(int j) const { return dp_parent_[j]; }
  int subtree_count(int j) const { return dp_n_[j]; }
  int depth(int j) const { return dp_depth_[j]; }
  // One past the last decision point in the subtree of j.
  int dp_end(int j) const { return dp_end_[j]; }
  const std::string& label(int j) const { return dp_label_[j]; }

  int owner(int s) const { return seq_owner_[s]; }
  int action(int s) const { return s - dp_begin_[seq_owner_[s]]; }
  const std::string& action_label(int s) const { return seq_label_[s]; }
  std::span<const int> children(int s) const {
    return {child_.data() + child_begin_[s], child_.data() + child_begin_[s + 1]};
  }
  bool terminal(int s) const { return child_begin_[s] == child_begin_[s + 1]; }
  // Number of decision points below sequence s.
  int after_count(int s) const { return seq_after_[s]; }
  // Sequences strictly below s form the index range [desc_begin, desc_end).
  int desc_begin(int s) const { return seq_desc_begin_[s]; }
  int desc_end(int s) const { return seq_desc_end_[s]; }

  // Decision point built from spec node i, or -1.
  int decision_of_spec(int i) const {
    return i >= 0 && i < static_cast<int>(spec_to_dp_.size()) ? spec_to_dp_[i] : -1;
  }
  bool synthetic_root() const { return synthetic_root_; }
  std::uint64_t hash() const { return hash_; }

 private:
  friend Tree build_tree(const TreeSpec& spec);

  std::vector<int> dp_begin_, dp_count_, dp_parent_, dp_n_, dp_depth_, dp_end_;
  std::vector<std::string> dp_label_;
  std::vector<int> seq_owner_, seq_after_, seq_desc_begin_, seq_desc_end_;
  std::vector<std::string> seq_label_;
  std::vector<int> child_begin_, child_;
  std::vector<int> spec_to_dp_;
  int max_depth_ = 0;
  bool synthetic_root_ = false;
  std::uint64_t hash_ = 0;
};

// Validates the spec and normalizes it. Observation chains are flattened,
// signals leading to the terminal node are dropped, consecutive decision
// points are treated as separated by a one-signal observation, and if the
// root does not lead to exactly one decision point a one-action decision
// point is inserted on top.
Tree build_tree(const TreeSpec& spec);

double dot(const Vec& a, const Vec& b);

bool validate_strategy(const Tree& tree, const Vec& x, double tol = 1e-9);
Vec uniform_strategy(const Tree& tree);

// Number of pure strategies, as a double to survive overflow.
double count_pure_strategies(const Tree& tree);
std::vector<Vec> enumerate_pure_strategies(const Tree& tree, double cap = 1e5);

// Probability that the top-down sampler emits y when run on x.
double pure_strategy_probability(const Tree& tree, const Vec& x, const Vec& y);

struct MinMax {
  double min = 0, max = 0;
  Vec argmin, argmax;
};
MinMax linear_min_max(const Tree& tree, const Vec& loss);

// Adds multiples of the flow-constraint directions so that every entry is
// nonnegative. The value on every strategy in Q changes by the same constant.
Vec lift_nonnegative(const Tree& tree, const Vec& loss);

}  // namespace tb
