#include "treebandit/tree.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace tb {

int TreeSpec::add(NodeKind kind, std::string label) {
  nodes.push_back(SpecNode{kind, std::move(label), {}, {}});
  return static_cast<int>(nodes.size()) - 1;
}

void TreeSpec::add_edge(int from, std::string label, int to) {
  nodes.at(from).edge_labels.push_back(std::move(label));
  nodes.at(from).next.push_back(to);
}

TreeSpec parse_tree_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw TreeError(std::string("malformed tree json: ") + e.what());
  }
  if (!doc.contains("nodes") || !doc["nodes"].is_array())
    throw TreeError("tree json needs a \"nodes\" array");

  TreeSpec spec;
  std::unordered_map<std::string, int> index;
  for (const auto& n : doc["nodes"]) {
    std::string id = n.at("id").get<std::string>();
    std::string kind = n.at("kind").get<std::string>();
    NodeKind k;
    if (kind == "decision")
      k = NodeKind::Decision;
    else if (kind == "observation")
      k = NodeKind::Observation;
    else
      throw TreeError("unknown node kind '" + kind + "'");
    if (index.count(id)) throw TreeError("duplicate node id '" + id + "'");
    index[id] = spec.add(k, id);
  }
  int i = 0;
  for (const auto& n : doc["nodes"]) {
    if (n.contains("edges")) {
      for (const auto& e : n["edges"]) {
        int to = -1;
        if (e.contains("next") && !e["next"].is_null()) {
          auto it = index.find(e["next"].get<std::string>());
          if (it == index.end())
            throw TreeError("dangling edge to '" + e["next"].get<std::string>() + "'");
          to = it->second;
        }
        spec.add_edge(i, e.value("label", std::string()), to);
      }
    }
    ++i;
  }
  if (doc.contains("root")) {
    auto it = index.find(doc["root"].get<std::string>());
    if (it == index.end()) throw TreeError("unknown root id");
    spec.root = it->second;
  } else if (spec.nodes.empty()) {
    throw TreeError("empty tree");
  }
  return spec;
}

TreeSpec load_tree_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TreeError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_tree_json(ss.str());
}

namespace {

void check_spec(const TreeSpec& spec) {
  const int n = static_cast<int>(spec.nodes.size());
  if (n == 0) throw TreeError("empty tree");
  if (spec.root < 0 || spec.root >= n) throw TreeError("root index out of range");
  for (const auto& node : spec.nodes) {
    if (node.edge_labels.size() != node.next.size())
      throw TreeError("edge label/target count mismatch at '" + node.label + "'");
    if (node.kind == NodeKind::Decision && node.next.empty())
      throw TreeError("decision point '" + node.label + "' has no actions");
    for (int t : node.next)
      if (t < -1 || t >= n) throw TreeError("dangling edge from '" + node.label + "'");
  }
  // 0 = unseen, 1 = on stack, 2 = done
  std::vector<char> state(n, 0);
  std::vector<std::pair<int, std::size_t>> stack{{spec.root, 0}};
  state[spec.root] = 1;
  while (!stack.empty()) {
    auto& [v, e] = stack.back();
    if (e == spec.nodes[v].next.size()) {
      state[v] = 2;
      stack.pop_back();
      continue;
    }
    int t = spec.nodes[v].next[e++];
    if (t < 0) continue;
    if (state[t] == 1) throw TreeError("cycle detected at '" + spec.nodes[t].label + "'");
    if (state[t] == 2) throw TreeError("node '" + spec.nodes[t].label + "' is reached twice");
    state[t] = 1;
    stack.push_back({t, 0});
  }
  for (int v = 0; v < n; ++v)
    if (!state[v]) throw TreeError("node '" + spec.nodes[v].label + "' is unreachable");
}

// Decision points reachable from edge target t through observation points only.
void flatten(const TreeSpec& spec, int t, std::vector<int>& out) {
  if (t < 0) return;
  const auto& node = spec.nodes[t];
  if (node.kind == NodeKind::Decision) {
    out.push_back(t);
    return;
  }
  for (int u : node.next) flatten(spec, u, out);
}

std::uint64_t fnv(std::uint64_t h, const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t fnv_int(std::uint64_t h, std::int64_t v) { return fnv(h, &v, sizeof v); }
std::uint64_t fnv_str(std::uint64_t h, const std::string& s) {
  h = fnv_int(h, static_cast<std::int64_t>(s.size()));
  return fnv(h, s.data(), s.size());
}

}  // namespace

Tree build_tree(const TreeSpec& spec) {
  check_spec(spec);
  Tree t;
  t.spec_to_dp_.assign(spec.nodes.size(), -1);

  std::vector<int> roots;
  flatten(spec, spec.root, roots);
  if (roots.empty()) throw TreeError("tree has no decision point");
  t.synthetic_root_ = roots.size() != 1;

  // Per sequence child lists in spec ids, resolved after numbering.
  std::vector<std::vector<int>> seq_spec_children;

  std::function<void(int, int, const std::vector<int>*, int)> visit =
      [&](int spec_id, int parent, const std::vector<int>* synthetic_children, int depth) {
        const int j = static_cast<int>(t.dp_begin_.size());
        const int begin = static_cast<int>(t.seq_owner_.size());
        t.dp_begin_.push_back(begin);
        t.dp_parent_.push_back(parent);
        t.dp_depth_.push_back(depth);
        t.dp_end_.push_back(0);
        t.dp_n_.push_back(0);
        t.max_depth_ = std::max(t.max_depth_, depth);

        std::vector<std::vector<int>> kids;
        if (synthetic_children) {
          t.dp_label_.push_back("*");
          t.seq_label_.push_back("*");
          kids.push_back(*synthetic_children);
        } else {
          const auto& node = spec.nodes[spec_id];
          t.spec_to_dp_[spec_id] = j;
          t.dp_label_.push_back(node.label);
          for (std::size_t a = 0; a < node.next.size(); ++a) {
            t.seq_label_.push_back(node.edge_labels[a]);
            kids.emplace_back();
            flatten(spec, node.next[a], kids.back());
          }
        }
        const int count = static_cast<int>(kids.size());
        t.dp_count_.push_back(count);
        for (int a = 0; a < count; ++a) {
          t.seq_owner_.push_back(j);
          seq_spec_children.push_back(kids[a]);
        }
        t.seq_desc_begin_.resize(begin + count);
        t.seq_desc_end_.resize(begin + count);
        for (int a = 0; a < count; ++a) {
          t.seq_desc_begin_[begin + a] = static_cast<int>(t.seq_owner_.size());
          for (int c : kids[a]) visit(c, begin + a, nullptr, depth + 1);
          t.seq_desc_end_[begin + a] = static_cast<int>(t.seq_owner_.size());
        }
        t.dp_end_[j] = static_cast<int>(t.dp_begin_.size());
      };

  if (t.synthetic_root_)
    visit(-1, -1, &roots, 1);
  else
    visit(roots[0], -1, nullptr, 1);

  const int ns = t.num_sequences();
  t.child_begin_.assign(ns + 1, 0);
  for (int s = 0; s < ns; ++s) {
    t.child_begin_[s] = static_cast<int>(t.child_.size());
    for (int c : seq_spec_children[s]) t.child_.push_back(t.spec_to_dp_[c]);
  }
  t.child_begin_[ns] = static_cast<int>(t.child_.size());

  t.seq_after_.assign(ns, 0);
  for (int j = t.num_decisions() - 1; j >= 0; --j) {
    int n = 1;
    for (int s = t.seq_begin(j); s < t.seq_end(j); ++s) {
      int after = 0;
      for (int c : t.children(s)) after += t.dp_n_[c];
      t.seq_after_[s] = after;
      n += after;
    }
    t.dp_n_[j] = n;
  }

  std::uint64_t h = 0xcbf29ce484222325ULL;
  h = fnv_int(h, t.num_decisions());
  for (int j = 0; j < t.num_decisions(); ++j) {
    h = fnv_int(h, t.num_actions(j));
    h = fnv_int(h, t.parent_seq(j));
    h = fnv_str(h, t.label(j));
    for (int s = t.seq_begin(j); s < t.seq_end(j); ++s) h = fnv_str(h, t.action_label(s));
  }
  t.hash_ = h;
  return t;
}

double dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  double r = 0;
  for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
  return r;
}

namespace {
void check_length(const Tree& tree, const Vec& v, const char* what) {
  if (static_cast<int>(v.size()) != tree.num_sequences())
    throw std::invalid_argument(std::string(what) + ": vector length does not match the tree");
}
double parent_value(const Tree& tree, const Vec& x, int j) {
  int p = tree.parent_seq(j);
  return p < 0 ? 1.0 : x[p];
}
}  // namespace

bool validate_strategy(const Tree& tree, const Vec& x, double tol) {
  check_length(tree, x, "validate_strategy");
  for (double v : x)
    if (!(v >= 0.0) || v > 1.0 + tol) return false;
  for (int j = 0; j < tree.num_decisions(); ++j) {
    double sum = 0;
    for (int s = tree.seq_begin(j); s < tree.seq_end(j); ++s) sum += x[s];
    if (std::abs(sum - parent_value(tree, x, j)) > tol) return false;
  }
  return true;
}

Vec uniform_strategy(const Tree& tree) {
  Vec x(tree.num_sequences());
  for (int j = 0; j < tree.num_decisions(); ++j) {
    double v = parent_value(tree, x, j) / tree.num_actions(j);
    for (int s = tree.seq_begin(j); s < tree.seq_end(j); ++s) x[s] = v;
  }
  return x;
}

double count_pure_strategies(const Tree& tree) {
  std::vector<double> cnt(tree.num_decisions());
  for (int j = tree.num_decisions() - 1; j >= 0; --j) {
    double total = 0;
    for (int s = tree.seq_begin(j); s < tree.seq_end(j); ++s) {
      double prod = 1;
      for (int c : tree.children(s)) prod *= cnt[c];
      total += prod;
    }
    cnt[j] = total;
  }
  return cnt[0];
}

std::vector<Vec> enumerate_pure_strategies(const Tree& tree, double cap) {
  if (count_pure_strategies(tree) > cap)
    throw std::length_error("enumerate_pure_strategies: too many pure strategies");
  using Support = std::vector<int>;
  std::function<std::vector<Support>(int)> rec = [&](int j) {
    std::vector<Support> out;
    for (int s = tree.seq_begin(j); s < tree.seq_end(j); ++s) {
      std::vector<Support> partial{Support{s}};
      for (int c : tree.children(s)) {
        auto sub = rec(c);
        std::vector<Support> next;
        next.reserve(partial.size() * sub.size());
        for (const auto& p : partial)
          for (const auto& q : sub) {
            Support u = p;
            u.insert(u.end(), q.begin(), q.end());
            next.push_back(std::move(u));
          }
        partial = std::move(next);
      }
      for (auto& p : partial) out.push_back(std::move(p));
    }
    return out;
  };
  std::vector<Vec> result;
  for (const auto& sup : rec(0)) {
    Vec y(tree.num_sequences(), 0.0);
    for (int s : sup) y[s] = 1.0;
    result.push_back(std::move(y));
  }
  return result;
}

double pure_strategy_probability(const Tree& tree, const Vec& x, const Vec& y) {
  check_length(tree, x, "pure_strategy_probability");
  check_length(tree, y, "pure_strategy_probability");
  double p = 1;
  for (int j = 0; j < tree.num_decisions(); ++j) {
    int par = tree.parent_seq(j);
    if (par >= 0 && y[par] == 0.0) continue;
    double xp = parent_value(tree, x, j);
    if (!(xp > 0)) throw std::domain_error("pure_strategy_probability: zero parent mass");
    int chosen = -1;
    for (int s = tree.seq_begin(j); s < tree.seq_end(j); ++s)
      if (y[s] != 0.0) chosen = s;
    if (chosen < 0) throw std::invalid_argument("pure_strategy_probability: y is not pure");
    p *= x[chosen] / xp;
  }
  return p;
}

MinMax linear_min_max(const Tree& tree, const Vec& loss) {
  check_length(tree, loss, "linear_min_max");
  const int nj = tree.num_decisions();
  std::vector<double> lo(nj), hi(nj);
  std::vector<int> best_lo(nj), best_hi(nj);
  for (int j = nj - 1; j >= 0; --j) {
    lo[j] = INFINITY;
    hi[j] = -INFINITY;
    for (int s = tree.seq_begin(j); s < tree.seq_end(j); ++s) {
      double a = loss[s], b = loss[s];
      for (int c : tree.children(s)) {
        a += lo[c];
        b += hi[c];
      }
      if (a < lo[j]) {
        lo[j] = a;
        best_lo[j] = s;
      }
      if (b > hi[j]) {
        hi[j] = b;
        best_hi[j] = s;
      }
    }
  }
  MinMax r;
  r.min = lo[0];
  r.max = hi[0];
  auto build = [&](const std::vector<int>& best) {
    Vec y(tree.num_sequences(), 0.0);
    for (int j = 0; j < nj; ++j) {
      int p = tree.parent_seq(j);
      if (p >= 0 && y[p] == 0.0) continue;
      y[best[j]] = 1.0;
    }
    return y;
  };
  r.argmin = build(best_lo);
  r.argmax = build(best_hi);
  return r;
}

Vec lift_nonnegative(const Tree& tree, const Vec& loss) {
  check_length(tree, loss, "lift_nonnegative");
  Vec out = loss;
  for (int j = tree.num_decisions() - 1; j >= 0; --j) {
    double m = 0;
    for (int s = tree.seq_begin(j); s < tree.seq_end(j); ++s) m = std::min(m, out[s]);
    if (m == 0) continue;
    for (int s = tree.seq_begin(j); s < tree.seq_end(j); ++s) out[s] = std::max(0.0, out[s] - m);
    int p = tree.parent_seq(j);
    if (p >= 0) out[p] += m;
  }
  return out;
}

}  // namespace tb
