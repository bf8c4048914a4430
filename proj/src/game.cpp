#include "treebandit/game.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <unordered_map>

namespace tb {

int Game::add_chance() {
  GameNode n;
  n.type = GameNodeType::Chance;
  nodes.push_back(std::move(n));
  return static_cast<int>(nodes.size()) - 1;
}

int Game::add_player(int player, std::string infoset) {
  GameNode n;
  n.type = GameNodeType::Player;
  n.player = player;
  n.infoset = std::move(infoset);
  nodes.push_back(std::move(n));
  return static_cast<int>(nodes.size()) - 1;
}

int Game::add_terminal(double payoff) {
  GameNode n;
  n.payoff = payoff;
  nodes.push_back(std::move(n));
  return static_cast<int>(nodes.size()) - 1;
}

void Game::add_child(int node, std::string action, int child, double prob) {
  GameNode& n = nodes.at(node);
  n.actions.push_back(std::move(action));
  n.children.push_back(child);
  if (n.type == GameNodeType::Chance) n.probs.push_back(prob);
}

namespace {

struct InfosetInfo {
  int parent_infoset = -1, parent_action = -1;
  std::vector<std::string> actions;
  std::vector<std::vector<int>> children;  // child infosets per action, first-seen order
  int spec_node = -1;
};

}  // namespace

PlayerView tfsdm_for_player(const Game& game, int player) {
  const int n = static_cast<int>(game.nodes.size());
  std::unordered_map<std::string, int> index;
  std::vector<InfosetInfo> info;
  std::vector<int> roots;
  std::vector<int> node_infoset(n, -1);
  std::vector<std::pair<int, int>> last(n, {-1, -1});

  auto note_child = [&](std::vector<int>& list, int id) {
    if (std::find(list.begin(), list.end(), id) == list.end()) list.push_back(id);
  };

  // iterative DFS carrying the last own (infoset, action)
  std::vector<std::pair<int, std::pair<int, int>>> stack{{game.root, {-1, -1}}};
  std::vector<int> visits(n, 0);
  while (!stack.empty()) {
    auto [v, prev] = stack.back();
    stack.pop_back();
    if (v < 0 || v >= n) throw GameError("child index out of range");
    if (visits[v]++) throw GameError("game graph is not a tree");
    last[v] = prev;
    const GameNode& node = game.nodes[v];
    if (node.type == GameNodeType::Terminal) continue;
    if (node.children.empty()) throw GameError("non-terminal node without children");
    if (node.type == GameNodeType::Chance) {
      double total = 0;
      for (double p : node.probs) {
        if (!(p >= 0)) throw GameError("negative chance probability");
        total += p;
      }
      if (std::abs(total - 1.0) > 1e-9) throw GameError("chance probabilities do not sum to 1");
    }
    if (node.type == GameNodeType::Player && node.player == player) {
      auto [it, fresh] = index.try_emplace(node.infoset, static_cast<int>(info.size()));
      if (fresh) {
        InfosetInfo inf;
        inf.parent_infoset = prev.first;
        inf.parent_action = prev.second;
        inf.actions = node.actions;
        inf.children.resize(node.actions.size());
        info.push_back(std::move(inf));
      }
      const int id = it->second;
      InfosetInfo& inf = info[id];
      if (inf.parent_infoset != prev.first || inf.parent_action != prev.second)
        throw GameError("imperfect recall at information set " + node.infoset);
      if (inf.actions != node.actions)
        throw GameError("inconsistent actions at information set " + node.infoset);
      if (prev.first < 0)
        note_child(roots, id);
      else
        note_child(info[prev.first].children[prev.second], id);
      node_infoset[v] = id;
      for (int a = static_cast<int>(node.children.size()) - 1; a >= 0; --a)
        stack.push_back({node.children[a], {id, a}});
      continue;
    }
    for (int a = static_cast<int>(node.children.size()) - 1; a >= 0; --a)
      stack.push_back({node.children[a], prev});
  }
  for (int v = 0; v < n; ++v)
    if (!visits[v]) throw GameError("unreachable game node");
  if (info.empty()) throw GameError("player never acts");

  TreeSpec spec;
  for (std::size_t i = 0; i < info.size(); ++i) info[i].spec_node = spec.add_decision("I" + std::to_string(i));
  // names: infoset keys, recovered from the index
  for (const auto& [key, id] : index) spec.nodes[info[id].spec_node].label = key;
  auto observe = [&](const std::vector<int>& kids, const std::string& name) {
    int k = spec.add_observation(name);
    for (int c : kids) spec.add_edge(k, spec.nodes[info[c].spec_node].label, info[c].spec_node);
    return k;
  };
  spec.root = observe(roots, "start");
  for (auto& inf : info)
    for (std::size_t a = 0; a < inf.actions.size(); ++a)
      spec.add_edge(inf.spec_node, inf.actions[a],
                    inf.children[a].empty() ? -1 : observe(inf.children[a], inf.actions[a]));

  PlayerView view;
  view.player = player;
  view.tree = build_tree(spec);
  auto first_seq = [&](int id) { return view.tree.seq_begin(view.tree.decision_of_spec(info[id].spec_node)); };
  view.node_seq.assign(n, -1);
  view.last_seq.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    if (node_infoset[v] >= 0) view.node_seq[v] = first_seq(node_infoset[v]);
    if (last[v].first >= 0) view.last_seq[v] = first_seq(last[v].first) + last[v].second;
  }
  return view;
}

std::vector<PayoffTerm> payoff_terms(const Game& game, const PlayerView& v0, const PlayerView& v1) {
  std::map<std::pair<int, int>, double> acc;
  std::function<void(int, double)> walk = [&](int v, double chance) {
    const GameNode& node = game.nodes[v];
    if (node.type == GameNodeType::Terminal) {
      acc[{v0.last_seq[v], v1.last_seq[v]}] += chance * node.payoff;
      return;
    }
    for (std::size_t a = 0; a < node.children.size(); ++a) {
      const double p = node.type == GameNodeType::Chance ? node.probs[a] : 1.0;
      if (p > 0) walk(node.children[a], chance * p);
    }
  };
  walk(game.root, 1.0);
  std::vector<PayoffTerm> terms;
  for (const auto& [k, val] : acc)
    if (val != 0) terms.push_back({k.first, k.second, val});
  return terms;
}

Vec loss_vector(const std::vector<PayoffTerm>& terms, int player, int num_sequences,
                const Vec& opponent, double* constant) {
  Vec loss(num_sequences, 0.0);
  double c = 0;
  for (const auto& t : terms) {
    const int own = player == 0 ? t.s0 : t.s1;
    const int opp = player == 0 ? t.s1 : t.s0;
    const double w = (player == 0 ? -t.value : t.value) * (opp < 0 ? 1.0 : opponent[opp]);
    if (own < 0)
      c += w;
    else
      loss[own] += w;
  }
  if (constant) *constant = c;
  return loss;
}

Vec loss_vector(const Game& game, int player, const Vec& opponent) {
  PlayerView v0 = tfsdm_for_player(game, 0), v1 = tfsdm_for_player(game, 1);
  const PlayerView& opp = player == 0 ? v1 : v0;
  if (!validate_strategy(opp.tree, opponent))
    throw std::invalid_argument("loss_vector: invalid opponent strategy");
  const int n = (player == 0 ? v0 : v1).tree.num_sequences();
  return loss_vector(payoff_terms(game, v0, v1), player, n, opponent);
}

double expected_payoff(const Game& game, const PlayerView& v0, const Vec& x0, const PlayerView& v1,
                       const Vec& x1) {
  std::function<double(int)> walk = [&](int v) -> double {
    const GameNode& node = game.nodes[v];
    if (node.type == GameNodeType::Terminal) return node.payoff;
    double total = 0;
    if (node.type == GameNodeType::Chance) {
      for (std::size_t a = 0; a < node.children.size(); ++a)
        if (node.probs[a] > 0) total += node.probs[a] * walk(node.children[a]);
      return total;
    }
    const PlayerView& view = node.player == 0 ? v0 : v1;
    const Vec& x = node.player == 0 ? x0 : x1;
    const int p = view.last_seq[v];
    const double xp = p < 0 ? 1.0 : x[p];
    if (xp <= 0) return 0.0;
    for (std::size_t a = 0; a < node.children.size(); ++a) {
      const double prob = x[view.node_seq[v] + a] / xp;
      if (prob > 0) total += prob * walk(node.children[a]);
    }
    return total;
  };
  return walk(game.root);
}

}  // namespace tb
