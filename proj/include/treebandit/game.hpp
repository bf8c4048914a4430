#pragma once

#include <string>
#include <vector>

#include "treebandit/tree.hpp"

namespace tb {

enum class GameNodeType { Chance, Player, Terminal };

// Two-player zero-sum extensive-form game. Payoffs are for player 0.
struct GameNode {
  GameNodeType type = GameNodeType::Terminal;
  int player = -1;
  std::string infoset;  // player nodes sharing a key form one information set
  std::vector<std::string> actions;
  std::vector<int> children;
  std::vector<double> probs;  // chance nodes only
  double payoff = 0;          // terminal nodes only
};

struct Game {
  std::string name;
  std::vector<GameNode> nodes;
  int root = 0;

  int add_chance();
  int add_player(int player, std::string infoset);
  int add_terminal(double payoff);
  void add_child(int node, std::string action, int child, double prob = 0);
};

class GameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The decision process one player faces. Decision points are the player's
// information sets; everything the player observes in between becomes
// observation branching.
struct PlayerView {
  int player = 0;
  Tree tree;
  std::vector<int> node_seq;  // per game node: first sequence of the acting infoset, or -1
  std::vector<int> last_seq;  // per game node: last own sequence on the path to it (-1 = empty)
};

// Throws GameError on imperfect recall or inconsistent information sets.
PlayerView tfsdm_for_player(const Game& game, int player);

// Bilinear form of the payoff: u(x0, x1) = sum_k value_k * x0[s0_k] * x1[s1_k]
// where index -1 means the empty sequence (weight 1). Chance is folded into value.
struct PayoffTerm {
  int s0, s1;
  double value;
};
std::vector<PayoffTerm> payoff_terms(const Game& game, const PlayerView& v0, const PlayerView& v1);

// Loss of `player` per own sequence against a fixed opponent sequence-form strategy:
// entry s sums -payoff * chance * opponent reach over terminals whose last own
// sequence is s. Terminals reached before the player acts go into *constant.
Vec loss_vector(const std::vector<PayoffTerm>& terms, int player, int num_sequences,
                const Vec& opponent, double* constant = nullptr);
Vec loss_vector(const Game& game, int player, const Vec& opponent);

// Expected payoff to player 0 by direct traversal of the game tree, reading the
// behavioral strategies off the sequence-form vectors.
double expected_payoff(const Game& game, const PlayerView& v0, const Vec& x0, const PlayerView& v1,
                       const Vec& x1);

// Builders.
Game matrix_game();
Game kuhn_poker();
Game leduc_poker();
struct LeducRules {
  int max_bets = 2;         // bets plus raises allowed in one betting round
  bool per_player = false;  // if set, the cap applies to each player separately
};
Game leduc_poker(const LeducRules& rules);

struct GoofspielRules {
  bool random_prizes = true;     // prize order drawn by chance; otherwise k, k-1, ..., 1
  bool reveal_bids = false;      // players see the opponent's bid after each round; otherwise only win/tie/lose
};
Game goofspiel(int k);
Game goofspiel(int k, const GoofspielRules& rules);
// Name lookup: "matrix", "kuhn", "leduc", "goofspiel" (k = goof_k).
Game make_game(const std::string& name, int goof_k = 3);

}  // namespace tb
