#include <array>
#include <functional>
#include <string>

#include "treebandit/game.hpp"

namespace tb {

Game matrix_game() {
  static constexpr double payoff[3][2] = {{-1, 1}, {1, -0.5}, {0.9, -1}};
  Game g;
  g.name = "matrix";
  g.root = g.add_player(0, "rows");
  for (int r = 0; r < 3; ++r) {
    int col = g.add_player(1, "cols");
    g.add_child(g.root, "r" + std::to_string(r + 1), col);
    for (int c = 0; c < 2; ++c) g.add_child(col, "c" + std::to_string(c + 1), g.add_terminal(payoff[r][c]));
  }
  return g;
}

Game kuhn_poker() {
  static const char* rank = "JQK";
  Game g;
  g.name = "kuhn";
  g.root = g.add_chance();
  for (int c0 = 0; c0 < 3; ++c0)
    for (int c1 = 0; c1 < 3; ++c1) {
      if (c0 == c1) continue;
      const double sign = c0 > c1 ? 1.0 : -1.0;
      const std::string k0(1, rank[c0]), k1(1, rank[c1]);
      int p0 = g.add_player(0, k0);
      g.add_child(g.root, k0 + k1, p0, 1.0 / 6.0);
      // check
      int p1c = g.add_player(1, k1 + ":k");
      g.add_child(p0, "check", p1c);
      g.add_child(p1c, "check", g.add_terminal(sign));
      int p0b = g.add_player(0, k0 + ":kb");
      g.add_child(p1c, "bet", p0b);
      g.add_child(p0b, "fold", g.add_terminal(-1));
      g.add_child(p0b, "call", g.add_terminal(2 * sign));
      // bet
      int p1b = g.add_player(1, k1 + ":b");
      g.add_child(p0, "bet", p1b);
      g.add_child(p1b, "fold", g.add_terminal(1));
      g.add_child(p1b, "call", g.add_terminal(2 * sign));
    }
  return g;
}

Game leduc_poker() { return leduc_poker(LeducRules{}); }

Game leduc_poker(const LeducRules& rules) {
  static const char* rank = "JQK";
  Game g;
  g.name = "leduc";

  struct State {
    int card[2];
    int pub = -1;
    int round = 0;
    std::string hist;  // betting of all rounds, '/' between rounds
    std::string round_hist;
    int contrib[2] = {1, 1};
    int bets[2] = {0, 0};
    int to_act = 0;
  };

  auto showdown = [](const State& s) {
    const int r0 = s.card[0] / 2, r1 = s.card[1] / 2, pub = s.pub / 2;
    int winner = -1;
    if (r0 == pub)
      winner = 0;
    else if (r1 == pub)
      winner = 1;
    else if (r0 != r1)
      winner = r0 > r1 ? 0 : 1;
    if (winner < 0) return 0.0;
    return winner == 0 ? double(s.contrib[1]) : -double(s.contrib[0]);
  };

  auto key = [&](const State& s, int p) {
    std::string k(1, rank[s.card[p] / 2]);
    k += s.pub >= 0 ? std::string(1, rank[s.pub / 2]) : std::string("?");
    return k + ":" + s.hist;
  };

  std::function<int(State)> act;
  auto end_round = [&](State s) -> int {
    if (s.round == 1) return g.add_terminal(showdown(s));
    int c = g.add_chance();
    for (int card = 0; card < 6; ++card) {
      if (card == s.card[0] || card == s.card[1]) continue;
      State n = s;
      n.pub = card;
      n.round = 1;
      n.hist += "/";
      n.round_hist.clear();
      n.bets[0] = n.bets[1] = 0;
      n.to_act = 0;
      g.add_child(c, std::string(1, rank[card / 2]), act(n), 0.25);
    }
    return c;
  };

  act = [&](State s) -> int {
    const int p = s.to_act, o = 1 - p;
    const int size = s.round == 0 ? 2 : 4;
    const bool facing = s.contrib[o] > s.contrib[p];
    const int placed = rules.per_player ? s.bets[p] : s.bets[0] + s.bets[1];
    const bool can_raise = placed < rules.max_bets;
    int v = g.add_player(p, key(s, p));
    auto then = [&](char c, State n) {
      n.hist += c;
      n.round_hist += c;
      n.to_act = o;
      return n;
    };
    if (!facing) {
      State n = then('k', s);
      g.add_child(v, "check", s.round_hist == "k" ? end_round(n) : act(n));
      if (can_raise) {
        State b = then('b', s);
        b.contrib[p] += size;
        ++b.bets[p];
        g.add_child(v, "bet", act(b));
      }
    } else {
      g.add_child(v, "fold", g.add_terminal(p == 0 ? -s.contrib[0] : s.contrib[1]));
      State c = then('c', s);
      c.contrib[p] = c.contrib[o];
      g.add_child(v, "call", end_round(c));
      if (can_raise) {
        State r = then('r', s);
        r.contrib[p] = r.contrib[o] + size;
        ++r.bets[p];
        g.add_child(v, "raise", act(r));
      }
    }
    return v;
  };

  g.root = g.add_chance();
  for (int c0 = 0; c0 < 6; ++c0)
    for (int c1 = 0; c1 < 6; ++c1) {
      if (c0 == c1) continue;
      State s;
      s.card[0] = c0;
      s.card[1] = c1;
      int child = act(s);
      g.add_child(g.root, std::to_string(c0) + std::to_string(c1), child, 1.0 / 30.0);
    }
  return g;
}

Game goofspiel(int k) { return goofspiel(k, GoofspielRules{}); }

Game goofspiel(int k, const GoofspielRules& rules) {
  if (k < 2 || k > 8) throw std::invalid_argument("goofspiel: k must lie in [2, 8]");
  Game g;
  g.name = "goofspiel" + std::to_string(k);
  const unsigned full = (1u << k) - 1;

  // public: revealed prizes and round outcomes; private: own bids
  struct State {
    unsigned hand[2], prizes;
    double diff = 0;
    std::string pub, own[2];
  };

  std::function<int(State)> round;
  auto bid = [&](State s, int prize) -> int {
    int v0 = g.add_player(0, s.pub + "|" + s.own[0]);
    for (int b0 = 1; b0 <= k; ++b0) {
      if (!(s.hand[0] >> (b0 - 1) & 1)) continue;
      int v1 = g.add_player(1, s.pub + "|" + s.own[1]);
      g.add_child(v0, std::to_string(b0), v1);
      for (int b1 = 1; b1 <= k; ++b1) {
        if (!(s.hand[1] >> (b1 - 1) & 1)) continue;
        State n = s;
        n.hand[0] &= ~(1u << (b0 - 1));
        n.hand[1] &= ~(1u << (b1 - 1));
        n.diff += b0 > b1 ? prize : b0 < b1 ? -prize : 0;
        n.own[0] += std::to_string(b0);
        n.own[1] += std::to_string(b1);
        if (rules.reveal_bids)
          n.pub += "(" + std::to_string(b0) + std::to_string(b1) + ")";
        else
          n.pub += b0 > b1 ? "W" : b0 < b1 ? "L" : "T";
        g.add_child(v1, std::to_string(b1), round(n));
      }
    }
    return v0;
  };

  round = [&](State s) -> int {
    if (!s.prizes) return g.add_terminal(s.diff);
    if (!rules.random_prizes) {
      int prize = 32 - __builtin_clz(s.prizes);  // highest remaining
      s.prizes &= ~(1u << (prize - 1));
      return bid(s, prize);
    }
    const int left = __builtin_popcount(s.prizes);
    int c = g.add_chance();
    for (int p = 1; p <= k; ++p) {
      if (!(s.prizes >> (p - 1) & 1)) continue;
      State n = s;
      n.prizes &= ~(1u << (p - 1));
      n.pub += "p" + std::to_string(p);
      g.add_child(c, "prize" + std::to_string(p), bid(n, p), 1.0 / left);
    }
    return c;
  };

  State s;
  s.hand[0] = s.hand[1] = s.prizes = full;
  g.root = round(s);
  return g;
}

Game make_game(const std::string& name, int goof_k) {
  if (name == "matrix") return matrix_game();
  if (name == "kuhn") return kuhn_poker();
  if (name == "leduc") return leduc_poker();
  if (name == "goofspiel") return goofspiel(goof_k);
  throw std::invalid_argument("unknown game: " + name);
}

}  // namespace tb
