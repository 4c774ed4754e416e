#ifndef MOKSHA_TESTS_FIXTURES_HPP
#define MOKSHA_TESTS_FIXTURES_HPP

#include <map>
#include <set>
#include <vector>

#include "moksha/board.hpp"
#include "moksha/matrix.hpp"
#include "moksha/simulate.hpp"

namespace fixtures {

// Recurring boards, named by their structure.

// Eight components: a six-chute wall at 51..56, a ladder 43>98 jumping from
// below the wall's exits to past it, and a chute 99>2.
inline const char* kWallWithEscape = "43>98,51>32,52>33,53>34,54>35,55>36,56>37,99>2";

// Six chutes walling off 94..99, the last stretch before the goal.
inline const char* kWallBeforeGoal = "94>89,95>69,96>48,97>42,98>61,99>81";

// Ten scattered components, no six consecutive chute entrances anywhere.
inline const char* kScatteredTen = "2>23,9>31,21>63,26>4,34>65,50>15,54>90,88>24,95>53,97>80";

// A six-chute wall at 54..59 plus the single ladder 2>99 vaulting it.
inline const char* kSingleLadderPass = "2>99,54>50,55>32,56>27,57>23,58>39,59>41";

// Two six-chute walls (34..39 and 74..79) plus ladders 10>71 and 41>81.
inline const char* kDoubleWall =
    "10>71,34>30,35>12,36>7,37>3,38>19,39>21,41>81,74>70,75>52,76>54,77>56,78>58,79>60";

// Six chutes all funneling into cell 50, which becomes absorbing.
inline const char* kFunnelToFifty = "51>50,52>50,53>50,54>50,55>50,56>50";

inline moksha::Board board(const char* text) { return moksha::Board::parse(text); }

// Iterative landing resolution; follows component chains, so it also works on
// boards that have not been normalized. Test-side counterpart of
// Board::resolve_landing.
inline int follow_landing(const moksha::Board& b, int cell) {
  int guard = 0;
  while (const moksha::Component* c = b.component_at(cell)) {
    cell = c->exit;
    if (++guard > 200) throw std::logic_error("component cycle in test board");
  }
  return cell;
}

// Brute-force single-move enumerator: plays all six die faces from `cell` and
// tallies the resting destinations. Independent of TransitionMatrix::build.
inline std::map<int, int> single_move_counts(const moksha::Board& b, int cell) {
  std::map<int, int> counts;
  for (int d = 1; d <= 6; ++d) {
    int target = cell + d;
    int dest = target > 100 ? cell : follow_landing(b, target);
    counts[dest] += 1;
  }
  return counts;
}

// Graph oracle: no positive-probability one-step transition leaves `cells`.
inline bool closed_in_graph(const moksha::TransitionMatrix& m, const std::set<int>& cells) {
  for (int i : cells) {
    for (int j = 1; j <= 100; ++j) {
      if (m.sixths(i, j) > 0 && !cells.count(j)) return false;
    }
  }
  return true;
}

inline std::vector<int> interval(int lo, int hi) {
  std::vector<int> out;
  for (int c = lo; c <= hi; ++c) out.push_back(c);
  return out;
}

// Boards conditioned on containing a chute-barrier: six consecutive chute
// entrances at a random anchor with distinct exits below, plus `extra`
// components scattered over the remaining cells. Uniform sampling almost
// never produces a barrier, so barrier-specific properties use this.
inline moksha::Board random_barrier_board(moksha::Xoshiro256ss& rng, int extra) {
  int first = 8 + static_cast<int>(rng.below(87));  // anchor in 8..94
  std::vector<int> below;
  for (int c = 2; c < first; ++c) below.push_back(c);
  for (int i = 0; i < 6; ++i) {
    int j = i + static_cast<int>(rng.below(below.size() - i));
    std::swap(below[i], below[j]);
  }
  std::vector<moksha::Component> comps;
  for (int k = 0; k < 6; ++k) comps.push_back({first + k, below[k]});

  std::set<int> used;
  for (const auto& c : comps) {
    used.insert(c.entrance);
    used.insert(c.exit);
  }
  std::vector<int> free_cells;
  for (int c = 2; c <= 99; ++c) {
    if (!used.count(c)) free_cells.push_back(c);
  }
  for (int i = 0; i < 2 * extra; ++i) {
    int j = i + static_cast<int>(rng.below(free_cells.size() - i));
    std::swap(free_cells[i], free_cells[j]);
  }
  for (int k = 0; k < extra; ++k) {
    comps.push_back({free_cells[2 * k], free_cells[2 * k + 1]});
  }
  return moksha::Board::from_components(comps);
}

}  // namespace fixtures

#endif  // MOKSHA_TESTS_FIXTURES_HPP
