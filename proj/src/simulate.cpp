#include "moksha/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "moksha/classify.hpp"

namespace moksha {

uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

uint64_t derive_stream_seed(uint64_t seed, uint64_t worker) {
  uint64_t state = seed;
  uint64_t out = 0;
  for (uint64_t k = 0; k <= worker; ++k) out = splitmix64(state);
  return out;
}

Xoshiro256ss::Xoshiro256ss(uint64_t seed) {
  uint64_t state = seed;
  for (auto& word : s_) word = splitmix64(state);
}

uint64_t Xoshiro256ss::next() {
  auto rotl = [](uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
  uint64_t result = rotl(s_[1] * 5, 7) * 9;
  uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

uint64_t Xoshiro256ss::below(uint64_t n) {
  // Reject the top partial bucket so all residues are equally likely.
  uint64_t threshold = -n % n;  // = 2^64 mod n
  while (true) {
    uint64_t x = next();
    if (x >= threshold) return x % n;
  }
}

GameEngine::GameEngine(const Board& board) : board_(board) {
  require_resolved(board);
  for (int c = 1; c <= kCells; ++c) {
    landing_[c] = static_cast<uint8_t>(board.resolve_landing(c));
  }
  class_of_.fill(-1);
  auto classes = closed_classes(board);
  for (size_t k = 0; k < classes.size(); ++k) {
    if (classes[k].size() == 1 && classes[k].front() == kCells) continue;
    for (int c : classes[k]) class_of_[c] = static_cast<int8_t>(k);
  }
}

GameTrace GameEngine::play(Xoshiro256ss& rng, int max_moves, bool shortcircuit,
                           bool record_trace) const {
  GameTrace trace;
  int cell = 1;
  if (record_trace) trace.resting_cells.push_back(cell);
  for (int move = 1; move <= max_moves; ++move) {
    int target = cell + rng.die();
    if (target <= kCells) cell = landing_[target];
    if (record_trace) trace.resting_cells.push_back(cell);
    trace.moves = move;
    if (cell == kCells) {
      trace.outcome = Outcome::Won;
      return trace;
    }
    if (shortcircuit && class_of_[cell] >= 0) {
      trace.outcome = Outcome::TrappedInClosedSet;
      trace.trapped_class = class_of_[cell];
      return trace;
    }
  }
  trace.moves = max_moves;
  trace.outcome = Outcome::Cutoff;
  return trace;
}

int GameEngine::play_fast(Xoshiro256ss& rng, int max_moves) const {
  int cell = 1;
  for (int move = 1; move <= max_moves; ++move) {
    int target = cell + static_cast<int>(rng.below(6)) + 1;
    if (target <= kCells) cell = landing_[target];
    if (cell == kCells) return move;
    if (class_of_[cell] >= 0) return -1;
  }
  return -1;
}

GameTrace play_game(const Board& board, Xoshiro256ss& rng, int max_moves, bool shortcircuit) {
  return GameEngine(board).play(rng, max_moves, shortcircuit);
}

WinEstimate estimate_win_probability(const Board& board, const SimConfig& cfg) {
  GameEngine engine(board);
  Xoshiro256ss rng(derive_stream_seed(cfg.seed, 0));
  WinEstimate est;
  est.games = cfg.games;
  est.win_moves_histogram.assign(1, 0);
  for (long g = 0; g < cfg.games; ++g) {
    GameTrace t = engine.play(rng, cfg.max_moves, cfg.shortcircuit, /*record_trace=*/false);
    switch (t.outcome) {
      case Outcome::Won:
        ++est.wins;
        if (static_cast<size_t>(t.moves) >= est.win_moves_histogram.size()) {
          est.win_moves_histogram.resize(t.moves + 1, 0);
        }
        ++est.win_moves_histogram[t.moves];
        break;
      case Outcome::TrappedInClosedSet: ++est.trapped; break;
      case Outcome::Cutoff: ++est.cutoff; break;
    }
  }
  est.estimate = static_cast<double>(est.wins) / static_cast<double>(cfg.games);
  est.std_error = std::sqrt(est.estimate * (1.0 - est.estimate) / static_cast<double>(cfg.games));
  return est;
}

Board random_board(int n, bool shared_exits, Xoshiro256ss& rng) {
  if (n < 0) throw simulate_error("Infeasible: negative component count");

  std::array<int, 98> cells;  // the usable track 2..99
  for (int i = 0; i < 98; ++i) cells[i] = i + 2;

  std::vector<Component> components;
  if (!shared_exits) {
    if (n > 49) {
      throw simulate_error("Infeasible: at most 49 components without shared exits");
    }
    // Partial Fisher-Yates: a uniform ordered sample of 2N distinct cells.
    // First N are the entrance set; the rest land on the sorted entrances in
    // sample order, a uniform bijection.
    for (int i = 0; i < 2 * n; ++i) {
      int j = i + static_cast<int>(rng.below(98 - i));
      std::swap(cells[i], cells[j]);
    }
    std::vector<int> entrances(cells.begin(), cells.begin() + n);
    std::sort(entrances.begin(), entrances.end());
    for (int i = 0; i < n; ++i) {
      components.push_back({entrances[i], cells[n + i]});
    }
  } else {
    if (n > 97) {
      throw simulate_error("Infeasible: at most 97 components with shared exits");
    }
    for (int i = 0; i < n; ++i) {
      int j = i + static_cast<int>(rng.below(98 - i));
      std::swap(cells[i], cells[j]);
    }
    for (int i = 0; i < n; ++i) {
      int exit = cells[n + static_cast<int>(rng.below(98 - n))];
      components.push_back({cells[i], exit});
    }
  }
  return Board::from_components(std::move(components));
}

}  // namespace moksha
