#ifndef MOKSHA_SIMULATE_HPP
#define MOKSHA_SIMULATE_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "moksha/board.hpp"

namespace moksha {

// splitmix64 step (Steele, Lea & Flood's published mixer); used for seeding
// and for deriving per-worker streams.
uint64_t splitmix64(uint64_t& state);

// Stream-split rule: worker k draws its generator seed from a splitmix64
// sequence started at `seed`, advanced k+1 times. Identical (seed, k) pairs
// give identical streams on every platform.
uint64_t derive_stream_seed(uint64_t seed, uint64_t worker);

// xoshiro256** (Blackman & Vigna), 64-bit seeded via splitmix64.
class Xoshiro256ss {
 public:
  explicit Xoshiro256ss(uint64_t seed);
  uint64_t next();
  // Uniform integer in [0, n) by rejection from the raw 64-bit output;
  // every residue is exactly equally likely.
  uint64_t below(uint64_t n);
  int die() { return static_cast<int>(below(6)) + 1; }

 private:
  std::array<uint64_t, 4> s_;
};

enum class Outcome { Won, Cutoff, TrappedInClosedSet };

struct GameTrace {
  std::vector<int> resting_cells;  // starts at cell 1
  Outcome outcome = Outcome::Cutoff;
  int moves = 0;
  int trapped_class = -1;  // index into closed_classes(board) when trapped
};

struct SimConfig {
  uint64_t seed = 0;
  long games = 1;
  int max_moves = 10000;
  bool shortcircuit = true;  // stop a trace on entering a closed set != {100}
};

// Precomputed landing table and closed-set membership for one board; cheap to
// copy the board in, immutable afterwards, safe to share across threads.
class GameEngine {
 public:
  explicit GameEngine(const Board& board);

  GameTrace play(Xoshiro256ss& rng, int max_moves = 10000, bool shortcircuit = true,
                 bool record_trace = true) const;

  // Move count if won within max_moves, else -1 (shortcircuits on traps).
  // The trace-free hot path for large estimates.
  int play_fast(Xoshiro256ss& rng, int max_moves) const;

  const Board& board() const { return board_; }

 private:
  Board board_;
  std::array<uint8_t, kCells + 7> landing_{};   // landing_[c] = resolved cell, padded past 100
  std::array<int8_t, kCells + 1> class_of_{};   // closed-class index, -1 outside
};

GameTrace play_game(const Board& board, Xoshiro256ss& rng, int max_moves = 10000,
                    bool shortcircuit = true);

struct WinEstimate {
  double estimate = 0;
  double std_error = 0;
  long games = 0;
  long wins = 0;
  long trapped = 0;
  long cutoff = 0;
  std::vector<long> win_moves_histogram;  // index = move count
};

// Fraction of games won over cfg.games independent games started at cell 1;
// deterministic for a fixed config.
WinEstimate estimate_win_probability(const Board& board, const SimConfig& cfg);

class simulate_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// shared_exits=false: uniform over the C(98,2N) C(2N,N) N! boards with all
// entrances and exits distinct (requires N <= 49). shared_exits=true: distinct
// entrances, each exit drawn independently from the non-entrance cells — a
// heuristic sampler, not uniform over the shared-exit family.
Board random_board(int n, bool shared_exits, Xoshiro256ss& rng);

}  // namespace moksha

#endif  // MOKSHA_SIMULATE_HPP
