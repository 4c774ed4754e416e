#ifndef MOKSHA_MATRIX_HPP
#define MOKSHA_MATRIX_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "moksha/board.hpp"

namespace moksha {

// Row-major 100x100 grid of probabilities stored as integer sixths (0..6);
// every probability of the one-step chain is an exact multiple of 1/6.
using SixthsGrid = std::array<std::array<uint8_t, kCells>, kCells>;

// Listing order of the 100 states; order[k] is the state shown at position k.
struct StatePermutation {
  std::array<int, kCells> order{};

  static StatePermutation identity();
  bool valid() const;  // bijection on 1..100
};

// One-step transition probability matrix of a resolved board.
//
// Mechanics: from a non-entrance cell i != 100, each die face d in 1..6 moves
// to i+d, resolving the landing through a component if one starts there; a
// roll past cell 100 leaves the piece in place. Cell 100 is absorbing.
// Entrance cells are never rested upon; their rows are a deterministic jump
// to the resolved exit (the DieRoll variant instead gives entrances ordinary
// die-roll rows, which classification must be insensitive to).
class TransitionMatrix {
 public:
  enum class EntranceRows { ResolvedJump, DieRoll };

  static TransitionMatrix build(const Board& board,
                                EntranceRows style = EntranceRows::ResolvedJump);

  // 1-based states.
  int sixths(int from, int to) const { return six_[from - 1][to - 1]; }
  double p(int from, int to) const { return six_[from - 1][to - 1] / 6.0; }

  const SixthsGrid& grid() const { return six_; }
  const Board& board() const { return board_; }

  // States j with p(from, j) > 0.
  std::vector<int> successors(int from) const;

 private:
  SixthsGrid six_{};
  Board board_;
};

// Simultaneous row/column reindexing: out[a][b] = m[perm.order[a]][perm.order[b]].
// Throws std::invalid_argument when perm is not a bijection on 1..100.
SixthsGrid permute_matrix(const TransitionMatrix& m, const StatePermutation& perm);
SixthsGrid permute_matrix(const SixthsGrid& grid, const StatePermutation& perm);

// Binary PGM (P5, 100x100, maxval 255); pixel = round(255 * (1 - p)), so 0 is
// white and 1 is black. Throws std::runtime_error on I/O failure.
void render_heatmap(const SixthsGrid& grid, const std::string& path);
void render_heatmap(const std::array<std::array<double, kCells>, kCells>& grid,
                    const std::string& path);

// 100 lines of 100 space-separated "a/6" entries.
std::string dump_sixths(const SixthsGrid& grid);

}  // namespace moksha

#endif  // MOKSHA_MATRIX_HPP
