#ifndef MOKSHA_BOARD_HPP
#define MOKSHA_BOARD_HPP

#include <array>
#include <bitset>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace moksha {

// Cells are numbered 1..100; cell 1 is the start, cell 100 the goal.
inline constexpr int kCells = 100;

enum class BoardError {
  Syntax,
  OutOfRange,
  ForbiddenCell,
  SelfLoop,
  DuplicateEntrance,
  ComponentCycle,
  NotNormalized,
};

const char* to_string(BoardError err);

class board_error : public std::runtime_error {
 public:
  board_error(BoardError code, std::string detail);
  BoardError code() const { return code_; }

 private:
  BoardError code_;
};

// A one-way jump between two cells. Chute iff entrance > exit, ladder iff
// entrance < exit; the kind is derived, never stored.
struct Component {
  int entrance = 0;
  int exit = 0;

  bool is_chute() const { return entrance > exit; }
  bool is_ladder() const { return entrance < exit; }
  std::string str() const;  // canonical "e>x" rendering

  friend auto operator<=>(const Component&, const Component&) = default;
};

// A validated board: components sorted ascending by entrance, entrances
// pairwise distinct, nothing touching cells 1 or 100, no self-loops.
// Chains (one component's exit on another's entrance) are legal input;
// normalize() collapses them.
class Board {
 public:
  Board() { rebuild_index(); }

  // Accepts the pair grammar "e1>x1,e2>x2,..." ("" is the 0 Board) and the
  // naming form "N([e1,...],[x1,...])".
  static Board parse(const std::string& text);

  // Board file: one "entrance exit" pair per line, '#' comments and blank
  // lines ignored.
  static Board parse_file(const std::string& path);

  static Board from_components(std::vector<Component> components);

  const std::vector<Component>& components() const { return components_; }
  int size() const { return static_cast<int>(components_.size()); }

  // "N([e1,...,eN],[x1,...,xN])" with entrances ascending; "0([],[])" when empty.
  std::string name() const;
  // The pair-grammar rendering "e1>x1,...", canonical order.
  std::string pair_string() const;

  bool is_entrance(int cell) const { return comp_at_[cell] >= 0; }
  bool is_exit(int cell) const { return exit_cells_[cell]; }
  // Component starting at `cell`, or nullptr.
  const Component* component_at(int cell) const;

  // No exit sits on an entrance, i.e. every landing resolves in one hop.
  bool resolved() const;

  // True when all exits are pairwise distinct and disjoint from the
  // entrances: the family the exact counting formulas enumerate.
  bool distinct_exits() const;

  // Collapses chained components so that each rewritten component ends at the
  // final cell of its chain. Throws ComponentCycle when the chain loops.
  Board normalize() const;

  // Exit of the component starting at `cell`, else `cell` itself.
  // Requires a resolved board.
  int resolve_landing(int cell) const;

  friend bool operator==(const Board&, const Board&) = default;

 private:
  explicit Board(std::vector<Component> components);
  void rebuild_index();

  std::vector<Component> components_;
  std::array<int8_t, kCells + 1> comp_at_{};  // index into components_, -1 if none
  std::bitset<kCells + 1> exit_cells_{};
};

// Throws NotNormalized unless board.resolved().
void require_resolved(const Board& board);

}  // namespace moksha

#endif  // MOKSHA_BOARD_HPP
