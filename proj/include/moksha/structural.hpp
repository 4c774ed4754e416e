#ifndef MOKSHA_STRUCTURAL_HPP
#define MOKSHA_STRUCTURAL_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "moksha/board.hpp"
#include "moksha/classify.hpp"

namespace moksha {

// Six or more chutes on consecutive entrance cells. A merged entry is the
// end-to-end span of two adjacent barriers with no component exit strictly
// between their runs; its span then includes non-chute cells.
struct ChuteBarrier {
  int first_entrance = 0;  // M+1
  int length = 0;          // lambda >= 6
  std::vector<Component> chutes;
  bool merged = false;

  int last_entrance() const { return first_entrance + length - 1; }
};

// The interval {m..M} below a barrier, with M = first_entrance - 1 and m the
// fixed point of the descending lowest-exit sequence. Closed iff no ladder
// jumps from inside it past the barrier.
struct TrapRegion {
  ChuteBarrier barrier;
  int m = 0;
  int M = 0;
  std::vector<int> m_sequence;  // strictly decreasing, starts at M+1, ends at m
  std::vector<Component> escape_ladders;

  bool closed() const { return escape_ladders.empty(); }
  std::vector<int> cells() const;
};

struct RegionTrappers {
  int m = 0;
  int M = 0;
  std::vector<Component> trappers;
};

struct StructuralReport {
  std::vector<ChuteBarrier> barriers;
  std::vector<TrapRegion> trap_regions;                 // one per barrier entry
  std::vector<std::vector<Component>> ladder_passes;    // runs, over all closed sets
  std::vector<std::vector<Component>> ladder_bridges;
  std::vector<RegionTrappers> trappers;                 // per closed set
  Verdict flowchart_verdict = Verdict::UltimatelyWinnable;
  int flowchart_step = 0;  // decision point that produced the verdict: 1,2,4,5,6
  bool agrees_with_ground_truth = true;
};

class structural_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Maximal runs of >= 6 consecutive chute entrances, sorted by first entrance,
// followed by merged pseudo-barriers for adjacent pairs whose gap holds no
// component exit.
std::vector<ChuteBarrier> find_chute_barriers(const Board& board);

TrapRegion trap_region(const Board& board, const ChuteBarrier& barrier);

// Runs of consecutive ladder entrances below min(region) whose exits all clear
// max(region): 6+ consecutive for a bridge, 1..5 for a pass. Both require the
// region to be closed (throws structural_error otherwise).
std::vector<std::vector<Component>> find_ladder_bridges(const Board& board,
                                                        const TrapRegion& region);
std::vector<std::vector<Component>> find_ladder_passes(const Board& board,
                                                       const TrapRegion& region);

// Components outside the region whose exits enter it with probability 1.
std::vector<Component> find_trappers(const Board& board, const TrapRegion& region);

// A bridge is functional when every trapper entrance e satisfies
// min(bridge entrances) <= e <= min(bridge exits).
bool is_functional(const std::vector<Component>& bridge, const TrapRegion& region,
                   const std::vector<Component>& trappers);

// The identification flowchart, with the stationary-distribution decision
// node replaced by its barrier/escape-ladder substitution. Advisory: the
// report carries the comparison against the ground-truth classifier. Pass
// `ground_truth` when the board's classification is already known to avoid
// recomputing it.
StructuralReport flowchart_classify(const Board& board,
                                    std::optional<Verdict> ground_truth = std::nullopt);

}  // namespace moksha

#endif  // MOKSHA_STRUCTURAL_HPP
