#include "moksha/structural.hpp"

#include <algorithm>
#include <bitset>
#include <cmath>

#include "moksha/linalg.hpp"
#include "moksha/matrix.hpp"

namespace moksha {

std::vector<int> TrapRegion::cells() const {
  std::vector<int> out;
  out.reserve(M - m + 1);
  for (int c = m; c <= M; ++c) out.push_back(c);
  return out;
}

std::vector<ChuteBarrier> find_chute_barriers(const Board& board) {
  require_resolved(board);
  std::vector<ChuteBarrier> barriers;
  int run_start = 0;
  for (int cell = 2; cell <= kCells; ++cell) {
    const Component* c = board.component_at(cell);
    bool chute_entrance = c && c->is_chute();
    if (chute_entrance && run_start == 0) run_start = cell;
    if (!chute_entrance && run_start != 0) {
      int length = cell - run_start;
      if (length >= 6) {
        ChuteBarrier barrier{run_start, length, {}, false};
        for (int e = run_start; e < cell; ++e) barrier.chutes.push_back(*board.component_at(e));
        barriers.push_back(std::move(barrier));
      }
      run_start = 0;
    }
  }

  // Merge rule: two adjacent barriers with no component exit strictly between
  // their runs act as a single barrier from end to end.
  size_t individual = barriers.size();
  for (size_t i = 0; i + 1 < individual; ++i) {
    const ChuteBarrier& lo = barriers[i];
    const ChuteBarrier& hi = barriers[i + 1];
    bool exit_between = false;
    for (const Component& c : board.components()) {
      if (c.exit > lo.last_entrance() && c.exit < hi.first_entrance) {
        exit_between = true;
        break;
      }
    }
    if (exit_between) continue;
    ChuteBarrier merged{lo.first_entrance, hi.last_entrance() - lo.first_entrance + 1, {}, true};
    merged.chutes = lo.chutes;
    merged.chutes.insert(merged.chutes.end(), hi.chutes.begin(), hi.chutes.end());
    barriers.push_back(std::move(merged));
  }
  std::sort(barriers.begin(), barriers.end(), [](const ChuteBarrier& a, const ChuteBarrier& b) {
    if (a.first_entrance != b.first_entrance) return a.first_entrance < b.first_entrance;
    return a.merged < b.merged;
  });
  return barriers;
}

TrapRegion trap_region(const Board& board, const ChuteBarrier& barrier) {
  TrapRegion region;
  region.barrier = barrier;
  region.M = barrier.first_entrance - 1;

  int prev = barrier.first_entrance;  // m1
  region.m_sequence.push_back(prev);
  int cur = kCells + 1;
  for (const Component& c : barrier.chutes) cur = std::min(cur, c.exit);
  region.m_sequence.push_back(cur);  // m2: lowest exit of the barrier's chutes
  while (true) {
    // Lowest exit among chutes entering strictly between the last two values.
    int next = kCells + 1;
    for (int cell = cur + 1; cell < prev; ++cell) {
      const Component* c = board.component_at(cell);
      if (c && c->is_chute()) next = std::min(next, c->exit);
    }
    if (next >= cur) break;  // no such chute, or the descent has stopped
    prev = cur;
    cur = next;
    region.m_sequence.push_back(cur);
  }
  region.m = cur;

  for (const Component& c : board.components()) {
    if (c.is_ladder() && c.entrance >= region.m && c.entrance <= region.M &&
        c.exit > region.M + barrier.length) {
      region.escape_ladders.push_back(c);
    }
  }
  return region;
}

namespace {

void require_closed(const TrapRegion& region) {
  if (!region.closed()) {
    throw structural_error("RegionNotClosed: region has escape ladders");
  }
}

// Maximal runs of consecutive cells below min(region), each housing a ladder
// that clears max(region); keep runs with length in [lo, hi].
std::vector<std::vector<Component>> vaulting_runs(const Board& board, const TrapRegion& region,
                                                  int lo, int hi) {
  std::vector<std::vector<Component>> runs;
  std::vector<Component> current;
  auto flush = [&] {
    int len = static_cast<int>(current.size());
    if (len >= lo && len <= hi) runs.push_back(current);
    current.clear();
  };
  for (int cell = 2; cell <= region.m; ++cell) {
    const Component* c = cell < region.m ? board.component_at(cell) : nullptr;
    if (c && c->is_ladder() && c->exit > region.M) {
      current.push_back(*c);
    } else {
      flush();
    }
  }
  return runs;
}

}  // namespace

std::vector<std::vector<Component>> find_ladder_bridges(const Board& board,
                                                        const TrapRegion& region) {
  require_closed(region);
  return vaulting_runs(board, region, 6, kCells);
}

std::vector<std::vector<Component>> find_ladder_passes(const Board& board,
                                                       const TrapRegion& region) {
  require_closed(region);
  return vaulting_runs(board, region, 1, 5);
}

std::vector<Component> find_trappers(const Board& board, const TrapRegion& region) {
  require_closed(region);
  TransitionMatrix m = TransitionMatrix::build(board);

  // h(i) = probability of ever entering the region from i: pinned at 1 inside
  // the region, 0 on closed classes disjoint from it, linear elsewhere.
  std::array<double, kCells + 1> h{};
  std::bitset<kCells + 1> pinned;
  for (int c = region.m; c <= region.M; ++c) {
    pinned.set(c);
    h[c] = 1.0;
  }
  for (const auto& cls : closed_classes(m)) {
    bool disjoint = true;
    for (int c : cls) {
      if (c >= region.m && c <= region.M) {
        disjoint = false;
        break;
      }
    }
    if (!disjoint) continue;
    for (int c : cls) pinned.set(c);  // h stays 0
  }

  std::array<int, kCells + 1> idx;
  idx.fill(-1);
  std::vector<int> transient;
  for (int c = 1; c <= kCells; ++c) {
    if (!pinned[c]) {
      idx[c] = static_cast<int>(transient.size());
      transient.push_back(c);
    }
  }
  const size_t n = transient.size();
  if (n > 0) {
    std::vector<double> a(n * n, 0.0), b(n, 0.0), x;
    for (size_t r = 0; r < n; ++r) {
      int i = transient[r];
      a[r * n + r] += 1.0;
      for (int j = 1; j <= kCells; ++j) {
        int six = m.sixths(i, j);
        if (six == 0) continue;
        if (idx[j] >= 0) {
          a[r * n + idx[j]] -= six / 6.0;
        } else {
          b[r] += (six / 6.0) * h[j];
        }
      }
    }
    if (!linalg::solve(a, b, x)) {
      throw structural_error("SingularSystem: trapper absorption solve failed");
    }
    for (size_t r = 0; r < n; ++r) h[transient[r]] = x[r];
  }

  std::vector<Component> trappers;
  for (const Component& c : board.components()) {
    bool entrance_outside = c.entrance < region.m || c.entrance > region.M;
    if (entrance_outside && h[c.exit] >= 1.0 - 1e-12) trappers.push_back(c);
  }
  return trappers;
}

bool is_functional(const std::vector<Component>& bridge, const TrapRegion&,
                   const std::vector<Component>& trappers) {
  int min_entrance = kCells + 1, min_exit = kCells + 1;
  for (const Component& c : bridge) {
    min_entrance = std::min(min_entrance, c.entrance);
    min_exit = std::min(min_exit, c.exit);
  }
  for (const Component& t : trappers) {
    if (t.entrance < min_entrance || t.entrance > min_exit) return false;
  }
  return true;
}

StructuralReport flowchart_classify(const Board& board, std::optional<Verdict> ground_truth) {
  StructuralReport report;
  report.barriers = find_chute_barriers(board);
  for (const ChuteBarrier& b : report.barriers) {
    report.trap_regions.push_back(trap_region(board, b));
  }

  auto decide = [&]() -> Verdict {
    bool any_individual_barrier = false;
    bool any_individual_without_escape = false;
    for (size_t i = 0; i < report.barriers.size(); ++i) {
      if (report.barriers[i].merged) continue;
      any_individual_barrier = true;
      if (report.trap_regions[i].closed()) any_individual_without_escape = true;
    }
    if (!any_individual_barrier) {
      report.flowchart_step = 1;
      return Verdict::UltimatelyWinnable;
    }
    if (!any_individual_without_escape) {
      report.flowchart_step = 2;
      return Verdict::UltimatelyWinnable;
    }

    // Step 3: closed sets are the closed trap regions, merged spans included.
    std::vector<const TrapRegion*> closed_sets;
    for (const TrapRegion& r : report.trap_regions) {
      if (!r.closed()) continue;
      bool duplicate = false;
      for (const TrapRegion* seen : closed_sets) {
        if (seen->m == r.m && seen->M == r.M) duplicate = true;
      }
      if (!duplicate) closed_sets.push_back(&r);
    }

    bool all_have_flb = true;
    bool all_uncovered_have_lp = true;
    for (const TrapRegion* region : closed_sets) {
      auto bridges = find_ladder_bridges(board, *region);
      auto passes = find_ladder_passes(board, *region);
      auto trappers = find_trappers(board, *region);
      report.ladder_bridges.insert(report.ladder_bridges.end(), bridges.begin(), bridges.end());
      report.ladder_passes.insert(report.ladder_passes.end(), passes.begin(), passes.end());
      report.trappers.push_back({region->m, region->M, trappers});

      bool has_flb = false;
      for (const auto& bridge : bridges) {
        if (is_functional(bridge, *region, trappers)) has_flb = true;
      }
      if (!has_flb) {
        all_have_flb = false;
        if (passes.empty()) all_uncovered_have_lp = false;
      }
    }
    if (all_have_flb) {
      report.flowchart_step = 4;
      return Verdict::UltimatelyWinnable;
    }
    if (all_uncovered_have_lp) {
      report.flowchart_step = 5;
      return Verdict::OccasionallyWinnable;
    }
    report.flowchart_step = 6;
    return Verdict::Unwinnable;
  };

  report.flowchart_verdict = decide();
  Verdict truth = ground_truth ? *ground_truth : classify_board(board).verdict;
  report.agrees_with_ground_truth = report.flowchart_verdict == truth;
  return report;
}

}  // namespace moksha
