#include "moksha/census.hpp"

#include "moksha/classify.hpp"
#include "moksha/simulate.hpp"
#include "moksha/structural.hpp"

namespace moksha {

CensusReport run_census(const std::vector<int>& n_values, long samples_per_n, uint64_t seed) {
  CensusReport report;
  report.seed = seed;
  report.samples_per_n = samples_per_n;
  for (size_t stratum = 0; stratum < n_values.size(); ++stratum) {
    Xoshiro256ss rng(derive_stream_seed(seed, stratum));
    CensusRow row;
    row.n = n_values[stratum];
    row.samples = samples_per_n;
    for (long i = 0; i < samples_per_n; ++i) {
      Board board = random_board(row.n, /*shared_exits=*/false, rng);
      Classification cls = classify_board(board);
      StructuralReport structure = flowchart_classify(board, cls.verdict);
      switch (cls.verdict) {
        case Verdict::UltimatelyWinnable: ++row.ultimately; break;
        case Verdict::OccasionallyWinnable: ++row.occasionally; break;
        case Verdict::Unwinnable: ++row.unwinnable; break;
      }
      bool has_individual_barrier = false;
      for (const ChuteBarrier& b : structure.barriers) {
        if (!b.merged) has_individual_barrier = true;
      }
      if (has_individual_barrier) ++row.with_barrier;
      if (structure.agrees_with_ground_truth) ++row.flowchart_agree;
    }
    report.aggregate.samples += row.samples;
    report.aggregate.ultimately += row.ultimately;
    report.aggregate.occasionally += row.occasionally;
    report.aggregate.unwinnable += row.unwinnable;
    report.aggregate.with_barrier += row.with_barrier;
    report.aggregate.flowchart_agree += row.flowchart_agree;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace moksha
