#ifndef MOKSHA_CENSUS_HPP
#define MOKSHA_CENSUS_HPP

#include <cstdint>
#include <vector>

#include "moksha/board.hpp"

namespace moksha {

struct CensusRow {
  int n = 0;
  long samples = 0;
  long ultimately = 0;
  long occasionally = 0;
  long unwinnable = 0;
  long with_barrier = 0;
  long flowchart_agree = 0;
};

struct CensusReport {
  uint64_t seed = 0;
  long samples_per_n = 0;
  std::vector<CensusRow> rows;
  CensusRow aggregate;  // n field unused
};

// Samples `samples_per_n` boards uniformly (no shared exits) for each N in
// n_values, classifies each by ground truth and by the flowchart, and tallies
// verdicts, barrier presence, and flowchart agreement. Stream k of `seed`
// drives stratum k, so the report is reproducible and strata are independent.
CensusReport run_census(const std::vector<int>& n_values, long samples_per_n, uint64_t seed);

}  // namespace moksha

#endif  // MOKSHA_CENSUS_HPP
