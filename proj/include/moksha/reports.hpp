#ifndef MOKSHA_REPORTS_HPP
#define MOKSHA_REPORTS_HPP

#include <json.hpp>

#include "moksha/board.hpp"
#include "moksha/census.hpp"
#include "moksha/classify.hpp"
#include "moksha/enumerate.hpp"
#include "moksha/matrix.hpp"
#include "moksha/simulate.hpp"
#include "moksha/structural.hpp"

namespace moksha {

// JSON documents backing the CLI's --json mode. Shapes are documented in the
// README; text mode prints the same values.
nlohmann::json classification_json(const Board& board);
nlohmann::json structural_json(const Board& board);
nlohmann::json matrix_json(const TransitionMatrix& m);
nlohmann::json stats_json(const Board& board, int n_max);
nlohmann::json count_json(int n_max = 49);
nlohmann::json bounds_json();
nlohmann::json simulate_json(const Board& board, const SimConfig& cfg);
nlohmann::json census_json(const CensusReport& report);

}  // namespace moksha

#endif  // MOKSHA_REPORTS_HPP
