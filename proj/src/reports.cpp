#include "moksha/reports.hpp"

#include <algorithm>

namespace moksha {

using nlohmann::json;

namespace {

json components_json(const std::vector<Component>& components) {
  json arr = json::array();
  for (const Component& c : components) arr.push_back(c.str());
  return arr;
}

json bigcount_json(const BigCount& count) {
  json j;
  j["exact"] = count.is_integer() ? count.value.get_num().get_str()
                                  : count.value.get_num().get_str() + "/" +
                                        count.value.get_den().get_str();
  j["approx"] = count.decimal_approx;
  return j;
}

}  // namespace

json classification_json(const Board& board) {
  TransitionMatrix m = TransitionMatrix::build(board);
  Classification cls = classify_matrix(m);
  json j;
  j["board"] = board.name();
  j["verdict"] = to_string(cls.verdict);
  j["win_probability"] = cls.win_probability;
  j["reachable"] = cls.reachable_from_start;
  j["closed_classes"] = cls.closed_classes;
  if (auto cert = block_certificate(m)) {
    j["certificate"] = {
        {"form", cert->form == CertificateForm::UnwinnableForm ? "UnwinnableForm"
                                                               : "OccasionallyForm"},
        {"split", cert->split},
        {"permutation", cert->permutation.order},
    };
  } else {
    j["certificate"] = nullptr;
  }
  return j;
}

json structural_json(const Board& board) {
  StructuralReport report = flowchart_classify(board);
  json j;
  j["board"] = board.name();
  j["barriers"] = json::array();
  for (const ChuteBarrier& b : report.barriers) {
    j["barriers"].push_back({{"first_entrance", b.first_entrance},
                             {"length", b.length},
                             {"merged", b.merged},
                             {"chutes", components_json(b.chutes)}});
  }
  j["trap_regions"] = json::array();
  for (const TrapRegion& r : report.trap_regions) {
    j["trap_regions"].push_back({{"barrier_first_entrance", r.barrier.first_entrance},
                                 {"merged", r.barrier.merged},
                                 {"m", r.m},
                                 {"M", r.M},
                                 {"m_sequence", r.m_sequence},
                                 {"escape_ladders", components_json(r.escape_ladders)},
                                 {"closed", r.closed()}});
  }
  j["ladder_passes"] = json::array();
  for (const auto& run : report.ladder_passes) j["ladder_passes"].push_back(components_json(run));
  j["ladder_bridges"] = json::array();
  for (const auto& run : report.ladder_bridges) j["ladder_bridges"].push_back(components_json(run));
  j["trappers"] = json::array();
  for (const RegionTrappers& t : report.trappers) {
    j["trappers"].push_back(
        {{"region_m", t.m}, {"region_M", t.M}, {"components", components_json(t.trappers)}});
  }
  j["flowchart_verdict"] = to_string(report.flowchart_verdict);
  j["flowchart_step"] = report.flowchart_step;
  j["agrees_with_ground_truth"] = report.agrees_with_ground_truth;
  return j;
}

json matrix_json(const TransitionMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < kCells; ++i) {
    rows.push_back(m.grid()[i]);
  }
  return json{{"board", m.board().name()}, {"denominator", 6}, {"rows", rows}};
}

json stats_json(const Board& board, int n_max) {
  Classification cls = classify_board(board);
  json j;
  j["board"] = board.name();
  j["verdict"] = to_string(cls.verdict);
  j["win_probability"] = cls.win_probability;
  if (cls.verdict == Verdict::UltimatelyWinnable) {
    j["expected_moves"] = expected_game_length(board);
  } else {
    j["expected_moves"] = nullptr;
  }
  j["length_cdf"] = game_length_distribution(board, n_max);
  return j;
}

json count_json(int n_max) {
  json rows = json::array();
  for (int n = 0; n <= n_max; ++n) {
    json row = bigcount_json(count_boards(n));
    row["n"] = n;
    rows.push_back(row);
  }
  json j;
  j["rows"] = rows;
  j["total"] = bigcount_json(total_boards(n_max));
  if (n_max >= 20) j["total_n20"] = bigcount_json(total_boards(20));
  return j;
}

json bounds_json() {
  json j;
  j["barrier_placements"] = bigcount_json(barrier_placements());
  j["chute_barrier_upper_bound"] = bigcount_json(chute_barrier_upper_bound());
  auto [difference, fraction] = winnable_lower_bound();
  j["winnable_lower_bound"] = bigcount_json(difference);
  j["winnable_fraction"] = bigcount_json(fraction);
  j["winnable_fraction_value"] = fraction.value.get_d();
  j["chute_barrier_upper_bound_n20"] = bigcount_json(chute_barrier_upper_bound(20));
  auto [difference20, fraction20] = winnable_lower_bound(20);
  j["winnable_lower_bound_n20"] = bigcount_json(difference20);
  j["winnable_fraction_n20"] = bigcount_json(fraction20);
  j["winnable_fraction_n20_value"] = fraction20.value.get_d();
  auto [shared_lower, shared_upper] = shared_exit_bounds();
  j["shared_exit_lower"] = bigcount_json(shared_lower);
  j["shared_exit_upper"] = bigcount_json(shared_upper);
  json notes = json::array();
  for (const auto& note :
       {provenance_note("shared_exit_lower", shared_lower.value, 1.3135349305e127, 11),
        provenance_note("shared_exit_upper", shared_upper.value, 1.2801985919e134, 11)}) {
    if (!note.empty()) notes.push_back(note);
  }
  j["provenance_notes"] = notes;
  return j;
}

json simulate_json(const Board& board, const SimConfig& cfg) {
  WinEstimate est = estimate_win_probability(board, cfg);
  json j;
  j["board"] = board.name();
  j["seed"] = cfg.seed;
  j["games"] = cfg.games;
  j["max_moves"] = cfg.max_moves;
  j["shortcircuit"] = cfg.shortcircuit;
  j["estimate"] = est.estimate;
  j["std_error"] = est.std_error;
  j["outcomes"] = {{"won", est.wins}, {"trapped", est.trapped}, {"cutoff", est.cutoff}};
  // Empirical CDF of the winning move count, sampled on a coarse grid.
  json cdf = json::array();
  long won_so_far = 0;
  size_t next_sample = 0;
  static const long sample_points[] = {1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377, 610, 1000};
  for (size_t n = 0; n < est.win_moves_histogram.size(); ++n) {
    won_so_far += est.win_moves_histogram[n];
    while (next_sample < std::size(sample_points) &&
           sample_points[next_sample] == static_cast<long>(n)) {
      cdf.push_back({{"moves", n}, {"p", static_cast<double>(won_so_far) / cfg.games}});
      ++next_sample;
    }
  }
  while (next_sample < std::size(sample_points)) {
    cdf.push_back({{"moves", sample_points[next_sample]},
                   {"p", static_cast<double>(est.wins) / cfg.games}});
    ++next_sample;
  }
  j["length_cdf"] = cdf;
  return j;
}

json census_json(const CensusReport& report) {
  json j;
  j["seed"] = report.seed;
  j["samples_per_n"] = report.samples_per_n;
  auto row_json = [](const CensusRow& row, bool with_n) {
    json r;
    if (with_n) r["n"] = row.n;
    r["samples"] = row.samples;
    r["ultimately_winnable"] = row.ultimately;
    r["occasionally_winnable"] = row.occasionally;
    r["unwinnable"] = row.unwinnable;
    r["with_chute_barrier"] = row.with_barrier;
    r["flowchart_agree"] = row.flowchart_agree;
    double samples = static_cast<double>(std::max(row.samples, 1L));
    r["ultimately_fraction"] = row.ultimately / samples;
    r["barrier_fraction"] = row.with_barrier / samples;
    r["flowchart_agreement_rate"] = row.flowchart_agree / samples;
    return r;
  };
  j["per_n"] = json::array();
  for (const CensusRow& row : report.rows) j["per_n"].push_back(row_json(row, true));
  j["aggregate"] = row_json(report.aggregate, false);
  return j;
}

}  // namespace moksha
