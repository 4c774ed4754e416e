#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "moksha/board.hpp"
#include "moksha/census.hpp"
#include "moksha/classify.hpp"
#include "moksha/enumerate.hpp"
#include "moksha/matrix.hpp"
#include "moksha/reports.hpp"
#include "moksha/simulate.hpp"
#include "moksha/structural.hpp"

namespace {

using moksha::Board;

struct BoardInput {
  std::string inline_text;
  std::string file;

  void attach(CLI::App* cmd) {
    auto* group = cmd->add_option_group("board input");
    group->add_option("--board", inline_text,
                      "board string, e.g. \"94>89,95>69\" or \"2([5,23],[60,10])\"");
    group->add_option("--board-file", file, "file with one \"entrance exit\" pair per line");
    group->require_option(1);
  }

  Board parse() const {
    return file.empty() ? Board::parse(inline_text) : Board::parse_file(file);
  }

  Board parse_normalized() const { return parse().normalize(); }
};

void print(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

std::string fraction_percent(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f%%", 100.0 * x);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moksha-Patam (Chutes and Ladders) board analysis"};
  app.require_subcommand(1);

  // validate -----------------------------------------------------------
  auto* validate = app.add_subcommand("validate", "check a board and print its canonical name");
  auto validate_in = std::make_shared<BoardInput>();
  validate_in->attach(validate);
  auto validate_json = std::make_shared<bool>(false);
  validate->add_flag("--json", *validate_json);
  validate->callback([validate_in, validate_json] {
    Board raw = validate_in->parse();
    Board resolved = raw.normalize();
    if (*validate_json) {
      print({{"valid", true},
             {"name", raw.name()},
             {"board", raw.pair_string()},
             {"normalized", resolved.pair_string()}});
    } else {
      std::cout << "ok: " << raw.name() << "\n";
      if (!(resolved == raw)) std::cout << "normalized: " << resolved.pair_string() << "\n";
    }
  });

  // name ---------------------------------------------------------------
  auto* name = app.add_subcommand("name", "print the canonical N([entrances],[exits]) name");
  auto name_in = std::make_shared<BoardInput>();
  name_in->attach(name);
  auto name_json = std::make_shared<bool>(false);
  name->add_flag("--json", *name_json);
  name->callback([name_in, name_json] {
    Board board = name_in->parse();
    if (*name_json) {
      print({{"name", board.name()}, {"board", board.pair_string()}});
    } else {
      std::cout << board.name() << "\n";
    }
  });

  // classify -------------------------------------------------------------
  auto* classify = app.add_subcommand("classify", "winnability verdict with certificates");
  auto classify_in = std::make_shared<BoardInput>();
  classify_in->attach(classify);
  auto classify_json = std::make_shared<bool>(false);
  classify->add_flag("--json", *classify_json);
  classify->callback([classify_in, classify_json] {
    Board board = classify_in->parse_normalized();
    if (*classify_json) {
      print(moksha::classification_json(board));
      return;
    }
    moksha::Classification cls = moksha::classify_board(board);
    std::cout << to_string(cls.verdict) << "\n";
    std::cout << "win probability from cell 1: " << cls.win_probability << "\n";
    std::cout << "closed classes:";
    for (const auto& c : cls.closed_classes) {
      bool contiguous = c.back() - c.front() + 1 == static_cast<int>(c.size());
      if (c.size() == 1) {
        std::cout << " {" << c.front() << "}";
      } else if (contiguous) {
        std::cout << " {" << c.front() << ".." << c.back() << "}";
      } else {
        std::cout << " {" << c.front() << ".." << c.back() << ", " << c.size() << " cells}";
      }
    }
    std::cout << "\n";
  });

  // structural -----------------------------------------------------------
  auto* structural = app.add_subcommand("structural", "chute-barrier / trap-region / flowchart report");
  auto structural_in = std::make_shared<BoardInput>();
  structural_in->attach(structural);
  auto structural_json = std::make_shared<bool>(false);
  structural->add_flag("--json", *structural_json);
  structural->callback([structural_in, structural_json] {
    Board board = structural_in->parse_normalized();
    if (*structural_json) {
      print(moksha::structural_json(board));
      return;
    }
    moksha::StructuralReport report = moksha::flowchart_classify(board);
    std::cout << "chute-barriers: " << report.barriers.size() << "\n";
    for (const auto& b : report.barriers) {
      std::cout << "  entrances " << b.first_entrance << ".." << b.last_entrance()
                << (b.merged ? " (merged span)" : "") << "\n";
    }
    for (const auto& r : report.trap_regions) {
      std::cout << "  trap region {" << r.m << ".." << r.M << "} "
                << (r.closed() ? "closed" : "open (escape ladder)") << "\n";
    }
    std::cout << "flowchart verdict: " << to_string(report.flowchart_verdict) << "\n";
    std::cout << "agrees with ground truth: " << (report.agrees_with_ground_truth ? "yes" : "no")
              << "\n";
  });

  // matrix ---------------------------------------------------------------
  auto* matrix = app.add_subcommand("matrix", "one-step transition matrix dump");
  auto matrix_in = std::make_shared<BoardInput>();
  matrix_in->attach(matrix);
  auto matrix_json = std::make_shared<bool>(false);
  auto matrix_rearranged = std::make_shared<bool>(false);
  matrix->add_flag("--json", *matrix_json);
  matrix->add_flag("--rearranged", *matrix_rearranged,
                   "apply the block-certificate permutation first");
  matrix->callback([matrix_in, matrix_json, matrix_rearranged] {
    Board board = matrix_in->parse_normalized();
    moksha::TransitionMatrix m = moksha::TransitionMatrix::build(board);
    if (*matrix_json) {
      print(moksha::matrix_json(m));
      return;
    }
    if (*matrix_rearranged) {
      auto cert = moksha::block_certificate(m);
      if (!cert) {
        throw moksha::classify_error("board is ultimately winnable: no block certificate");
      }
      std::cout << moksha::dump_sixths(moksha::permute_matrix(m, cert->permutation));
    } else {
      std::cout << moksha::dump_sixths(m.grid());
    }
  });

  // heatmap ----------------------------------------------------------------
  auto* heatmap = app.add_subcommand("heatmap", "render the matrix as a 100x100 PGM");
  auto heatmap_in = std::make_shared<BoardInput>();
  heatmap_in->attach(heatmap);
  auto heatmap_out = std::make_shared<std::string>();
  auto heatmap_rearranged = std::make_shared<bool>(false);
  heatmap->add_option("--out", *heatmap_out, "output .pgm path")->required();
  heatmap->add_flag("--rearranged", *heatmap_rearranged,
                    "apply the block-certificate permutation first");
  heatmap->callback([heatmap_in, heatmap_out, heatmap_rearranged] {
    Board board = heatmap_in->parse_normalized();
    moksha::TransitionMatrix m = moksha::TransitionMatrix::build(board);
    if (*heatmap_rearranged) {
      auto cert = moksha::block_certificate(m);
      if (!cert) {
        throw moksha::classify_error("board is ultimately winnable: no block certificate");
      }
      moksha::render_heatmap(moksha::permute_matrix(m, cert->permutation), *heatmap_out);
    } else {
      moksha::render_heatmap(m.grid(), *heatmap_out);
    }
    std::cout << "wrote " << *heatmap_out << "\n";
  });

  // stats -------------------------------------------------------------------
  auto* stats = app.add_subcommand("stats", "win probability, expected length, length CDF");
  auto stats_in = std::make_shared<BoardInput>();
  stats_in->attach(stats);
  auto stats_json_flag = std::make_shared<bool>(false);
  auto stats_nmax = std::make_shared<int>(100);
  stats->add_flag("--json", *stats_json_flag);
  stats->add_option("--n-max", *stats_nmax, "CDF horizon in moves")->check(CLI::PositiveNumber);
  stats->callback([stats_in, stats_json_flag, stats_nmax] {
    Board board = stats_in->parse_normalized();
    if (*stats_json_flag) {
      print(moksha::stats_json(board, *stats_nmax));
      return;
    }
    moksha::Classification cls = moksha::classify_board(board);
    std::cout << to_string(cls.verdict) << "\n";
    std::cout << "win probability: " << cls.win_probability << "\n";
    if (cls.verdict == moksha::Verdict::UltimatelyWinnable) {
      std::cout << "expected moves: " << moksha::expected_game_length(board) << "\n";
    }
    auto cdf = moksha::game_length_distribution(board, *stats_nmax);
    int last = 0;
    for (int n : {10, 20, 50, *stats_nmax}) {
      if (n <= *stats_nmax && n > last) {
        std::cout << "P(win within " << n << " moves) = " << cdf[n - 1] << "\n";
        last = n;
      }
    }
  });

  // count ---------------------------------------------------------------
  auto* count = app.add_subcommand("count", "exact board counts per component count");
  auto count_json_flag = std::make_shared<bool>(false);
  auto count_nmax = std::make_shared<int>(49);
  count->add_flag("--json", *count_json_flag);
  count->add_option("--n-max", *count_nmax)->check(CLI::Range(0, 49));
  count->callback([count_json_flag, count_nmax] {
    if (*count_json_flag) {
      print(moksha::count_json(*count_nmax));
      return;
    }
    std::cout << "N   boards (exact)                        approx\n";
    for (int n = 0; n <= *count_nmax; ++n) {
      moksha::BigCount c = moksha::count_boards(n);
      std::printf("%-3d %-38s %s\n", n, c.value.get_num().get_str().c_str(),
                  c.decimal_approx.c_str());
    }
    moksha::BigCount total = moksha::total_boards(*count_nmax);
    std::cout << "total: " << total.value.get_num().get_str() << " (" << total.decimal_approx
              << ")\n";
    if (*count_nmax >= 20) {
      std::cout << "total with N<=20: " << moksha::total_boards(20).decimal_approx << "\n";
    }
  });

  // bounds ----------------------------------------------------------------
  auto* bounds = app.add_subcommand("bounds", "chute-barrier and shared-exit counting bounds");
  auto bounds_json_flag = std::make_shared<bool>(false);
  bounds->add_flag("--json", *bounds_json_flag);
  bounds->callback([bounds_json_flag] {
    if (*bounds_json_flag) {
      print(moksha::bounds_json());
      return;
    }
    std::cout << "barrier placements:            " << moksha::barrier_placements().decimal_approx
              << "\n";
    std::cout << "boards with barriers, bound:   "
              << moksha::chute_barrier_upper_bound().decimal_approx << "\n";
    auto [difference, fraction] = moksha::winnable_lower_bound();
    std::cout << "winnable boards, lower bound:  " << difference.decimal_approx << "\n";
    std::cout << "winnable fraction, at least:   " << fraction_percent(fraction.value.get_d())
              << "\n";
    auto [difference20, fraction20] = moksha::winnable_lower_bound(20);
    std::cout << "same with N<=20:               " << difference20.decimal_approx << ", "
              << fraction_percent(fraction20.value.get_d()) << "\n";
    auto [shared_lower, shared_upper] = moksha::shared_exit_bounds();
    std::cout << "shared-exit count bounds:      [" << shared_lower.decimal_approx << ", "
              << shared_upper.decimal_approx << "]\n";
    for (const auto& note :
         {moksha::provenance_note("shared_exit_lower", shared_lower.value, 1.3135349305e127, 11),
          moksha::provenance_note("shared_exit_upper", shared_upper.value, 1.2801985919e134, 11)}) {
      if (!note.empty()) std::cout << "note: " << note << "\n";
    }
  });

  // random -------------------------------------------------------------------
  auto* random = app.add_subcommand("random", "sample random boards");
  auto random_n = std::make_shared<int>(0);
  auto random_count = std::make_shared<int>(1);
  auto random_seed = std::make_shared<uint64_t>(0);
  auto random_shared = std::make_shared<bool>(false);
  auto random_json = std::make_shared<bool>(false);
  random->add_option("--n", *random_n, "components per board")->required();
  random->add_option("--count", *random_count)->check(CLI::PositiveNumber);
  random->add_option("--seed", *random_seed);
  random->add_flag("--shared-exits", *random_shared, "heuristic sampler allowing shared exits");
  random->add_flag("--json", *random_json);
  random->callback([random_n, random_count, random_seed, random_shared, random_json] {
    moksha::Xoshiro256ss rng(moksha::derive_stream_seed(*random_seed, 0));
    nlohmann::json boards = nlohmann::json::array();
    for (int i = 0; i < *random_count; ++i) {
      Board board = moksha::random_board(*random_n, *random_shared, rng);
      if (*random_json) {
        boards.push_back({{"board", board.pair_string()}, {"name", board.name()}});
      } else {
        std::cout << (board.size() ? board.pair_string() : "(0 Board)") << "\n";
      }
    }
    if (*random_json) print({{"seed", *random_seed}, {"boards", boards}});
  });

  // simulate -------------------------------------------------------------------
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo win-probability estimate");
  auto simulate_in = std::make_shared<BoardInput>();
  simulate_in->attach(simulate);
  auto sim_cfg = std::make_shared<moksha::SimConfig>();
  sim_cfg->games = 100000;
  auto sim_no_short = std::make_shared<bool>(false);
  auto sim_json = std::make_shared<bool>(false);
  simulate->add_option("--games", sim_cfg->games)->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim_cfg->seed);
  simulate->add_option("--max-moves", sim_cfg->max_moves)->check(CLI::PositiveNumber);
  simulate->add_flag("--no-shortcircuit", *sim_no_short,
                     "keep playing inside closed sets until --max-moves");
  simulate->add_flag("--json", *sim_json);
  simulate->callback([simulate_in, sim_cfg, sim_no_short, sim_json] {
    Board board = simulate_in->parse_normalized();
    sim_cfg->shortcircuit = !*sim_no_short;
    if (*sim_json) {
      print(moksha::simulate_json(board, *sim_cfg));
      return;
    }
    moksha::WinEstimate est = moksha::estimate_win_probability(board, *sim_cfg);
    std::cout << "games: " << est.games << "  won: " << est.wins << "  trapped: " << est.trapped
              << "  cutoff: " << est.cutoff << "\n";
    std::cout << "win probability estimate: " << est.estimate << " +- " << est.std_error << "\n";
  });

  // census -------------------------------------------------------------------
  auto* census = app.add_subcommand("census", "sample boards per N and tally verdicts");
  auto census_nmin = std::make_shared<int>(0);
  auto census_nmax = std::make_shared<int>(10);
  auto census_samples = std::make_shared<long>(1000);
  auto census_seed = std::make_shared<uint64_t>(0);
  auto census_json_flag = std::make_shared<bool>(false);
  census->add_option("--n-min", *census_nmin)->check(CLI::Range(0, 49));
  census->add_option("--n-max", *census_nmax)->check(CLI::Range(0, 49));
  census->add_option("--samples", *census_samples, "boards per N")->check(CLI::PositiveNumber);
  census->add_option("--seed", *census_seed);
  census->add_flag("--json", *census_json_flag);
  census->callback([census_nmin, census_nmax, census_samples, census_seed, census_json_flag] {
    std::vector<int> n_values;
    for (int n = *census_nmin; n <= *census_nmax; ++n) n_values.push_back(n);
    moksha::CensusReport report = moksha::run_census(n_values, *census_samples, *census_seed);
    if (*census_json_flag) {
      print(moksha::census_json(report));
      return;
    }
    std::cout << "N    samples  ultimately  occasionally  unwinnable  barrier  fc-agree\n";
    for (const auto& row : report.rows) {
      std::printf("%-4d %-8ld %-11ld %-13ld %-11ld %-8ld %ld\n", row.n, row.samples,
                  row.ultimately, row.occasionally, row.unwinnable, row.with_barrier,
                  row.flowchart_agree);
    }
    const auto& a = report.aggregate;
    std::printf("all  %-8ld %-11ld %-13ld %-11ld %-8ld %ld\n", a.samples, a.ultimately,
                a.occasionally, a.unwinnable, a.with_barrier, a.flowchart_agree);
    std::cout << "ultimately-winnable fraction: "
              << fraction_percent(static_cast<double>(a.ultimately) / a.samples) << "\n";
    std::cout << "flowchart agreement rate:     "
              << fraction_percent(static_cast<double>(a.flowchart_agree) / a.samples) << "\n";
  });

  try {
    app.parse(argc, argv);
    return 0;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const moksha::board_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
