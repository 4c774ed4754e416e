#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "fixtures.hpp"
#include "moksha/classify.hpp"
#include "moksha/simulate.hpp"

using moksha::Board;
using moksha::TransitionMatrix;
using moksha::Verdict;
using fixtures::board;
using fixtures::interval;

TEST_CASE("reachable sets") {
  CHECK(reachable_set(Board{}, 1) == interval(1, 100));

  auto wall = reachable_set(board(fixtures::kWallBeforeGoal), 1);
  CHECK(wall == interval(1, 93));  // nothing at or past the wall is restable

  auto dbl = reachable_set(board(fixtures::kDoubleWall), 1);
  CHECK(dbl.back() <= 73);
  CHECK(!std::binary_search(dbl.begin(), dbl.end(), 100));
  // cells 40..51 sit behind the first wall and no exit lands there
  for (int c = 40; c <= 51; ++c) CHECK(!std::binary_search(dbl.begin(), dbl.end(), c));
}

TEST_CASE("closed classes") {
  CHECK(closed_classes(Board{}) == std::vector<std::vector<int>>{{100}});
  CHECK(closed_classes(board(fixtures::kFunnelToFifty)) ==
        std::vector<std::vector<int>>{{50}, {100}});
  CHECK(closed_classes(board(fixtures::kSingleLadderPass)) ==
        std::vector<std::vector<int>>{interval(23, 53), {100}});
  CHECK(closed_classes(board(fixtures::kWallBeforeGoal)) ==
        std::vector<std::vector<int>>{interval(42, 93), {100}});
  CHECK(closed_classes(board(fixtures::kDoubleWall)) ==
        std::vector<std::vector<int>>{interval(52, 73), {100}});
}

TEST_CASE("verdicts for the fixture boards") {
  CHECK(classify_board(Board{}).verdict == Verdict::UltimatelyWinnable);
  CHECK(classify_board(board(fixtures::kWallWithEscape)).verdict ==
        Verdict::UltimatelyWinnable);
  CHECK(classify_board(board(fixtures::kScatteredTen)).verdict ==
        Verdict::UltimatelyWinnable);
  CHECK(classify_board(board(fixtures::kWallBeforeGoal)).verdict == Verdict::Unwinnable);
  CHECK(classify_board(board(fixtures::kDoubleWall)).verdict == Verdict::Unwinnable);
  CHECK(classify_board(board(fixtures::kSingleLadderPass)).verdict ==
        Verdict::OccasionallyWinnable);
  CHECK(classify_board(board(fixtures::kFunnelToFifty)).verdict == Verdict::Unwinnable);
}

TEST_CASE("absorption probabilities") {
  CHECK(absorption_probability(Board{}, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(absorption_probability(board(fixtures::kWallBeforeGoal), 1) ==
        doctest::Approx(0.0).epsilon(1e-12));

  Board pass = board(fixtures::kSingleLadderPass);
  CHECK(std::fabs(absorption_probability(pass, 1) - 1.0 / 6.0) < 1e-12);
  CHECK(absorption_probability(pass, 99) == doctest::Approx(1.0).epsilon(1e-12));

  // Exact rational route gives exactly one sixth.
  mpq_class exact = absorption_probability_exact(TransitionMatrix::build(pass), 1);
  CHECK(exact == mpq_class(1, 6));
}

TEST_CASE("game length distribution") {
  auto empty_cdf = game_length_distribution(Board{}, 40);
  CHECK(empty_cdf[15] == 0.0);  // 16 moves cannot cover 99 cells
  CHECK(empty_cdf[16] > 0.0);   // 17 moves can
  for (size_t i = 1; i < empty_cdf.size(); ++i) CHECK(empty_cdf[i] >= empty_cdf[i - 1]);

  auto pass_cdf = game_length_distribution(board(fixtures::kSingleLadderPass), 2);
  CHECK(pass_cdf[0] == 0.0);
  CHECK(pass_cdf[1] == doctest::Approx(1.0 / 36.0).epsilon(1e-12));

  auto wall_cdf = game_length_distribution(board(fixtures::kWallBeforeGoal), 200);
  for (double p : wall_cdf) CHECK(p == 0.0);
}

TEST_CASE("cdf is bounded by the win probability") {
  moksha::Xoshiro256ss rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    Board b = moksha::random_board(static_cast<int>(rng.below(25)), false, rng);
    double win = absorption_probability(b, 1);
    auto cdf = game_length_distribution(b, 300);
    for (size_t i = 0; i < cdf.size(); ++i) {
      REQUIRE(cdf[i] <= win + 1e-9);
      if (i > 0) REQUIRE(cdf[i] >= cdf[i - 1] - 1e-15);
    }
  }
}

TEST_CASE("expected game length") {
  double moves = expected_game_length(Board{});
  CHECK(moves > 17.0);
  CHECK(moves < 200.0);

  // Cross-checked against the CDF tail sum: E[T] = sum_n (1 - F(n)).
  auto cdf = game_length_distribution(Board{}, 2000);
  double tail_sum = 1.0;  // n = 0 term
  for (double p : cdf) tail_sum += 1.0 - p;
  CHECK(moves == doctest::Approx(tail_sum).epsilon(1e-6));

  CHECK_THROWS_AS(expected_game_length(board(fixtures::kWallBeforeGoal)),
                  moksha::classify_error);
  CHECK_THROWS_AS(expected_game_length(board(fixtures::kSingleLadderPass)),
                  moksha::classify_error);
}

TEST_CASE("stationary distributions, one per closed class") {
  auto lone = stationary_distributions(Board{});
  REQUIRE(lone.size() == 1);
  CHECK(lone[0].support == std::vector<int>{100});
  CHECK(lone[0].pi[99] == doctest::Approx(1.0));

  auto funnel = stationary_distributions(board(fixtures::kFunnelToFifty));
  REQUIRE(funnel.size() == 2);
  CHECK(funnel[0].support == std::vector<int>{50});
  CHECK(funnel[1].support == std::vector<int>{100});

  auto dbl = stationary_distributions(board(fixtures::kDoubleWall));
  REQUIRE(dbl.size() == 2);
  CHECK(dbl[0].support == interval(52, 73));

  // pi is a left fixed vector: residual of pi P = pi within 1e-9.
  for (const char* text : {fixtures::kWallBeforeGoal, fixtures::kDoubleWall,
                           fixtures::kSingleLadderPass, fixtures::kFunnelToFifty}) {
    TransitionMatrix m = TransitionMatrix::build(board(text));
    for (const auto& dist : stationary_distributions(m)) {
      double total = 0;
      for (double x : dist.pi) total += x;
      CHECK(std::fabs(total - 1.0) < 1e-12);
      for (int j = 1; j <= 100; ++j) {
        double image = 0;
        for (int i = 1; i <= 100; ++i) image += dist.pi[i - 1] * m.p(i, j);
        REQUIRE(std::fabs(image - dist.pi[j - 1]) < 1e-9);
      }
    }
  }
}

TEST_CASE("stationary supports coincide with closed classes") {
  moksha::Xoshiro256ss rng(31337);
  for (int trial = 0; trial < 40; ++trial) {
    Board b = moksha::random_board(10 + static_cast<int>(rng.below(20)), false, rng);
    auto classes = closed_classes(b);
    auto dists = stationary_distributions(b);
    REQUIRE(classes.size() == dists.size());
    for (size_t k = 0; k < classes.size(); ++k) {
      REQUIRE(dists[k].support == classes[k]);
    }
    if (dists.size() == 1) {
      CHECK(classify_board(b).verdict == Verdict::UltimatelyWinnable);
    }
  }
}

TEST_CASE("block certificates have exactly-zero blocks") {
  // Unwinnable shape: zero upper-right block, 1 first, 100 second.
  TransitionMatrix dbl = TransitionMatrix::build(board(fixtures::kDoubleWall));
  auto cert = block_certificate(dbl);
  REQUIRE(cert.has_value());
  CHECK(cert->form == moksha::CertificateForm::UnwinnableForm);
  auto grid = permute_matrix(dbl, cert->permutation);
  for (int a = 0; a < cert->split; ++a) {
    for (int b = cert->split; b < 100; ++b) REQUIRE(grid[a][b] == 0);
  }
  auto pos_of = [&](int state) {
    for (int k = 0; k < 100; ++k) {
      if (cert->permutation.order[k] == state) return k;
    }
    return -1;
  };
  CHECK(pos_of(1) < cert->split);
  CHECK(pos_of(100) >= cert->split);

  // Occasionally winnable shape: zero lower-left block, 1 and 100 first.
  TransitionMatrix pass = TransitionMatrix::build(board(fixtures::kSingleLadderPass));
  auto cert2 = block_certificate(pass);
  REQUIRE(cert2.has_value());
  CHECK(cert2->form == moksha::CertificateForm::OccasionallyForm);
  auto grid2 = permute_matrix(pass, cert2->permutation);
  for (int a = cert2->split; a < 100; ++a) {
    for (int b = 0; b < cert2->split; ++b) REQUIRE(grid2[a][b] == 0);
  }
  auto pos2 = [&](int state) {
    for (int k = 0; k < 100; ++k) {
      if (cert2->permutation.order[k] == state) return k;
    }
    return -1;
  };
  CHECK(pos2(1) < cert2->split);
  CHECK(pos2(100) < cert2->split);

  CHECK(!block_certificate(Board{}).has_value());
  CHECK(!block_certificate(board(fixtures::kWallWithEscape)).has_value());
}

TEST_CASE("verdict trichotomy matches the win probability sign pattern") {
  moksha::Xoshiro256ss rng(2718);
  for (int trial = 0; trial < 150; ++trial) {
    Board b = moksha::random_board(static_cast<int>(rng.below(31)), false, rng);
    auto cls = classify_board(b);
    switch (cls.verdict) {
      case Verdict::Unwinnable: REQUIRE(std::fabs(cls.win_probability) < 1e-9); break;
      case Verdict::UltimatelyWinnable:
        REQUIRE(std::fabs(cls.win_probability - 1.0) < 1e-9);
        break;
      case Verdict::OccasionallyWinnable:
        REQUIRE(cls.win_probability > 1e-9);
        REQUIRE(cls.win_probability < 1.0 - 1e-9);
        break;
    }
    bool has_100 = std::binary_search(cls.reachable_from_start.begin(),
                                      cls.reachable_from_start.end(), 100);
    CHECK(has_100 == (cls.verdict != Verdict::Unwinnable));
    REQUIRE(!cls.closed_classes.empty());
    CHECK(cls.closed_classes.back() == std::vector<int>{100});
  }
}

TEST_CASE("classification is insensitive to the entrance-row convention") {
  moksha::Xoshiro256ss rng(1618);
  std::vector<Board> boards = {board(fixtures::kWallWithEscape),
                               board(fixtures::kWallBeforeGoal),
                               board(fixtures::kSingleLadderPass),
                               board(fixtures::kDoubleWall),
                               board(fixtures::kFunnelToFifty)};
  for (int trial = 0; trial < 60; ++trial) {
    boards.push_back(moksha::random_board(static_cast<int>(rng.below(31)), false, rng));
  }
  for (const Board& b : boards) {
    auto jump = classify_matrix(TransitionMatrix::build(b));
    auto roll = classify_matrix(
        TransitionMatrix::build(b, TransitionMatrix::EntranceRows::DieRoll));
    REQUIRE(jump.verdict == roll.verdict);
    REQUIRE(std::fabs(jump.win_probability - roll.win_probability) < 1e-9);
    REQUIRE(jump.closed_classes == roll.closed_classes);
  }
}
