#ifndef MOKSHA_CLASSIFY_HPP
#define MOKSHA_CLASSIFY_HPP

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "moksha/board.hpp"
#include "moksha/matrix.hpp"

namespace moksha {

enum class Verdict { Unwinnable, OccasionallyWinnable, UltimatelyWinnable };

const char* to_string(Verdict v);

// Ground-truth classification, derived from reachability and the closed
// communicating classes of the chain. The verdict is graph-theoretic; the
// win probability comes from an independent linear solve.
struct Classification {
  Verdict verdict;
  std::vector<int> reachable_from_start;          // sorted cells
  std::vector<std::vector<int>> closed_classes;   // sorted by smallest member
  double win_probability;
};

enum class CertificateForm { UnwinnableForm, OccasionallyForm };

// Witness permutation for the block shape of the rearranged matrix.
// UnwinnableForm: zero upper-right block, state 1 in the first block and 100
// in the second. OccasionallyForm: zero lower-left block, states 1 and 100
// both in the first block.
struct BlockCertificate {
  StatePermutation permutation;
  int split;  // size of the first block
  CertificateForm form;
};

struct StationaryDistribution {
  std::array<double, kCells> pi{};
  std::vector<int> support;  // sorted cells with pi > tolerance
};

class classify_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// BFS closure of `from` under positive-probability one-step transitions.
std::vector<int> reachable_set(const TransitionMatrix& m, int from);
std::vector<int> reachable_set(const Board& board, int from);

// All closed communicating classes (SCCs with no outgoing edge), sorted by
// smallest member; {100} is always among them.
std::vector<std::vector<int>> closed_classes(const TransitionMatrix& m);
std::vector<std::vector<int>> closed_classes(const Board& board);

Classification classify_matrix(const TransitionMatrix& m);
Classification classify_board(const Board& board);

// Probability of eventual absorption in state 100 starting at `from`:
// h(100)=1, h=0 on every other closed class, h = P h on transient states.
// Throws classify_error("SingularSystem") if the solve degenerates.
double absorption_probability(const TransitionMatrix& m, int from);
double absorption_probability(const Board& board, int from);
// Exact-rational route for the same system.
mpq_class absorption_probability_exact(const TransitionMatrix& m, int from);

// F(n) = Pr[absorbed at 100 within n moves | start at 1], n = 1..n_max.
std::vector<double> game_length_distribution(const Board& board, int n_max);

// Expected moves from 1 to 100; requires an ultimately winnable board,
// otherwise throws classify_error("NotUltimatelyWinnable").
double expected_game_length(const Board& board);

// One extreme stationary distribution per closed class (the unique pi
// supported on that class); the full stationary set is their convex hull.
std::vector<StationaryDistribution> stationary_distributions(const TransitionMatrix& m);
std::vector<StationaryDistribution> stationary_distributions(const Board& board);

// Block-form witness for non-ultimately-winnable boards, nullopt otherwise.
std::optional<BlockCertificate> block_certificate(const TransitionMatrix& m);
std::optional<BlockCertificate> block_certificate(const Board& board);

}  // namespace moksha

#endif  // MOKSHA_CLASSIFY_HPP
