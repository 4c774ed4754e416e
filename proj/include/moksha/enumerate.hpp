#ifndef MOKSHA_ENUMERATE_HPP
#define MOKSHA_ENUMERATE_HPP

#include <stdexcept>
#include <string>
#include <utility>

#include <gmpxx.h>

namespace moksha {

// Exact counting result. `value` is an arbitrary-precision rational (integer
// counts have denominator 1); `decimal_approx` is rendered from the exact
// value by long division with round-half-up, 11 significant digits.
struct BigCount {
  mpq_class value;
  std::string decimal_approx;

  static BigCount of(const mpq_class& v);
  bool is_integer() const { return value.get_den() == 1; }
};

// Scientific-notation rendering of an exact rational, `sig` significant digits.
std::string to_scientific(const mpq_class& v, int sig = 11);

class enumerate_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

mpz_class factorial(int n);
mpz_class binomial(int n, int k);

// Boards with N components, no shared exits: C(98,2N) C(2N,N) N!.
// Throws enumerate_error unless 0 <= N <= 49.
BigCount count_boards(int n);

// Sum of count_boards over N = 0..n_max (default: all 49).
BigCount total_boards(int n_max = 49);

// Placements of one six-chute barrier: sum over M = 8..94 of C(M-2,6) 6!.
BigCount barrier_placements();

// Overcounting bound on boards containing a chute-barrier:
// sum over N = 6..n_max of barrier_placements() C(86,2N-12) C(2N-12,N-6) (N-6)!.
BigCount chute_barrier_upper_bound(int n_max = 49);

// total_boards(n_max) - chute_barrier_upper_bound(n_max), plus the exact
// fraction of the total it represents.
std::pair<BigCount, BigCount> winnable_lower_bound(int n_max = 49);

// Crude bounds on the count allowing shared exits: the overestimate term
// C(98,N+n) C(N+n,N) N!/(N-n)! n^(N-n) summed over n = 1..N, N = 1..49,
// and the same sum with each term divided by (N/n)^n (AM-GM underestimate).
// Returns (lower, upper).
std::pair<BigCount, BigCount> shared_exit_bounds();

// Compares an exact value with a constant the source text prints, at the
// printed precision. Returns an empty string when they agree to `sig`
// significant digits, otherwise a provenance note describing the discrepancy
// (exact computation stays authoritative).
std::string provenance_note(const std::string& label, const mpq_class& exact,
                            double printed, int sig);

}  // namespace moksha

#endif  // MOKSHA_ENUMERATE_HPP
