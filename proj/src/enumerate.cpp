#include "moksha/enumerate.hpp"

#include <array>
#include <cmath>
#include <cstdlib>

namespace moksha {

namespace {

constexpr int kMaxFactorial = 98;

const std::array<mpz_class, kMaxFactorial + 1>& factorial_table() {
  static const auto table = [] {
    std::array<mpz_class, kMaxFactorial + 1> t;
    t[0] = 1;
    for (int i = 1; i <= kMaxFactorial; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  return table;
}

}  // namespace

mpz_class factorial(int n) {
  if (n < 0 || n > kMaxFactorial) {
    throw enumerate_error("factorial argument outside 0..98");
  }
  return factorial_table()[n];
}

mpz_class binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  return factorial(n) / (factorial(k) * factorial(n - k));
}

std::string to_scientific(const mpq_class& v, int sig) {
  if (v == 0) return "0";
  mpq_class abs_v = v > 0 ? v : mpq_class(-v);

  // Decimal exponent from digit counts, then corrected by direct comparison.
  long exp10 = static_cast<long>(abs_v.get_num().get_str().size()) -
               static_cast<long>(abs_v.get_den().get_str().size());
  auto pow10 = [](long e) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e));
    return p;
  };
  auto scale = [&](long e) {  // abs_v / 10^e
    return e >= 0 ? mpq_class(abs_v / pow10(e)) : mpq_class(abs_v * pow10(-e));
  };
  while (scale(exp10) >= 10) ++exp10;
  while (scale(exp10) < 1) --exp10;

  // Round half up to `sig` digits.
  mpq_class scaled = scale(exp10 - (sig - 1)) + mpq_class(1, 2);
  mpz_class digits = scaled.get_num() / scaled.get_den();
  if (digits >= pow10(sig)) {
    digits /= 10;
    ++exp10;
  }
  std::string ds = digits.get_str();
  std::string out = v < 0 ? "-" : "";
  out += ds.substr(0, 1);
  if (sig > 1) out += "." + ds.substr(1);
  out += "e" + std::to_string(exp10);
  return out;
}

BigCount BigCount::of(const mpq_class& v) {
  return BigCount{v, to_scientific(v)};
}

BigCount count_boards(int n) {
  if (n < 0 || n > 49) {
    throw enumerate_error("OutOfRange: component count must lie in 0..49");
  }
  mpz_class v = binomial(98, 2 * n) * binomial(2 * n, n) * factorial(n);
  return BigCount::of(mpq_class(v));
}

BigCount total_boards(int n_max) {
  mpz_class total = 0;
  for (int n = 0; n <= n_max; ++n) {
    total += binomial(98, 2 * n) * binomial(2 * n, n) * factorial(n);
  }
  return BigCount::of(mpq_class(total));
}

BigCount barrier_placements() {
  mpz_class total = 0;
  for (int m = 8; m <= 94; ++m) {
    total += binomial(m - 2, 6) * factorial(6);
  }
  return BigCount::of(mpq_class(total));
}

BigCount chute_barrier_upper_bound(int n_max) {
  mpz_class placements = barrier_placements().value.get_num();
  mpz_class total = 0;
  for (int n = 6; n <= n_max; ++n) {
    total += placements * binomial(86, 2 * n - 12) * binomial(2 * n - 12, n - 6) *
             factorial(n - 6);
  }
  return BigCount::of(mpq_class(total));
}

std::pair<BigCount, BigCount> winnable_lower_bound(int n_max) {
  mpq_class total = total_boards(n_max).value;
  mpq_class barrier_bound = chute_barrier_upper_bound(n_max).value;
  mpq_class difference = total - barrier_bound;
  mpq_class fraction = difference / total;
  fraction.canonicalize();
  return {BigCount::of(difference), BigCount::of(fraction)};
}

std::pair<BigCount, BigCount> shared_exit_bounds() {
  mpz_class upper = 0;
  mpq_class lower = 0;
  for (int n_comp = 1; n_comp <= 49; ++n_comp) {
    mpz_class n_pow;  // distinct_exits^(n_comp - distinct_exits), built up
    for (int n_exits = 1; n_exits <= n_comp; ++n_exits) {
      mpz_ui_pow_ui(n_pow.get_mpz_t(), static_cast<unsigned long>(n_exits),
                    static_cast<unsigned long>(n_comp - n_exits));
      mpz_class term = binomial(98, n_comp + n_exits) * binomial(n_comp + n_exits, n_comp) *
                       (factorial(n_comp) / factorial(n_comp - n_exits)) * n_pow;
      upper += term;
      // AM-GM step: divide by (N/n)^n, i.e. multiply by n^n / N^n.
      mpz_class num, den;
      mpz_ui_pow_ui(num.get_mpz_t(), static_cast<unsigned long>(n_exits),
                    static_cast<unsigned long>(n_exits));
      mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(n_comp),
                    static_cast<unsigned long>(n_exits));
      mpq_class scaled(term * num, den);
      scaled.canonicalize();
      lower += scaled;
    }
  }
  return {BigCount::of(lower), BigCount::of(mpq_class(upper))};
}

std::string provenance_note(const std::string& label, const mpq_class& exact,
                            double printed, int sig) {
  double exact_d = exact.get_d();
  double rel = std::fabs(exact_d - printed) / std::fabs(printed);
  double tol = 5.0 * std::pow(10.0, -sig);
  if (rel <= tol) return "";
  return label + ": exact value " + to_scientific(exact) + " differs from printed " +
         to_scientific(mpq_class(printed)) + " beyond rounding (relative error " +
         std::to_string(rel) + "); exact computation is authoritative";
}

}  // namespace moksha
