#include "moksha/classify.hpp"

#include <algorithm>
#include <bitset>
#include <cmath>
#include <functional>

#include "moksha/linalg.hpp"

namespace moksha {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Unwinnable: return "Unwinnable";
    case Verdict::OccasionallyWinnable: return "OccasionallyWinnable";
    case Verdict::UltimatelyWinnable: return "UltimatelyWinnable";
  }
  return "Unknown";
}

std::vector<int> reachable_set(const TransitionMatrix& m, int from) {
  std::bitset<kCells + 1> seen;
  std::vector<int> stack{from};
  seen.set(from);
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    for (int j = 1; j <= kCells; ++j) {
      if (m.sixths(i, j) > 0 && !seen[j]) {
        seen.set(j);
        stack.push_back(j);
      }
    }
  }
  std::vector<int> out;
  for (int c = 1; c <= kCells; ++c) {
    if (seen[c]) out.push_back(c);
  }
  return out;
}

std::vector<int> reachable_set(const Board& board, int from) {
  return reachable_set(TransitionMatrix::build(board), from);
}

namespace {

struct SccFinder {
  const TransitionMatrix& m;
  std::array<int, kCells + 1> index{}, low{};
  std::bitset<kCells + 1> on_stack;
  std::vector<int> stack;
  std::vector<std::vector<int>> components;
  int counter = 1;

  explicit SccFinder(const TransitionMatrix& matrix) : m(matrix) {}

  void visit(int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack.set(v);
    for (int w = 1; w <= kCells; ++w) {
      if (m.sixths(v, w) == 0) continue;
      if (index[w] == 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<int> comp;
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack.reset(w);
        comp.push_back(w);
      } while (w != v);
      std::sort(comp.begin(), comp.end());
      components.push_back(std::move(comp));
    }
  }
};

}  // namespace

std::vector<std::vector<int>> closed_classes(const TransitionMatrix& m) {
  SccFinder scc(m);
  for (int v = 1; v <= kCells; ++v) {
    if (scc.index[v] == 0) scc.visit(v);
  }
  std::vector<std::vector<int>> closed;
  for (auto& comp : scc.components) {
    std::bitset<kCells + 1> in_comp;
    for (int c : comp) in_comp.set(c);
    bool is_closed = true;
    for (int i : comp) {
      for (int j = 1; j <= kCells && is_closed; ++j) {
        if (m.sixths(i, j) > 0 && !in_comp[j]) is_closed = false;
      }
      if (!is_closed) break;
    }
    if (is_closed) closed.push_back(std::move(comp));
  }
  std::sort(closed.begin(), closed.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return closed;
}

std::vector<std::vector<int>> closed_classes(const Board& board) {
  return closed_classes(TransitionMatrix::build(board));
}

namespace {

// Pins h=1 on state 100, h=0 on every other closed class, and solves the
// transient system. Shared by the double and rational routes.
template <typename T>
std::array<T, kCells + 1> absorption_vector(const TransitionMatrix& m,
                                            const std::vector<std::vector<int>>& classes) {
  std::array<T, kCells + 1> h{};
  std::array<int, kCells + 1> transient_index;
  transient_index.fill(-1);
  std::bitset<kCells + 1> pinned;
  pinned.set(kCells);
  h[kCells] = T(1);
  for (const auto& cls : classes) {
    if (cls.size() == 1 && cls.front() == kCells) continue;
    for (int c : cls) {
      pinned.set(c);
      h[c] = T(0);
    }
  }
  std::vector<int> transient;
  for (int c = 1; c <= kCells; ++c) {
    if (!pinned[c]) {
      transient_index[c] = static_cast<int>(transient.size());
      transient.push_back(c);
    }
  }
  const size_t n = transient.size();
  if (n == 0) return h;

  std::vector<T> a(n * n, T(0)), b(n, T(0)), x;
  for (size_t r = 0; r < n; ++r) {
    int i = transient[r];
    a[r * n + r] = T(1);
    for (int j = 1; j <= kCells; ++j) {
      int six = m.sixths(i, j);
      if (six == 0) continue;
      T p = T(six) / T(6);
      if (transient_index[j] >= 0) {
        a[r * n + transient_index[j]] -= p;
      } else {
        b[r] += p * h[j];
      }
    }
  }
  if (!linalg::solve(a, b, x)) {
    throw classify_error("SingularSystem: absorption solve failed");
  }
  if constexpr (std::is_same_v<T, double>) {
    double residual = 0;
    for (size_t r = 0; r < n; ++r) {
      double acc = -b[r];
      for (size_t c = 0; c < n; ++c) acc += a[r * n + c] * x[c];
      residual = std::max(residual, std::fabs(acc));
    }
    if (residual > 1e-9) {
      throw classify_error("SingularSystem: absorption residual above 1e-9");
    }
  }
  for (size_t r = 0; r < n; ++r) h[transient[r]] = x[r];
  return h;
}

}  // namespace

double absorption_probability(const TransitionMatrix& m, int from) {
  auto h = absorption_vector<double>(m, closed_classes(m));
  return h[from];
}

double absorption_probability(const Board& board, int from) {
  return absorption_probability(TransitionMatrix::build(board), from);
}

mpq_class absorption_probability_exact(const TransitionMatrix& m, int from) {
  auto h = absorption_vector<mpq_class>(m, closed_classes(m));
  return h[from];
}

Classification classify_matrix(const TransitionMatrix& m) {
  Classification result;
  result.reachable_from_start = reachable_set(m, 1);
  result.closed_classes = closed_classes(m);

  std::bitset<kCells + 1> reachable;
  for (int c : result.reachable_from_start) reachable.set(c);

  if (!reachable[kCells]) {
    result.verdict = Verdict::Unwinnable;
  } else {
    bool trapped_class_reachable = false;
    for (const auto& cls : result.closed_classes) {
      if (cls.size() == 1 && cls.front() == kCells) continue;
      // A class is reachable as soon as any member is.
      if (reachable[cls.front()]) {
        trapped_class_reachable = true;
        break;
      }
    }
    result.verdict = trapped_class_reachable ? Verdict::OccasionallyWinnable
                                             : Verdict::UltimatelyWinnable;
  }
  result.win_probability = absorption_vector<double>(m, result.closed_classes)[1];
  return result;
}

Classification classify_board(const Board& board) {
  return classify_matrix(TransitionMatrix::build(board));
}

std::vector<double> game_length_distribution(const Board& board, int n_max) {
  TransitionMatrix m = TransitionMatrix::build(board);
  std::array<double, kCells> v{};
  v[0] = 1.0;  // the game starts at cell 1
  std::vector<double> cdf;
  cdf.reserve(n_max);
  for (int n = 0; n < n_max; ++n) {
    std::array<double, kCells> next{};
    for (int i = 0; i < kCells; ++i) {
      if (v[i] == 0.0) continue;
      const auto& row = m.grid()[i];
      for (int j = 0; j < kCells; ++j) {
        if (row[j]) next[j] += v[i] * (row[j] / 6.0);
      }
    }
    v = next;
    cdf.push_back(v[kCells - 1]);
  }
  return cdf;
}

double expected_game_length(const Board& board) {
  TransitionMatrix m = TransitionMatrix::build(board);
  Classification cls = classify_matrix(m);
  if (cls.verdict != Verdict::UltimatelyWinnable) {
    throw classify_error("NotUltimatelyWinnable: expected game length is infinite");
  }
  // Every state reachable from 1 reaches 100 almost surely, so the restricted
  // system is nonsingular.
  std::array<int, kCells + 1> idx;
  idx.fill(-1);
  std::vector<int> states;
  for (int c : cls.reachable_from_start) {
    if (c == kCells) continue;
    idx[c] = static_cast<int>(states.size());
    states.push_back(c);
  }
  const size_t n = states.size();
  std::vector<double> a(n * n, 0.0), b(n, 1.0), x;
  for (size_t r = 0; r < n; ++r) {
    int i = states[r];
    a[r * n + r] += 1.0;
    for (int j = 1; j <= kCells; ++j) {
      int six = m.sixths(i, j);
      if (six && idx[j] >= 0) a[r * n + idx[j]] -= six / 6.0;
    }
  }
  if (!linalg::solve(a, b, x)) {
    throw classify_error("SingularSystem: expected-length solve failed");
  }
  return x[idx[1]];
}

std::vector<StationaryDistribution> stationary_distributions(const TransitionMatrix& m) {
  std::vector<StationaryDistribution> out;
  for (const auto& cls : closed_classes(m)) {
    const size_t n = cls.size();
    // Left-fixed vector of the class restriction: (P_C^T - I) pi = 0 with the
    // first equation replaced by the normalization sum(pi) = 1.
    std::vector<double> a(n * n, 0.0), b(n, 0.0), x;
    for (size_t r = 0; r < n; ++r) {
      for (size_t c = 0; c < n; ++c) {
        a[r * n + c] = m.p(cls[c], cls[r]);
      }
      a[r * n + r] -= 1.0;
    }
    for (size_t c = 0; c < n; ++c) a[c] = 1.0;
    b[0] = 1.0;
    if (!linalg::solve(a, b, x)) {
      throw classify_error("SingularSystem: stationary solve failed");
    }
    StationaryDistribution dist;
    for (size_t c = 0; c < n; ++c) {
      dist.pi[cls[c] - 1] = x[c];
      if (x[c] > 1e-12) dist.support.push_back(cls[c]);
    }
    out.push_back(std::move(dist));
  }
  return out;
}

std::vector<StationaryDistribution> stationary_distributions(const Board& board) {
  return stationary_distributions(TransitionMatrix::build(board));
}

std::optional<BlockCertificate> block_certificate(const TransitionMatrix& m) {
  Classification cls = classify_matrix(m);
  if (cls.verdict == Verdict::UltimatelyWinnable) return std::nullopt;

  std::bitset<kCells + 1> in_first;
  CertificateForm form;
  if (cls.verdict == Verdict::Unwinnable) {
    // Result 3 shape: the reachable set is closed, holds state 1, misses 100.
    form = CertificateForm::UnwinnableForm;
    for (int c : cls.reachable_from_start) in_first.set(c);
  } else {
    // Result 4 shape: second block is the forward closure of every closed
    // class reachable from 1; the complement keeps states 1 and 100.
    form = CertificateForm::OccasionallyForm;
    std::bitset<kCells + 1> reachable;
    for (int c : cls.reachable_from_start) reachable.set(c);
    std::bitset<kCells + 1> bad;
    std::vector<int> frontier;
    for (const auto& c : cls.closed_classes) {
      if (c.size() == 1 && c.front() == kCells) continue;
      if (!reachable[c.front()]) continue;
      for (int cell : c) {
        if (!bad[cell]) {
          bad.set(cell);
          frontier.push_back(cell);
        }
      }
    }
    while (!frontier.empty()) {
      int i = frontier.back();
      frontier.pop_back();
      for (int j = 1; j <= kCells; ++j) {
        if (m.sixths(i, j) > 0 && !bad[j]) {
          bad.set(j);
          frontier.push_back(j);
        }
      }
    }
    for (int c = 1; c <= kCells; ++c) {
      if (!bad[c]) in_first.set(c);
    }
  }

  BlockCertificate cert;
  cert.form = form;
  int pos = 0;
  for (int c = 1; c <= kCells; ++c) {
    if (in_first[c]) cert.permutation.order[pos++] = c;
  }
  cert.split = pos;
  for (int c = 1; c <= kCells; ++c) {
    if (!in_first[c]) cert.permutation.order[pos++] = c;
  }
  return cert;
}

std::optional<BlockCertificate> block_certificate(const Board& board) {
  return block_certificate(TransitionMatrix::build(board));
}

}  // namespace moksha
