#include "moksha/matrix.hpp"

#include <bitset>
#include <cmath>
#include <fstream>

namespace moksha {

StatePermutation StatePermutation::identity() {
  StatePermutation perm;
  for (int k = 0; k < kCells; ++k) perm.order[k] = k + 1;
  return perm;
}

bool StatePermutation::valid() const {
  std::bitset<kCells + 1> seen;
  for (int state : order) {
    if (state < 1 || state > kCells || seen[state]) return false;
    seen.set(state);
  }
  return true;
}

TransitionMatrix TransitionMatrix::build(const Board& board, EntranceRows style) {
  require_resolved(board);
  TransitionMatrix m;
  m.board_ = board;
  for (int i = 1; i <= kCells; ++i) {
    auto& row = m.six_[i - 1];
    if (i == kCells) {
      row[kCells - 1] = 6;
      continue;
    }
    if (board.is_entrance(i) && style == EntranceRows::ResolvedJump) {
      row[board.resolve_landing(i) - 1] = 6;
      continue;
    }
    for (int d = 1; d <= 6; ++d) {
      int target = i + d;
      int dest = target > kCells ? i : board.resolve_landing(target);
      row[dest - 1] += 1;
    }
  }
  return m;
}

std::vector<int> TransitionMatrix::successors(int from) const {
  std::vector<int> out;
  for (int j = 1; j <= kCells; ++j) {
    if (six_[from - 1][j - 1] > 0) out.push_back(j);
  }
  return out;
}

SixthsGrid permute_matrix(const SixthsGrid& grid, const StatePermutation& perm) {
  if (!perm.valid()) {
    throw std::invalid_argument("InvalidPermutation: not a bijection on 1..100");
  }
  SixthsGrid out{};
  for (int a = 0; a < kCells; ++a) {
    for (int b = 0; b < kCells; ++b) {
      out[a][b] = grid[perm.order[a] - 1][perm.order[b] - 1];
    }
  }
  return out;
}

SixthsGrid permute_matrix(const TransitionMatrix& m, const StatePermutation& perm) {
  return permute_matrix(m.grid(), perm);
}

namespace {

void write_pgm(const std::array<uint8_t, kCells * kCells>& pixels, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("IoError: cannot open " + path);
  out << "P5\n" << kCells << " " << kCells << "\n255\n";
  out.write(reinterpret_cast<const char*>(pixels.data()), pixels.size());
  if (!out) throw std::runtime_error("IoError: short write to " + path);
}

}  // namespace

void render_heatmap(const SixthsGrid& grid, const std::string& path) {
  std::array<uint8_t, kCells * kCells> pixels{};
  for (int r = 0; r < kCells; ++r) {
    for (int c = 0; c < kCells; ++c) {
      pixels[r * kCells + c] =
          static_cast<uint8_t>(std::lround(255.0 * (1.0 - grid[r][c] / 6.0)));
    }
  }
  write_pgm(pixels, path);
}

void render_heatmap(const std::array<std::array<double, kCells>, kCells>& grid,
                    const std::string& path) {
  std::array<uint8_t, kCells * kCells> pixels{};
  for (int r = 0; r < kCells; ++r) {
    for (int c = 0; c < kCells; ++c) {
      pixels[r * kCells + c] = static_cast<uint8_t>(std::lround(255.0 * (1.0 - grid[r][c])));
    }
  }
  write_pgm(pixels, path);
}

std::string dump_sixths(const SixthsGrid& grid) {
  std::string out;
  out.reserve(kCells * kCells * 4);
  for (int r = 0; r < kCells; ++r) {
    for (int c = 0; c < kCells; ++c) {
      if (c > 0) out += ' ';
      out += std::to_string(grid[r][c]);
      out += "/6";
    }
    out += '\n';
  }
  return out;
}

}  // namespace moksha
