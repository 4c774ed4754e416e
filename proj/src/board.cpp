#include "moksha/board.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace moksha {

const char* to_string(BoardError err) {
  switch (err) {
    case BoardError::Syntax: return "Syntax";
    case BoardError::OutOfRange: return "OutOfRange";
    case BoardError::ForbiddenCell: return "ForbiddenCell";
    case BoardError::SelfLoop: return "SelfLoop";
    case BoardError::DuplicateEntrance: return "DuplicateEntrance";
    case BoardError::ComponentCycle: return "ComponentCycle";
    case BoardError::NotNormalized: return "NotNormalized";
  }
  return "Unknown";
}

board_error::board_error(BoardError code, std::string detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

std::string Component::str() const {
  return std::to_string(entrance) + ">" + std::to_string(exit);
}

namespace {

void validate_component(const Component& c) {
  if (c.entrance < 1 || c.entrance > kCells || c.exit < 1 || c.exit > kCells) {
    throw board_error(BoardError::OutOfRange,
                      "component " + c.str() + " leaves the 1..100 track");
  }
  if (c.entrance == 1 || c.entrance == kCells || c.exit == 1 || c.exit == kCells) {
    throw board_error(BoardError::ForbiddenCell,
                      "component " + c.str() + " touches cell 1 or 100");
  }
  if (c.entrance == c.exit) {
    throw board_error(BoardError::SelfLoop, "component " + c.str());
  }
}

// Integer token; whitespace around tokens is ignored. Signs are not part of
// the grammar.
int parse_int(const std::string& text, size_t& pos) {
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  size_t start = pos;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos == start) {
    throw board_error(BoardError::Syntax, "expected an integer in \"" + text + "\"");
  }
  long value = 0;
  for (size_t i = start; i < pos; ++i) {
    value = value * 10 + (text[i] - '0');
    if (value > 1000) break;  // anything this large is OutOfRange anyway
  }
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  return static_cast<int>(value);
}

void expect_char(const std::string& text, size_t& pos, char ch) {
  if (pos >= text.size() || text[pos] != ch) {
    throw board_error(BoardError::Syntax, std::string("expected '") + ch + "' in \"" + text + "\"");
  }
  ++pos;
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
}

std::vector<int> parse_int_list(const std::string& text, size_t& pos) {
  std::vector<int> values;
  expect_char(text, pos, '[');
  if (pos < text.size() && text[pos] == ']') {
    ++pos;
    return values;
  }
  while (true) {
    values.push_back(parse_int(text, pos));
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      continue;
    }
    expect_char(text, pos, ']');
    return values;
  }
}

// "N([e1,...],[x1,...])"
std::vector<Component> parse_name_form(const std::string& text) {
  size_t pos = 0;
  int n = parse_int(text, pos);
  expect_char(text, pos, '(');
  std::vector<int> entrances = parse_int_list(text, pos);
  expect_char(text, pos, ',');
  std::vector<int> exits = parse_int_list(text, pos);
  expect_char(text, pos, ')');
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos != text.size()) {
    throw board_error(BoardError::Syntax, "trailing characters in \"" + text + "\"");
  }
  if (entrances.size() != exits.size() || static_cast<int>(entrances.size()) != n) {
    throw board_error(BoardError::Syntax,
                      "component count mismatch in \"" + text + "\"");
  }
  std::vector<Component> components;
  components.reserve(entrances.size());
  for (size_t i = 0; i < entrances.size(); ++i) {
    components.push_back({entrances[i], exits[i]});
  }
  return components;
}

std::vector<Component> parse_pair_form(const std::string& text) {
  std::vector<Component> components;
  size_t pos = 0;
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos == text.size()) return components;  // the 0 Board
  while (true) {
    int entrance = parse_int(text, pos);
    expect_char(text, pos, '>');
    int exit = parse_int(text, pos);
    components.push_back({entrance, exit});
    if (pos == text.size()) return components;
    expect_char(text, pos, ',');
  }
}

}  // namespace

Board::Board(std::vector<Component> components) : components_(std::move(components)) {
  for (const Component& c : components_) validate_component(c);
  std::sort(components_.begin(), components_.end(),
            [](const Component& a, const Component& b) { return a.entrance < b.entrance; });
  for (size_t i = 1; i < components_.size(); ++i) {
    if (components_[i].entrance == components_[i - 1].entrance) {
      throw board_error(BoardError::DuplicateEntrance,
                        "components " + components_[i - 1].str() + " and " +
                            components_[i].str() + " share a starting cell");
    }
  }
  rebuild_index();
}

void Board::rebuild_index() {
  comp_at_.fill(-1);
  exit_cells_.reset();
  for (size_t i = 0; i < components_.size(); ++i) {
    comp_at_[components_[i].entrance] = static_cast<int8_t>(i);
    exit_cells_.set(components_[i].exit);
  }
}

Board Board::from_components(std::vector<Component> components) {
  return Board(std::move(components));
}

Board Board::parse(const std::string& text) {
  if (text.find('(') != std::string::npos) {
    return Board(parse_name_form(text));
  }
  return Board(parse_pair_form(text));
}

Board Board::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw board_error(BoardError::Syntax, "cannot open board file " + path);
  }
  std::vector<Component> components;
  std::string line;
  while (std::getline(in, line)) {
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream row(line);
    int entrance = 0, exit = 0;
    if (!(row >> entrance >> exit)) {
      throw board_error(BoardError::Syntax, "bad line in board file: \"" + line + "\"");
    }
    std::string rest;
    if (row >> rest) {
      throw board_error(BoardError::Syntax, "trailing tokens in board file line: \"" + line + "\"");
    }
    components.push_back({entrance, exit});
  }
  return Board(std::move(components));
}

const Component* Board::component_at(int cell) const {
  if (cell < 1 || cell > kCells || comp_at_[cell] < 0) return nullptr;
  return &components_[comp_at_[cell]];
}

std::string Board::name() const {
  std::string entrances, exits;
  for (const Component& c : components_) {
    if (!entrances.empty()) {
      entrances += ',';
      exits += ',';
    }
    entrances += std::to_string(c.entrance);
    exits += std::to_string(c.exit);
  }
  return std::to_string(size()) + "([" + entrances + "],[" + exits + "])";
}

std::string Board::pair_string() const {
  std::string out;
  for (const Component& c : components_) {
    if (!out.empty()) out += ',';
    out += c.str();
  }
  return out;
}

bool Board::resolved() const {
  for (const Component& c : components_) {
    if (is_entrance(c.exit)) return false;
  }
  return true;
}

bool Board::distinct_exits() const {
  std::bitset<kCells + 1> seen;
  for (const Component& c : components_) {
    if (seen[c.exit] || is_entrance(c.exit)) return false;
    seen.set(c.exit);
  }
  return true;
}

Board Board::normalize() const {
  // Follow each chain of components to its terminal cell; a revisited cell
  // means the chain loops and the board has no resolved form.
  std::vector<Component> rewritten = components_;
  for (Component& c : rewritten) {
    int cell = c.exit;
    int steps = 0;
    while (const Component* next = component_at(cell)) {
      cell = next->exit;
      if (++steps > size()) {
        throw board_error(BoardError::ComponentCycle,
                          "chain from " + c.str() + " never resolves");
      }
    }
    c.exit = cell;
  }
  return Board(std::move(rewritten));
}

int Board::resolve_landing(int cell) const {
  if (const Component* c = component_at(cell)) return c->exit;
  return cell;
}

void require_resolved(const Board& board) {
  if (!board.resolved()) {
    throw board_error(BoardError::NotNormalized,
                      "board " + board.name() + " has chained components; call normalize()");
  }
}

}  // namespace moksha
