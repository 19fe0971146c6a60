#include "bbtetris/grid_oracle.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include "bbtetris/game.hpp"
#include "bbtetris/weights.hpp"

namespace bbtetris::oracle {

namespace {

// Top row first. One entry per rotation, in action enumeration order.
const std::vector<std::vector<std::vector<std::string_view>>>& drawings() {
  static const std::vector<std::vector<std::vector<std::string_view>>> d = {
      // O
      {{"##", "##"}},
      // I
      {{"#", "#", "#", "#"}, {"####"}},
      // S
      {{"#.", "##", ".#"}, {".##", "##."}},
      // Z
      {{".#", "##", "#."}, {"##.", ".##"}},
      // L
      {{"#.", "#.", "##"}, {"###", "#.."}, {"##", ".#", ".#"}, {"..#", "###"}},
      // J
      {{".#", ".#", "##"}, {"#..", "###"}, {"##", "#.", "#."}, {"###", "..#"}},
      // T
      {{".#.", "###"}, {"#.", "##", "#."}, {"###", ".#."}, {".#", "##", ".#"}},
  };
  return d;
}

const std::vector<std::string_view>& drawing(int piece, int rotation) { return drawings().at(piece).at(rotation); }

bool fits(const GridBoard& g, const std::vector<Cell>& cells, int column, int y) {
  for (const auto& c : cells) {
    if (c.y + y < 0 || g.at(column + c.x, c.y + y)) return false;
  }
  return true;
}

int column_top(const GridBoard& g, int x) {
  for (int y = static_cast<int>(g.rows.size()) - 1; y >= 0; --y) {
    if (g.rows[y][x]) return y;
  }
  return -1;
}

bool wall_or_cell(const GridBoard& g, int x, int y) {
  if (x < 0 || x >= kBoardWidth) return y < g.height;
  return g.at(x, y);
}

}  // namespace

int GridBoard::filled_count() const {
  int n = 0;
  for (const auto& r : rows) n += static_cast<int>(std::count(r.begin(), r.end(), true));
  return n;
}

GridBoard to_grid(const Board& board) {
  GridBoard g;
  g.height = board.height;
  g.rows.assign(board.height + kHeadroom, {});
  for (int x = 0; x < kBoardWidth; ++x) {
    for (int y = 0; y < 32; ++y) {
      if ((board.cols[x] >> y) & 1u) {
        if (y >= static_cast<int>(g.rows.size())) g.rows.resize(y + 1);
        g.rows[y][x] = true;
      }
    }
  }
  return g;
}

Board from_grid(const GridBoard& grid) {
  Board b = Board::empty(grid.height);
  for (int y = 0; y < static_cast<int>(grid.rows.size()); ++y) {
    for (int x = 0; x < kBoardWidth; ++x) {
      if (grid.rows[y][x]) {
        if (y >= 32) throw std::out_of_range("grid row does not fit a 32-bit column");
        b.cols[x] |= 1u << y;
      }
    }
  }
  return b;
}

std::vector<Cell> shape_cells(int piece, int rotation) {
  const auto& art = drawing(piece, rotation);
  const int h = static_cast<int>(art.size());
  std::vector<Cell> cells;
  for (int r = 0; r < h; ++r) {
    for (int x = 0; x < static_cast<int>(art[r].size()); ++x) {
      if (art[r][x] == '#') cells.push_back({x, h - 1 - r});
    }
  }
  return cells;
}

int shape_height(int piece, int rotation) { return static_cast<int>(drawing(piece, rotation).size()); }
int shape_width(int piece, int rotation) { return static_cast<int>(drawing(piece, rotation).front().size()); }
int rotation_count(int piece) { return static_cast<int>(drawings().at(piece).size()); }

OracleStep oracle_step(const GridBoard& grid, int piece, int rotation, int column) {
  const auto cells = shape_cells(piece, rotation);
  OracleStep out;
  GridBoard g = grid;

  int top = -1;
  for (int x = 0; x < kBoardWidth; ++x) top = std::max(top, column_top(g, x));
  int y = top + 1;
  while (fits(g, cells, column, y - 1)) --y;
  out.drop_height = y;

  const int needed = y + shape_height(piece, rotation);
  if (static_cast<int>(g.rows.size()) < needed) g.rows.resize(needed);
  for (const auto& c : cells) {
    g.rows[y + c.y][column + c.x] = true;
    out.placed.push_back({column + c.x, y + c.y});
  }

  std::vector<std::array<bool, kBoardWidth>> kept;
  for (int row = 0; row < static_cast<int>(g.rows.size()); ++row) {
    const bool full = row < g.height && std::all_of(g.rows[row].begin(), g.rows[row].end(), [](bool b) { return b; });
    if (full) {
      out.delete_rows |= 1u << row;
      ++out.reward;
    } else {
      kept.push_back(g.rows[row]);
    }
  }
  while (kept.size() < g.rows.size()) kept.push_back({});
  g.rows = std::move(kept);

  for (int row = g.height; row < static_cast<int>(g.rows.size()); ++row) {
    for (int x = 0; x < kBoardWidth; ++x) out.done = out.done || g.rows[row][x];
  }
  out.after = std::move(g);
  return out;
}

int oracle_row_transitions(const GridBoard& g) {
  int n = 0;
  for (int y = 0; y < static_cast<int>(g.rows.size()); ++y) {
    for (int x = -1; x < kBoardWidth; ++x) {
      if (wall_or_cell(g, x, y) != wall_or_cell(g, x + 1, y)) ++n;
    }
  }
  return n;
}

int oracle_column_transitions(const GridBoard& g) {
  int n = 0;
  for (int x = 0; x < kBoardWidth; ++x) {
    bool prev = true;  // floor
    for (int y = 0; y <= static_cast<int>(g.rows.size()); ++y) {
      const bool cur = g.at(x, y);
      if (cur != prev) ++n;
      prev = cur;
    }
  }
  return n;
}

int oracle_holes(const GridBoard& g) {
  int n = 0;
  for (int x = 0; x < kBoardWidth; ++x) {
    const int top = column_top(g, x);
    for (int y = 0; y < top; ++y) n += g.at(x, y) ? 0 : 1;
  }
  return n;
}

int oracle_board_well(const GridBoard& g) {
  int total = 0;
  for (int x = 0; x < kBoardWidth; ++x) {
    int run = 0;
    for (int y = 0; y < g.height; ++y) {
      if (!g.at(x, y)) {
        ++run;
        if (wall_or_cell(g, x - 1, y) && wall_or_cell(g, x + 1, y)) total += run;
      } else {
        run = 0;
      }
    }
  }
  return total;
}

int oracle_hole_depth(const GridBoard& g) {
  int n = 0;
  const int rows = static_cast<int>(g.rows.size());
  for (int x = 0; x < kBoardWidth; ++x) {
    int lowest_empty = 0;
    while (lowest_empty < rows && g.at(x, lowest_empty)) ++lowest_empty;
    for (int y = lowest_empty + 1; y < rows; ++y) n += g.at(x, y) ? 1 : 0;
  }
  return n;
}

int oracle_rows_with_holes(const GridBoard& g) {
  std::set<int> rows;
  for (int x = 0; x < kBoardWidth; ++x) {
    const int top = column_top(g, x);
    for (int y = 0; y < top; ++y) {
      if (!g.at(x, y)) rows.insert(y);
    }
  }
  return static_cast<int>(rows.size());
}

int oracle_pattern_diversity(const GridBoard& g) {
  std::set<int> seen;
  for (int x = 0; x + 1 < kBoardWidth; ++x) {
    const int d = column_top(g, x) - column_top(g, x + 1);
    if (d >= -2 && d <= 2) seen.insert(d);
  }
  return static_cast<int>(seen.size());
}

FeatureVector oracle_features(const GridBoard& after, const OracleStep& step, int piece, int rotation) {
  int eroded = 0;
  for (const auto& c : step.placed) {
    if ((step.delete_rows >> c.y) & 1u) ++eroded;
  }
  FeatureVector f;
  f << step.drop_height + (shape_height(piece, rotation) - 1) / 2.0, static_cast<double>(eroded * step.reward),
      oracle_row_transitions(after), oracle_column_transitions(after), oracle_holes(after), oracle_board_well(after),
      oracle_hole_depth(after), oracle_rows_with_holes(after), oracle_pattern_diversity(after);
  return f;
}

namespace {

std::string describe(const Board& pre, int piece, int rotation, int column, const std::string& what) {
  std::ostringstream os;
  os << what << " (piece " << piece_name(piece) << " rotation " << rotation << " column " << column << ")\n"
     << to_string(pre);
  return os.str();
}

// Compares one placement through both implementations; returns an empty
// string on agreement.
std::string compare_placement(const Board& pre, int piece, int action) {
  const auto [rotation, column] = decode_action(piece, action);
  const auto& shape = piece_def(piece).shape(rotation);
  const auto fast = features_of_transition(pre, shape, column);

  const auto grid = to_grid(pre);
  const auto slow = oracle_step(grid, piece, rotation, column);
  const auto slow_features = oracle_features(slow.after, slow, piece, rotation);

  if (from_grid(slow.after) != fast.after) return describe(pre, piece, rotation, column, "afterstate board differs");
  if (slow.reward != fast.reward) return describe(pre, piece, rotation, column, "reward differs");
  if (slow.drop_height != fast.drop_height) return describe(pre, piece, rotation, column, "drop height differs");
  if (slow.delete_rows != fast.delete_line) return describe(pre, piece, rotation, column, "delete-line mask differs");
  if (slow.done != fast.done) return describe(pre, piece, rotation, column, "game-over flag differs");
  for (int i = 0; i < kNumFeatures; ++i) {
    if (slow_features[i] != fast.features[i]) {
      std::ostringstream os;
      os << "feature " << kFeatureNames[i] << ": oracle " << slow_features[i] << " vs engine " << fast.features[i];
      return describe(pre, piece, rotation, column, os.str());
    }
  }
  return {};
}

void record(ParityReport& report, const std::string& mismatch) {
  ++report.transitions;
  if (!mismatch.empty()) {
    if (report.mismatches == 0) report.first_mismatch = mismatch;
    ++report.mismatches;
  }
}

}  // namespace

ParityReport verify_parity(long transitions, std::uint64_t seed, int height) {
  ParityReport report;
  const auto weights = presets::dt10();
  PieceGenerator gen(GeneratorKind::Random, seed);
  long game = 0;
  while (report.transitions < transitions) {
    // Vary how greedy each playout is so the corpus spans shallow random
    // stacks and deep, hole-ridden late-game boards.
    const double explore = 0.05 + 0.5 * gen.uniform_real();
    GameState state = reset(gen, height);
    ++game;
    while (report.transitions < transitions) {
      const int count = legal_action_count(state.piece);
      int action = 0;
      if (gen.uniform_real() < explore) {
        action = gen.uniform(count);
      } else {
        const auto batch = afterstate_batch(state);
        const Eigen::VectorXd values = batch.features.topRows(count) * weights.theta;
        values.maxCoeff(&action);
      }
      record(report, compare_placement(state.board, state.piece, action));
      const auto step = apply_action(state, action, gen);
      report.line_clears += step.reward > 0 ? 1 : 0;
      if (step.done) {
        ++report.terminal;
        break;
      }
      state = step.next;
    }
  }
  return report;
}

ParityReport verify_pathological(int height) {
  std::vector<Board> boards;
  const std::uint32_t full = low_mask(height);
  Board b = Board::empty(height);

  boards.push_back(b);
  b.cols.fill(full);
  boards.push_back(b);
  for (int x = 0; x < kBoardWidth; ++x) b.cols[x] = (x % 2 == 0) ? (0x55555555u & full) : (0xaaaaaaaau & full);
  boards.push_back(b);
  for (int depth = 1; depth <= height; ++depth) {
    for (int x : {0, 4, 9}) {
      b.cols.fill(full);
      b.cols[x] = low_mask(height - depth);
      boards.push_back(b);
    }
  }
  // Multi-hole columns with floating garbage.
  for (int k = 0; k < 3; ++k) {
    for (int x = 0; x < kBoardWidth; ++x) {
      const std::uint32_t pattern = k == 0 ? 0b1011010u : k == 1 ? 0b110011101u : (0x2d5u >> (x % 3));
      b.cols[x] = pattern & low_mask(height - 1 - (x % 4));
    }
    boards.push_back(b);
  }

  ParityReport report;
  for (const auto& pre : boards) {
    for (int piece = 0; piece < kNumPieces; ++piece) {
      for (int a = 0; a < legal_action_count(piece); ++a) {
        record(report, compare_placement(pre, piece, a));
        const auto pl = decode_action(piece, a);
        if (features_of_transition(pre, piece_def(piece).shape(pl.rotation), pl.column).done) ++report.terminal;
      }
    }
  }
  return report;
}

}  // namespace bbtetris::oracle
