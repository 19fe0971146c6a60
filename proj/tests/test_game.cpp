#include <doctest.h>

#include <random>
#include <stdexcept>

#include "bbtetris/game.hpp"

using namespace bbtetris;

namespace {

GameState fixture_state() {
  GameState s;
  s.board = Board::empty(10);
  s.board.cols = {127, 127, 14, 31, 31, 3, 1, 63, 63, 63};
  s.piece = 6;
  return s;
}

}  // namespace

TEST_CASE("reset") {
  PieceGenerator g(GeneratorKind::Random, 0);
  const auto s = reset(g);
  const auto w = s.to_wire();
  for (int i = 0; i < kStateSlots; ++i) {
    if (i != slot::kPiece) CHECK(w[i] == 0);
  }
  CHECK(w[slot::kPiece] >= 0);
  CHECK(w[slot::kPiece] <= 6);

  PieceGenerator sz(GeneratorKind::AdversarialSZ, 0);
  CHECK(reset(sz).piece == 2);
}

TEST_CASE("fixture transition") {
  PieceGenerator g(GeneratorKind::Random, 1);
  int action = -1;
  for (int a = 0; a < legal_action_count(6); ++a) {
    const auto pl = decode_action(6, a);
    if (pl.rotation == 3 && pl.column == 5) action = a;
  }
  REQUIRE(action == 30);
  const auto r = apply_action(fixture_state(), action, g);
  CHECK(r.reward == 2);
  CHECK_FALSE(r.done);
  CHECK(r.next.board.cols == Columns{31, 31, 2, 7, 7, 1, 3, 15, 15, 15});
  CHECK(r.next.drop_height == 1);
  CHECK(r.next.delete_line == 6u);
  CHECK(r.next.score == 2);
  CHECK(r.next.reward == 2);
}

TEST_CASE("empty board O at column 0") {
  PieceGenerator g(GeneratorKind::Random, 1);
  GameState s;
  s.piece = 0;
  const auto r = apply_action(s, 0, g);
  CHECK(r.reward == 0);
  CHECK_FALSE(r.done);
  CHECK(r.next.board.cols == Columns{3, 3, 0, 0, 0, 0, 0, 0, 0, 0});
}

TEST_CASE("stacking vertical I pieces ends the game") {
  PieceGenerator g(GeneratorKind::Random, 1);
  GameState s;
  s.piece = 1;
  bool done = false;
  int drops = 0;
  while (!done) {
    s.piece = 1;
    const auto r = apply_action(s, 0, g);
    done = r.done;
    s = r.next;
    ++drops;
  }
  CHECK(drops == 3);
  CHECK(is_game_over(s));
  CHECK_THROWS_AS(apply_action(s, 0, g), std::logic_error);
}

TEST_CASE("action range is enforced") {
  PieceGenerator g(GeneratorKind::Random, 1);
  GameState s;
  s.piece = 0;
  CHECK_THROWS_AS(apply_action(s, 9, g), std::out_of_range);
  CHECK_THROWS_AS(apply_action(s, -1, g), std::out_of_range);
  s.piece = 6;
  CHECK_NOTHROW(apply_action(s, 33, g));
}

TEST_CASE("wire round trip and validation") {
  GameState s = fixture_state();
  s.reward = 2;
  s.score = 7;
  s.drop_height = 1;
  s.delete_line = 6;
  const auto w = s.to_wire();
  CHECK(w[0] == 127);
  CHECK(w[slot::kReward] == 2);
  CHECK(w[slot::kScore] == 7);
  CHECK(w[slot::kPiece] == 6);
  CHECK(w[slot::kDropHeight] == 1);
  CHECK(w[slot::kDeleteLine] == 6);
  CHECK(GameState::from_wire(w, 10) == s);

  auto bad = w;
  bad[slot::kPiece] = 7;
  CHECK_THROWS_AS(GameState::from_wire(bad, 10), std::invalid_argument);
  bad = w;
  bad[slot::kReward] = 1;
  CHECK_THROWS_AS(GameState::from_wire(bad, 10), std::invalid_argument);
  bad = w;
  bad[3] = 1 << 14;
  CHECK_THROWS_AS(GameState::from_wire(bad, 10), std::invalid_argument);
  CHECK_THROWS_AS(GameState::from_wire(w, 12), std::invalid_argument);
}

TEST_CASE("random play keeps the invariants") {
  for (int h : {10, 20}) {
    Game game(h, GeneratorKind::Random, 99);
    std::mt19937 rng(4);
    int games = 0;
    long steps = 0;
    while (games < 20) {
      auto before = game.state();
      const int a = rng() % legal_action_count(before.piece);
      const auto r = game.step(a);
      ++steps;
      CHECK(r.reward >= 0);
      CHECK(r.reward <= 4);
      CHECK(r.reward == popcount(r.next.delete_line));
      CHECK(r.next.score == before.score + r.reward);
      CHECK(r.next.board.cell_count() == before.board.cell_count() + 4 - 10 * r.reward);
      CHECK(GameState::from_wire(r.next.to_wire(), h) == r.next);
      if (!r.done) {
        for (auto c : r.next.board.cols) CHECK((c & ~r.next.board.playfield_mask()) == 0u);
      }
      if (r.done) {
        ++games;
        game.reset();
      }
    }
    CHECK(steps > 0);
  }
}

TEST_CASE("determinism") {
  auto run = [] {
    Game game(10, GeneratorKind::SevenBag, 31);
    std::vector<WireState> trace;
    for (int i = 0; i < 500; ++i) {
      const auto& s = game.state();
      const auto r = game.step((i * 7) % legal_action_count(s.piece));
      trace.push_back(r.next.to_wire());
      if (r.done) game.reset();
    }
    return trace;
  };
  CHECK(run() == run());
}
