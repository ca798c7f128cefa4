#include <doctest.h>

#include <memory>
#include <sstream>

#include "mp2s/engine.hpp"
#include "mp2s/errors.hpp"
#include "mp2s/model.hpp"

using namespace mp2s;

namespace {

std::shared_ptr<const IndexedStateSpace> states(int count) {
  std::vector<std::string> names;
  for (int i = 0; i < count; ++i) names.push_back("q" + std::to_string(i));
  return std::make_shared<const IndexedStateSpace>(names);
}

Transition stay_all(State s, const SymbolView& v) {
  return {s, uniform_mask(static_cast<int>(v.size()), Move::stay)};
}

}  // namespace

TEST_CASE("automaton with declared sizes") {
  const Automaton a = make_automaton({4, 3, 1, 0}, states(3), State{0},
                                     [](State) { return true; }, stay_all);
  CHECK(a.k() == 2);
  CHECK(a.states().size() == 3);
}

TEST_CASE("state budget is enforced") {
  CHECK_THROWS_AS(make_automaton({4, 3, 1, 0}, states(5), State{0},
                                 [](State) { return true; }, stay_all),
                  StateBudgetExceeded);
}

TEST_CASE("start must be declared") {
  CHECK_THROWS_AS(make_automaton({4, 3, 1, 0}, states(3), State{7},
                                 [](State) { return true; }, stay_all),
                  InvalidStart);
}

TEST_CASE("negative head counts are rejected") {
  CHECK_THROWS_AS(validate({4, 3, -1, 0}), InvalidParams);
  CHECK_THROWS_AS(validate({4, 0, 1, 0}), InvalidParams);
}

TEST_CASE("zero heads accept immediately from an accepting start") {
  const Automaton a = make_automaton({4, 1, 0, 0}, states(1), State{0},
                                     [](State) { return true; }, stay_all);
  CHECK(a.k() == 0);
  const RunResult r = run(a, Stream{item_a(1)}, Stream{item_b(2)});
  CHECK(r.accepted);
  CHECK(r.steps == 0);
}

TEST_CASE("canonical head order") {
  const AutomatonParams p{8, 2, 2, 1};
  const auto heads = all_heads(p);
  REQUIRE(heads.size() == 6);
  CHECK(to_string(heads[0]) == "S.f0");
  CHECK(to_string(heads[1]) == "S.f1");
  CHECK(to_string(heads[2]) == "S.b0");
  CHECK(to_string(heads[3]) == "T.f0");
  CHECK(to_string(heads[5]) == "T.b0");
  for (int i = 0; i < p.k(); ++i) CHECK(head_index(p, head_at(p, i)) == i);
}

TEST_CASE("item and stream text") {
  CHECK(to_string(item_a(7)) == "a7");
  CHECK(parse_item("b12") == item_b(12));
  CHECK_THROWS_AS(parse_item("c1"), ParseError);
  CHECK_THROWS_AS(parse_item("a0"), ParseError);
  std::istringstream in("a1  b2\n a3\n");
  const Stream s = read_stream(in);
  CHECK(format_stream(s) == "a1 b2 a3");
  CHECK(symbol_token(std::nullopt) == "end");
}
