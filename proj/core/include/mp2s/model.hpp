#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mp2s {

enum class ItemKind : std::uint8_t { a, b };

// A data item of the disjointness domain: a_i or b_i with i >= 1.
struct DataItem {
  ItemKind kind = ItemKind::a;
  std::uint32_t index = 1;

  friend auto operator<=>(const DataItem&, const DataItem&) = default;
};

DataItem item_a(std::uint32_t index);
DataItem item_b(std::uint32_t index);

// "a7" / "b7".
std::string to_string(const DataItem& item);
DataItem parse_item(std::string_view token);

// A read-only stream with 1-based positions.
class Stream {
 public:
  Stream() = default;
  explicit Stream(std::vector<DataItem> items) : items_(std::move(items)) {}
  Stream(std::initializer_list<DataItem> items) : items_(items) {}

  std::int64_t size() const noexcept {
    return static_cast<std::int64_t>(items_.size());
  }
  bool empty() const noexcept { return items_.empty(); }
  bool valid_position(std::int64_t p) const noexcept {
    return p >= 1 && p <= size();
  }
  // Precondition: valid_position(p).
  const DataItem& at(std::int64_t p) const {
    return items_[static_cast<std::size_t>(p - 1)];
  }
  std::span<const DataItem> items() const noexcept { return items_; }

  friend bool operator==(const Stream&, const Stream&) = default;

 private:
  std::vector<DataItem> items_;
};

// Stream file format: whitespace separated a<i> / b<i> tokens.
Stream read_stream(std::istream& in);
Stream read_stream_file(const std::string& path);
void write_stream(std::ostream& out, const Stream& s);
std::string format_stream(const Stream& s);

struct AutomatonParams {
  std::uint64_t domainSize = 0;
  std::uint64_t m = 1;
  int kf = 0;
  int kb = 0;

  int k() const noexcept { return 2 * kf + 2 * kb; }
  int heads_per_stream() const noexcept { return kf + kb; }

  friend bool operator==(const AutomatonParams&,
                         const AutomatonParams&) = default;
};

// Throws InvalidParams.
void validate(const AutomatonParams& params);

enum class StreamId : std::uint8_t { S, T };
enum class Direction : std::uint8_t { forward, backward };

// Canonical global order: S-forward, S-backward, T-forward, T-backward,
// each group ordered by ordinal (0-based).
struct HeadId {
  StreamId stream = StreamId::S;
  Direction direction = Direction::forward;
  int ordinal = 0;

  friend auto operator<=>(const HeadId&, const HeadId&) = default;
};

int head_index(const AutomatonParams& params, const HeadId& head);
HeadId head_at(const AutomatonParams& params, int index);
std::vector<HeadId> all_heads(const AutomatonParams& params);
// "S.f0", "T.b1", ...
std::string to_string(const HeadId& head);

// nullopt is the end marker.
using Symbol = std::optional<DataItem>;
using SymbolView = std::vector<Symbol>;

std::string symbol_token(const Symbol& sym);

enum class Move : std::uint8_t { stay, advance };
using AdvanceMask = std::vector<Move>;

AdvanceMask uniform_mask(int k, Move move);

// Opaque state token. Each automaton family decides how to encode its
// states into `code`; the owning StateSpace gives them meaning.
struct State {
  std::uint64_t code = 0;

  friend auto operator<=>(const State&, const State&) = default;
};

struct StateHash {
  std::size_t operator()(State s) const noexcept {
    return std::hash<std::uint64_t>{}(s.code);
  }
};

// Declared finite state set Q.
class StateSpace {
 public:
  virtual ~StateSpace() = default;

  virtual std::uint64_t size() const = 0;
  virtual bool contains(State s) const = 0;
  virtual std::string name(State s) const = 0;
  // Visits every declared state once. May be expensive for large spaces.
  virtual void for_each(const std::function<void(State)>& visit) const = 0;
};

// Q = {0, ..., count-1} with optional names.
class IndexedStateSpace final : public StateSpace {
 public:
  explicit IndexedStateSpace(std::vector<std::string> names);

  std::uint64_t size() const override { return names_.size(); }
  bool contains(State s) const override { return s.code < names_.size(); }
  std::string name(State s) const override;
  void for_each(const std::function<void(State)>& visit) const override;

  std::optional<State> find(std::string_view name) const;

 private:
  std::vector<std::string> names_;
};

struct Transition {
  State next;
  AdvanceMask mask;
};

using TransitionFn = std::function<Transition(State, const SymbolView&)>;
using AcceptFn = std::function<bool(State)>;

class Automaton {
 public:
  const AutomatonParams& params() const noexcept { return params_; }
  int k() const noexcept { return params_.k(); }
  const StateSpace& states() const noexcept { return *states_; }
  State start() const noexcept { return start_; }
  bool accepting(State s) const { return accepting_(s); }
  Transition delta(State s, const SymbolView& view) const {
    return delta_(s, view);
  }
  const std::string& description() const noexcept { return description_; }

 private:
  friend Automaton make_automaton(AutomatonParams, std::shared_ptr<const StateSpace>,
                                  State, AcceptFn, TransitionFn, std::string);
  Automaton() = default;

  AutomatonParams params_;
  std::shared_ptr<const StateSpace> states_;
  State start_;
  AcceptFn accepting_;
  TransitionFn delta_;
  std::string description_;
};

// Throws InvalidParams, StateBudgetExceeded (|Q| > m) or InvalidStart.
Automaton make_automaton(AutomatonParams params,
                         std::shared_ptr<const StateSpace> states, State start,
                         AcceptFn accepting, TransitionFn delta,
                         std::string description = {});

}  // namespace mp2s
