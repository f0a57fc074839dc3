#include "logitmeta/subsets.hpp"

#include <algorithm>
#include <charconv>
#include <string>

#include "logitmeta/error.hpp"

namespace logitmeta {

StateSet::StateSet(std::size_t universe, std::vector<std::size_t> members)
    : mask_(universe, false), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (std::size_t x : members_) {
    if (x >= universe) throw InvalidArgument("subset member " + std::to_string(x) + " out of range");
    mask_[x] = true;
  }
}

StateSet StateSet::from_mask(std::vector<bool> mask) {
  StateSet s;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) s.members_.push_back(i);
  }
  s.mask_ = std::move(mask);
  return s;
}

StateSet StateSet::all(std::size_t universe) { return from_mask(std::vector<bool>(universe, true)); }

StateSet StateSet::complement() const {
  std::vector<bool> m(mask_.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = !mask_[i];
  return from_mask(std::move(m));
}

StateSet StateSet::united(const StateSet& other) const {
  if (other.universe() != universe()) throw InvalidArgument("subset universes differ");
  std::vector<bool> m(mask_);
  for (std::size_t x : other.members_) m[x] = true;
  return from_mask(std::move(m));
}

bool StateSet::intersects(const StateSet& other) const {
  return std::any_of(members_.begin(), members_.end(), [&](std::size_t x) { return other.contains(x); });
}

namespace {

int parse_int(std::string_view text, std::string_view spec) {
  int value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw InvalidArgument("malformed subset predicate '" + std::string(spec) + "'");
  }
  return value;
}

struct Comparison {
  std::string_view key;
  std::string_view op;
  int value;
};

std::optional<Comparison> split_comparison(std::string_view spec) {
  for (std::string_view op : {">=", "<=", "=="}) {
    const auto pos = spec.find(op);
    if (pos != std::string_view::npos) {
      return Comparison{spec.substr(0, pos), op, parse_int(spec.substr(pos + 2), spec)};
    }
  }
  return std::nullopt;
}

bool compare(int lhs, std::string_view op, int rhs) {
  if (op == ">=") return lhs >= rhs;
  if (op == "<=") return lhs <= rhs;
  return lhs == rhs;
}

int count_bits(const GameSpec& game, const StrategyProfile& x, int bit) {
  int c = 0;
  for (int s : x) c += game.bit_of_strategy(s) == bit ? 1 : 0;
  return c;
}

bool has_adjacent_zeros(const GameSpec& game, const StrategyProfile& x) {
  const auto n = x.size();
  if (n < 2) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (game.bit_of_strategy(x[i]) == 0 && game.bit_of_strategy(x[(i + 1) % n]) == 0) return true;
  }
  return false;
}

}  // namespace

ProfilePredicate make_predicate(const GameSpec& game, std::string_view spec) {
  if (!spec.empty() && spec.front() == '!') {
    auto inner = make_predicate(game, spec.substr(1));
    return [inner](const StrategyProfile& x) { return !inner(x); };
  }
  if (spec == "all") return [](const StrategyProfile&) { return true; };
  if (spec == "all-zeros") {
    return [game](const StrategyProfile& x) { return count_bits(game, x, 1) == 0; };
  }
  if (spec == "all-ones") {
    return [game](const StrategyProfile& x) { return count_bits(game, x, 0) == 0; };
  }
  if (spec == "R") {
    return [game](const StrategyProfile& x) { return has_adjacent_zeros(game, x); };
  }
  if (const auto cmp = split_comparison(spec)) {
    const auto [key, op, value] = *cmp;
    const std::string op_copy(op);
    if (key == "weight") {
      return [game, op_copy, value](const StrategyProfile& x) {
        return compare(count_bits(game, x, 1), op_copy, value);
      };
    }
    if (key == "zeros") {
      return [game, op_copy, value](const StrategyProfile& x) {
        return compare(count_bits(game, x, 0), op_copy, value);
      };
    }
    if (key == "magnetization") {
      return [game, op_copy, value](const StrategyProfile& x) {
        return compare(count_bits(game, x, 1) - count_bits(game, x, 0), op_copy, value);
      };
    }
    if (key == "Rstar" && op == ">=") {
      return [game, value](const StrategyProfile& x) {
        return has_adjacent_zeros(game, x) || count_bits(game, x, 0) >= value;
      };
    }
  }
  throw InvalidArgument("unknown subset predicate '" + std::string(spec) + "'");
}

StateSet named_subset(const StateSpace& space, std::string_view spec) {
  constexpr std::string_view kIndexPrefix = "index:";
  if (spec.substr(0, kIndexPrefix.size()) == kIndexPrefix) {
    std::vector<std::size_t> members;
    std::string_view rest = spec.substr(kIndexPrefix.size());
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const auto token = rest.substr(0, comma);
      const int v = parse_int(token, spec);
      if (v < 0) throw InvalidArgument("negative state index in '" + std::string(spec) + "'");
      members.push_back(static_cast<std::size_t>(v));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    return StateSet(space.size(), std::move(members));
  }
  const auto predicate = make_predicate(space.game(), spec);
  std::vector<bool> mask(space.size());
  for (std::size_t x = 0; x < space.size(); ++x) mask[x] = predicate(space.decode(x));
  return StateSet::from_mask(std::move(mask));
}

}  // namespace logitmeta
