#include "stratlang/alphabet.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

namespace stratlang {

namespace {

std::string_view trim_view(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

}  // namespace

MoveAlphabet::MoveAlphabet(std::vector<std::vector<std::string>> actions)
    : actions_(std::move(actions)) {
  if (actions_.empty()) throw std::invalid_argument("alphabet needs at least one player");
  std::size_t size = 1;
  for (std::size_t i = 0; i < actions_.size(); ++i) {
    const auto& list = actions_[i];
    if (list.empty())
      throw std::invalid_argument("player " + std::to_string(i + 1) + " has no actions");
    std::set<std::string> seen;
    for (const auto& name : list) {
      if (name.empty())
        throw std::invalid_argument("empty action name for player " + std::to_string(i + 1));
      if (name.find_first_of(",() \t") != std::string::npos)
        throw std::invalid_argument("action name '" + name + "' contains a reserved character");
      if (!seen.insert(name).second)
        throw std::invalid_argument("duplicate action '" + name + "' for player " +
                                    std::to_string(i + 1));
    }
    if (size > std::numeric_limits<Letter>::max() / list.size())
      throw std::invalid_argument("alphabet too large");
    size *= list.size();
  }
  size_ = size;
  strides_.assign(actions_.size(), 1);
  for (std::size_t i = actions_.size() - 1; i > 0; --i)
    strides_[i - 1] = strides_[i] * actions_[i].size();
}

MoveAlphabet MoveAlphabet::single_player(std::vector<std::string> symbols) {
  return MoveAlphabet({std::move(symbols)});
}

Letter MoveAlphabet::encode(std::span<const std::size_t> profile) const {
  if (profile.size() != actions_.size())
    throw std::invalid_argument("action profile has wrong arity");
  std::size_t letter = 0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (profile[i] >= actions_[i].size()) throw std::out_of_range("action index out of range");
    letter += profile[i] * strides_[i];
  }
  return static_cast<Letter>(letter);
}

std::vector<std::size_t> MoveAlphabet::decode(Letter letter) const {
  std::vector<std::size_t> profile(actions_.size());
  for (std::size_t i = 0; i < actions_.size(); ++i) profile[i] = action(letter, i);
  return profile;
}

std::size_t MoveAlphabet::action(Letter letter, std::size_t player) const {
  return (letter / strides_[player]) % actions_[player].size();
}

Letter MoveAlphabet::with_action(Letter letter, std::size_t player, std::size_t act) const {
  const std::size_t current = action(letter, player);
  return static_cast<Letter>(letter - current * strides_[player] + act * strides_[player]);
}

std::string MoveAlphabet::letter_name(Letter letter) const {
  std::string out;
  for (std::size_t i = 0; i < actions_.size(); ++i) {
    if (i) out += ',';
    out += actions_[i][action(letter, i)];
  }
  return out;
}

std::optional<std::size_t> MoveAlphabet::find_action(std::size_t player,
                                                     std::string_view name) const {
  const auto& list = actions_.at(player);
  const auto it = std::find(list.begin(), list.end(), name);
  if (it == list.end()) return std::nullopt;
  return static_cast<std::size_t>(it - list.begin());
}

std::optional<Letter> MoveAlphabet::find_letter(std::string_view text) const {
  std::vector<std::size_t> profile;
  profile.reserve(actions_.size());
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const auto field = trim_view(text.substr(start, comma == std::string_view::npos
                                                        ? std::string_view::npos
                                                        : comma - start));
    if (profile.size() >= actions_.size()) return std::nullopt;
    const auto idx = find_action(profile.size(), field);
    if (!idx) return std::nullopt;
    profile.push_back(*idx);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (profile.size() != actions_.size()) return std::nullopt;
  return encode(profile);
}

std::size_t count_occurrences(std::span<const Letter> word, Letter letter) {
  return static_cast<std::size_t>(std::count(word.begin(), word.end(), letter));
}

}  // namespace stratlang
