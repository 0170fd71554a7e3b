#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stratlang {

/// Index of a move letter inside its MoveAlphabet.
using Letter = std::uint32_t;

/// A finite word over a move alphabet.
using Word = std::vector<Letter>;

/// The product alphabet A = A_1 x ... x A_n of simultaneous moves.
///
/// Letters are encoded in mixed radix with player 0 as the most significant
/// digit, so letter order is the lexicographic order of action profiles.
/// For the two-player c/d alphabet: (c,c)=0, (c,d)=1, (d,c)=2, (d,d)=3.
class MoveAlphabet {
 public:
  /// One ordered, duplicate-free, nonempty action list per player.
  /// Throws std::invalid_argument when an invariant is violated.
  explicit MoveAlphabet(std::vector<std::vector<std::string>> actions);

  static MoveAlphabet single_player(std::vector<std::string> symbols);

  std::size_t players() const { return actions_.size(); }
  std::size_t size() const { return size_; }
  std::size_t action_count(std::size_t player) const { return actions_.at(player).size(); }
  const std::vector<std::string>& actions(std::size_t player) const { return actions_.at(player); }
  const std::vector<std::vector<std::string>>& action_lists() const { return actions_; }

  Letter encode(std::span<const std::size_t> profile) const;
  std::vector<std::size_t> decode(Letter letter) const;

  /// Action index played by `player` in `letter`.
  std::size_t action(Letter letter, std::size_t player) const;

  /// The letter equal to `letter` except that `player` plays `action`.
  Letter with_action(Letter letter, std::size_t player, std::size_t action) const;

  /// Comma-joined action names, e.g. "c,d".
  std::string letter_name(Letter letter) const;

  std::optional<Letter> find_letter(std::string_view text) const;
  std::optional<std::size_t> find_action(std::size_t player, std::string_view name) const;

  bool contains(Letter letter) const { return letter < size_; }

  friend bool operator==(const MoveAlphabet& a, const MoveAlphabet& b) {
    return a.actions_ == b.actions_;
  }

 private:
  std::vector<std::vector<std::string>> actions_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 0;
};

/// |w|_a, the number of occurrences of `letter` in `word`.
std::size_t count_occurrences(std::span<const Letter> word, Letter letter);

}  // namespace stratlang
