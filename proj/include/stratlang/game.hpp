#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "stratlang/alphabet.hpp"
#include "stratlang/lasso.hpp"

namespace stratlang {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q", an integer, or a decimal such as "-0.25" into an exact rational.
/// Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& value);
double to_double(const Rational& value);

/// G = (P, A, pi): a move alphabet and one utility vector per move letter.
class Game {
 public:
  /// `utility[a][i]` is pi_i(a). Every letter must have one value per player.
  Game(MoveAlphabet alphabet, std::vector<std::vector<Rational>> utility,
       std::vector<std::string> player_names = {});

  const MoveAlphabet& alphabet() const { return alphabet_; }
  std::size_t players() const { return alphabet_.players(); }
  const std::vector<std::string>& player_names() const { return player_names_; }

  const Rational& utility(Letter a, std::size_t player) const { return utility_.at(a).at(player); }
  double utility_value(Letter a, std::size_t player) const {
    return utility_values_[a * players() + player];
  }
  double max_abs_utility() const { return max_abs_; }

 private:
  MoveAlphabet alphabet_;
  std::vector<std::vector<Rational>> utility_;
  std::vector<double> utility_values_;
  std::vector<std::string> player_names_;
  double max_abs_ = 0.0;
};

/// A discount factor in the open interval (0, 1), exact when built from a
/// rational or a decimal string.
class DiscountFactor {
 public:
  explicit DiscountFactor(double value);
  explicit DiscountFactor(const Rational& value);
  static DiscountFactor parse(std::string_view text);

  double value() const { return value_; }
  const std::optional<Rational>& exact() const { return exact_; }

 private:
  double value_;
  std::optional<Rational> exact_;
};

/// (1 - delta) * sum_k pi(h_k) delta^k for every player, in closed form over
/// the lasso. Evaluated in rational arithmetic when delta is exact.
std::vector<double> discounted_payoff(const Game& game, const DiscountFactor& delta,
                                      const LassoWord& match);

std::vector<Rational> discounted_payoff_exact(const Game& game, const Rational& delta,
                                              const LassoWord& match);

/// Floating-point closed form for one player.
double discounted_payoff_value(const Game& game, double delta, const LassoWord& match,
                               std::size_t player);

/// (1 - delta) * sum_{k < |w|} pi_i(w_k) delta^k: the payoff collected over a finite history.
double partial_payoff(const Game& game, double delta, std::span<const Letter> history,
                      std::size_t player);

}  // namespace stratlang
