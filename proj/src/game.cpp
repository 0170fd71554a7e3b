#include "stratlang/game.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace stratlang {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (const char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Rational parse_decimal(std::string_view text) {
  bool negative = false;
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto dot = body.find('.');
  const std::string_view whole = body.substr(0, dot);
  const std::string_view frac = dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
  if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
      (dot != std::string_view::npos && !frac.empty() && !all_digits(frac)) ||
      (dot != std::string_view::npos && frac.empty() && whole.empty()))
    throw std::invalid_argument("malformed number '" + std::string(text) + "'");
  boost::multiprecision::cpp_int numerator(std::string(whole.empty() ? "0" : whole));
  boost::multiprecision::cpp_int denominator = 1;
  for (const char c : frac) {
    numerator = numerator * 10 + (c - '0');
    denominator *= 10;
  }
  Rational value(numerator, denominator);
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  const Rational num = parse_decimal(text.substr(0, slash));
  const std::string_view den_text = text.substr(slash + 1);
  if (!all_digits(den_text))
    throw std::invalid_argument("malformed denominator in '" + std::string(text) + "'");
  const Rational den{boost::multiprecision::cpp_int(std::string(den_text))};
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return num / den;
}

std::string to_string(const Rational& value) { return value.str(); }

double to_double(const Rational& value) { return value.convert_to<double>(); }

// ---------------------------------------------------------------------------

Game::Game(MoveAlphabet alphabet, std::vector<std::vector<Rational>> utility,
           std::vector<std::string> player_names)
    : alphabet_(std::move(alphabet)),
      utility_(std::move(utility)),
      player_names_(std::move(player_names)) {
  if (utility_.size() != alphabet_.size())
    throw std::invalid_argument("utility table must cover every move letter");
  if (player_names_.empty())
    for (std::size_t i = 0; i < alphabet_.players(); ++i)
      player_names_.push_back(std::to_string(i + 1));
  if (player_names_.size() != alphabet_.players())
    throw std::invalid_argument("player name count does not match the alphabet");
  utility_values_.reserve(alphabet_.size() * players());
  for (Letter a = 0; a < alphabet_.size(); ++a) {
    if (utility_[a].size() != players())
      throw std::invalid_argument("utility vector for '" + alphabet_.letter_name(a) +
                                  "' has the wrong arity");
    for (const auto& v : utility_[a]) {
      const double x = to_double(v);
      utility_values_.push_back(x);
      max_abs_ = std::max(max_abs_, std::abs(x));
    }
  }
}

DiscountFactor::DiscountFactor(double value) : value_(value) {
  if (!(value > 0.0 && value < 1.0))
    throw std::invalid_argument("discount factor must lie strictly between 0 and 1");
}

DiscountFactor::DiscountFactor(const Rational& value) : value_(to_double(value)), exact_(value) {
  if (!(value > 0 && value < 1))
    throw std::invalid_argument("discount factor must lie strictly between 0 and 1");
}

DiscountFactor DiscountFactor::parse(std::string_view text) {
  return DiscountFactor(parse_rational(text));
}

std::vector<Rational> discounted_payoff_exact(const Game& game, const Rational& delta,
                                              const LassoWord& match) {
  const std::size_t n = game.players();
  std::vector<Rational> stem_sum(n), cycle_sum(n);
  Rational power = 1;
  for (const Letter a : match.stem) {
    for (std::size_t i = 0; i < n; ++i) stem_sum[i] += game.utility(a, i) * power;
    power *= delta;
  }
  const Rational stem_power = power;
  Rational weight = 0;
  power = 1;
  for (const Letter a : match.cycle) {
    for (std::size_t i = 0; i < n; ++i) cycle_sum[i] += game.utility(a, i) * power;
    weight += power;
    power *= delta;
  }
  // (1 - delta) / (1 - delta^p) = 1 / sum_{k<p} delta^k.
  std::vector<Rational> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = (1 - delta) * stem_sum[i] + stem_power * cycle_sum[i] / weight;
  return out;
}

double discounted_payoff_value(const Game& game, double delta, const LassoWord& match,
                               std::size_t player) {
  double stem_sum = 0.0, power = 1.0;
  for (const Letter a : match.stem) {
    stem_sum += game.utility_value(a, player) * power;
    power *= delta;
  }
  const double stem_power = power;
  double cycle_sum = 0.0, weight = 0.0;
  power = 1.0;
  for (const Letter a : match.cycle) {
    cycle_sum += game.utility_value(a, player) * power;
    weight += power;
    power *= delta;
  }
  return (1.0 - delta) * stem_sum + stem_power * cycle_sum / weight;
}

std::vector<double> discounted_payoff(const Game& game, const DiscountFactor& delta,
                                      const LassoWord& match) {
  std::vector<double> out(game.players());
  if (delta.exact()) {
    const auto exact = discounted_payoff_exact(game, *delta.exact(), match);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = to_double(exact[i]);
  } else {
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = discounted_payoff_value(game, delta.value(), match, i);
  }
  return out;
}

double partial_payoff(const Game& game, double delta, std::span<const Letter> history,
                      std::size_t player) {
  double sum = 0.0, power = 1.0;
  for (const Letter a : history) {
    sum += game.utility_value(a, player) * power;
    power *= delta;
  }
  return (1.0 - delta) * sum;
}

}  // namespace stratlang
