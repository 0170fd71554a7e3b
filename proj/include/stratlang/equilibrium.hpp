#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stratlang/automaton.hpp"
#include "stratlang/game.hpp"
#include "stratlang/strategy.hpp"

namespace stratlang {

inline constexpr double kDefaultPayoffTolerance = 1e-9;
inline constexpr double kDefaultThresholdTolerance = 1e-6;

/// mu^(i): player i keeps sigma_i, everyone else becomes unpredictable.
ProductStrategyVector only_player_follows(const ProductStrategyVector& sigma, std::size_t player);
/// nu^(i): player i becomes unpredictable, everyone else keeps sigma.
ProductStrategyVector all_but_player_follow(const ProductStrategyVector& sigma, std::size_t player);

/// The languages behind the equilibrium definition for a strategy vector.
struct EquilibriumFamily {
  SafetyAutomaton joint;                   // X   = gamma(sigma)
  std::vector<SafetyAutomaton> followers;  // X_i = gamma(mu^(i))
  std::vector<SafetyAutomaton> opponents;  // Y_i = gamma(nu^(i))
};

/// Builds X, X_i, Y_i and checks X ≡ ⋂ X_i and Y_i ≡ ⋂_{j≠i} X_j.
/// Requires at least two players (std::invalid_argument). A failed identity
/// check throws std::logic_error.
EquilibriumFamily equilibrium_family(const ProductStrategyVector& sigma);

/// V_i(q): the best discounted value player i can collect from state q
/// of `arena` when every available letter may be chosen. Computed by value
/// iteration to within `tolerance` of the fixed point. Throws
/// std::invalid_argument on an empty arena.
std::vector<double> best_deviation_value(const SafetyAutomaton& arena, const Game& game,
                                         std::size_t player, const DiscountFactor& delta,
                                         double tolerance = kDefaultPayoffTolerance);

/// The comparison at one deviation time t.
struct PositionCheck {
  std::size_t position = 0;
  StateId state = kNoState;
  double continuation = 0.0;  // payoff of h shifted by t
  std::optional<double> best_deviation;  // nullopt when no i-variation is feasible at t
  std::optional<Letter> deviation;       // the deviating letter achieving best_deviation

  /// continuation - best_deviation. Scaling by delta^t gives pi(h) - pi(h-bar).
  std::optional<double> margin() const {
    if (!best_deviation) return std::nullopt;
    return continuation - *best_deviation;
  }
};

struct GoodMatchVerdict {
  bool good = true;
  /// Good, but the worst margin is within tolerance of zero.
  bool boundary = false;
  std::optional<std::size_t> worst_position;
  std::optional<double> margin;  // worst margin; nullopt when h has no i-variation at all
  std::optional<Letter> deviation;
  std::vector<PositionCheck> positions;
};

/// Good-match analysis of matches of one arena for one player at fixed delta.
/// The best-deviation values are computed once and reused for every match.
class DeviationAnalysis {
 public:
  DeviationAnalysis(SafetyAutomaton arena, const Game& game, std::size_t player,
                    const DiscountFactor& delta, double tolerance = kDefaultPayoffTolerance);

  const SafetyAutomaton& arena() const { return arena_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t player() const { return player_; }
  double delta() const { return delta_; }
  double tolerance() const { return tolerance_; }

  /// Compares h against its best i-variation at every deviation time. The
  /// walk stops once the (lasso phase, arena state) pair repeats.
  /// Throws std::invalid_argument when h is not in the arena.
  GoodMatchVerdict check(const LassoWord& match) const;

  /// The comparison at an arbitrary position t.
  PositionCheck check_position(const LassoWord& match, std::size_t t) const;

  /// The letter maximizing the one-step lookahead value at q.
  Letter best_move(StateId q) const;

  /// An i-variation that deviates at the verdict's worst position and then
  /// follows best_move. Requires a verdict with a deviation.
  LassoWord deviation_witness(const LassoWord& match, const GoodMatchVerdict& verdict) const;

 private:
  double lookahead(StateId q, Letter a) const;

  SafetyAutomaton arena_;
  Game game_;
  std::size_t player_;
  double delta_;
  double tolerance_;
  std::vector<double> values_;
};

GoodMatchVerdict is_good_match(const LassoWord& match, const SafetyAutomaton& arena,
                               const Game& game, std::size_t player, const DiscountFactor& delta,
                               double tolerance = kDefaultPayoffTolerance);

enum class NashOutcome { equilibrium, not_equilibrium, inconclusive };

struct NashOptions {
  std::size_t search_bound = 6;
  double tolerance = kDefaultPayoffTolerance;
  std::optional<LassoWord> candidate;
};

struct NashVerdict {
  NashOutcome outcome = NashOutcome::inconclusive;
  std::optional<LassoWord> witness;
  std::vector<GoodMatchVerdict> player_verdicts;  // for the witness or the rejected candidate
  std::size_t candidates_examined = 0;
  std::string reason;
};

/// Looks for a match that is good for every player i inside Y_i.
/// With a candidate the verdict is exact for that match. Without one, lassos
/// of X up to `search_bound` are tried; failing to find one is inconclusive.
/// Throws std::invalid_argument for single-player games.
NashVerdict is_nash(const ProductStrategyVector& sigma, const Game& game,
                    const DiscountFactor& delta, const NashOptions& options = {});

struct ThresholdOptions {
  double grid_step = 1.0 / 64.0;
  double tolerance = kDefaultThresholdTolerance;
  double payoff_tolerance = kDefaultPayoffTolerance;
};

struct ThresholdCrossing {
  double lower = 0.0;
  double upper = 0.0;
  bool good_above = true;  // predicate holds at `upper`

  double estimate() const { return 0.5 * (lower + upper); }
};

struct ThresholdReport {
  std::vector<std::pair<double, bool>> grid;
  std::vector<ThresholdCrossing> crossings;
};

/// Evaluates `predicate` on the open-interval grid {step, 2 step, ...} and
/// bisects every sign change to width <= tolerance. No monotonicity is assumed.
ThresholdReport find_thresholds(const std::function<bool(double)>& predicate,
                                const ThresholdOptions& options = {});

/// Thresholds of "candidate is good for every player i in Y_i".
ThresholdReport nash_threshold(const ProductStrategyVector& sigma, const Game& game,
                               const LassoWord& candidate, const ThresholdOptions& options = {});

/// Thresholds of "candidate is good for `player` in `arena`".
ThresholdReport good_match_threshold(const SafetyAutomaton& arena, const Game& game,
                                     std::size_t player, const LassoWord& candidate,
                                     const ThresholdOptions& options = {});

}  // namespace stratlang
