#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "random.hpp"
#include "stratlang/equilibrium.hpp"

using namespace stratlang;

namespace {

const MoveAlphabet kPd({{"c", "d"}, {"c", "d"}});
constexpr Letter cc = 0, cd = 1, dc = 2, dd = 3;

LassoWord pd(const std::string& text) { return parse_lasso(text, kPd); }

// One state per phase: cooperate until `trigger`, then loop on `tail` letters.
SafetyAutomaton trigger_language(Letter trigger, std::vector<Letter> tail) {
  DetAutomaton raw(kPd, 2, 0);
  raw.set_successor(0, cc, 0);
  raw.set_successor(0, trigger, 1);
  for (const Letter x : tail) raw.set_successor(1, x, 1);
  return trim(raw);
}

SafetyAutomaton single_state(std::vector<Letter> letters) {
  DetAutomaton raw(kPd, 1, 0);
  for (const Letter x : letters) raw.set_successor(0, x, 0);
  return trim(raw);
}

bool is_variation(const LassoWord& h, const LassoWord& other, std::size_t t, std::size_t player) {
  for (std::size_t k = 0; k < t; ++k)
    if (letter_at(h, k) != letter_at(other, k)) return false;
  const Letter x = letter_at(h, t), y = letter_at(other, t);
  if (kPd.action(x, player) == kPd.action(y, player)) return false;
  for (std::size_t j = 0; j < kPd.players(); ++j)
    if (j != player && kPd.action(x, j) != kPd.action(y, j)) return false;
  return true;
}

}  // namespace

TEST(Family, GrimTriggerFollowerLanguages) {
  const auto family = equilibrium_family(fixture::vector("grim"));
  EXPECT_TRUE(equivalent(family.followers[0], trigger_language(cd, {dc, dd})));
  EXPECT_TRUE(equivalent(family.followers[1], trigger_language(dc, {cd, dd})));
  EXPECT_TRUE(equivalent(family.followers[0], fixture::safety("grim_language")));
  EXPECT_TRUE(equivalent(family.opponents[0], family.followers[1]));
  EXPECT_TRUE(equivalent(family.joint, single_state({cc})));
  EXPECT_TRUE(equivalent(intersect(family.followers[0], family.followers[1]), family.joint));
}

TEST(Family, UnpredictableVectorGivesEverything) {
  ProductStrategyVector v(kPd, 1, 0);
  v.make_unpredictable(0);
  v.make_unpredictable(1);
  const auto family = equilibrium_family(v);
  const BuchiAutomaton all = BuchiAutomaton::universal(kPd);
  EXPECT_TRUE(equivalent(family.joint, all));
  EXPECT_TRUE(equivalent(family.followers[0], all));
  EXPECT_TRUE(equivalent(family.followers[1], all));
}

TEST(FamilyProperty, IntersectionIdentities) {
  gen::Rng rng(51);
  for (int round = 0; round < 100; ++round) {
    const ProductStrategyVector v = gen::product_vector(rng, kPd, 4);
    const SafetyAutomaton x = gamma(v);
    const SafetyAutomaton x1 = gamma(only_player_follows(v, 0)), x2 = gamma(only_player_follows(v, 1));
    ASSERT_TRUE(equivalent(x, intersect(x1, x2)));
    ASSERT_TRUE(equivalent(gamma(all_but_player_follow(v, 0)), x2));
    ASSERT_TRUE(equivalent(gamma(all_but_player_follow(v, 1)), x1));
    for (int k = 0; k < 20; ++k) {
      const LassoWord h = gen::lasso(rng, 4, 3, 3);
      ASSERT_EQ(x.accepts(h), x1.accepts(h) && x2.accepts(h));
    }
  }
}

TEST(Family, SinglePlayerRejected) {
  const MoveAlphabet solo = MoveAlphabet::single_player({"a", "b"});
  ProductStrategyVector v(solo, 1, 0);
  v.make_unpredictable(0);
  EXPECT_THROW(equilibrium_family(v), std::invalid_argument);
  const Game g(solo, {{Rational(1)}, {Rational(0)}});
  EXPECT_THROW(is_nash(v, g, DiscountFactor(0.5)), std::invalid_argument);
}

TEST(BestDeviationValue, Examples) {
  const Game g = fixture::prisoners_dilemma();
  const auto all = best_deviation_value(single_state({cc, cd, dc, dd}), g, 1, DiscountFactor(0.6));
  EXPECT_NEAR(all[0], 5.0, 1e-9);
  const auto row_defects = best_deviation_value(single_state({dc, dd}), g, 1, DiscountFactor(0.6));
  EXPECT_NEAR(row_defects[0], 1.0, 1e-9);
  EXPECT_THROW(best_deviation_value(SafetyAutomaton::empty(kPd), g, 1, DiscountFactor(0.6)),
               std::invalid_argument);
}

TEST(BestDeviationValueProperty, MatchesHorizonDynamicProgramming) {
  gen::Rng rng(52);
  for (int round = 0; round < 50; ++round) {
    const SafetyAutomaton y = gen::safety(rng, kPd, 4);
    if (y.is_empty()) continue;
    const Game g = gen::game(rng, kPd);
    const double d = 0.1 + 0.8 * std::uniform_real_distribution<double>(0, 1)(rng);
    const double tol = 1e-9;
    const auto v = best_deviation_value(y, g, 0, DiscountFactor(d), tol);
    const auto h = oracle::horizon_value(y, g, 0, d, 30);
    const double bound = tol + std::pow(d, 30) * g.max_abs_utility() / (1.0 - d);
    for (std::size_t q = 0; q < v.size(); ++q) ASSERT_NEAR(v[q], h[q], bound);
  }
}

TEST(BestDeviationValueProperty, MonotoneInAvailableMoves) {
  gen::Rng rng(53);
  for (int round = 0; round < 100; ++round) {
    const DetAutomaton small = gen::structure(rng, kPd, gen::uniform(rng, 1, 4), 0.5);
    DetAutomaton big = small;
    for (StateId q = 0; q < big.state_count(); ++q)
      for (Letter x = 0; x < 4; ++x)
        if (big.successor(q, x) == kNoState && gen::coin(rng, 0.3))
          big.set_successor(q, x, static_cast<StateId>(gen::uniform(rng, 0, big.state_count() - 1)));
    const Game g = gen::game(rng, kPd);
    const DiscountFactor d(0.7);
    for (StateId q = 0; q < small.state_count(); ++q) {
      const SafetyAutomaton from_small = trim(small.rerooted(q));
      if (from_small.is_empty()) continue;
      const SafetyAutomaton from_big = trim(big.rerooted(q));
      const double vs = best_deviation_value(from_small, g, 1, d)[from_small.structure().initial()];
      const double vb = best_deviation_value(from_big, g, 1, d)[from_big.structure().initial()];
      ASSERT_LE(vs, vb + 1e-9);
    }
  }
}

TEST(GoodMatch, NoVariationInsideTwoConstantMatches) {
  const SafetyAutomaton l = fixture::safety("always_agree");
  const Game g = fixture::prisoners_dilemma();
  for (const double d : {0.1, 0.5, 0.9})
    for (std::size_t player : {0u, 1u})
      for (const char* h : {"( c,c )", "( d,d )"}) {
        const auto v = is_good_match(pd(h), l, g, player, DiscountFactor(d));
        EXPECT_TRUE(v.good);
        EXPECT_FALSE(v.margin);
      }
}

TEST(GoodMatch, DefectUntilOpponentCooperates) {
  const SafetyAutomaton l = fixture::safety("defect_until_cooperation");
  const Game g = fixture::prisoners_dilemma();
  const LassoWord h = pd("d,c ( c,d )");
  EXPECT_TRUE(is_good_match(h, l, g, 1, DiscountFactor(0.3)).good);
  EXPECT_TRUE(is_good_match(h, l, g, 1, DiscountFactor(0.21)).good);
  EXPECT_FALSE(is_good_match(h, l, g, 1, DiscountFactor(0.19)).good);
  EXPECT_FALSE(is_good_match(h, l, g, 1, DiscountFactor(0.1)).good);
  EXPECT_TRUE(is_good_match(pd("( d,d )"), l, g, 1, DiscountFactor(0.1)).good);
  const auto edge = is_good_match(h, l, g, 1, DiscountFactor::parse("1/5"));
  EXPECT_TRUE(edge.good);
  EXPECT_TRUE(edge.boundary);
  // Position 0 trades (d,c) for (d,d); later positions trade (c,d) for (c,c).
  for (const double d : {0.21, 0.3, 0.5, 0.9}) {
    const DeviationAnalysis analysis(l, g, 1, DiscountFactor(d));
    const auto first = analysis.check_position(h, 0).margin(), later = analysis.check_position(h, 3).margin();
    ASSERT_TRUE(first && later);
    EXPECT_NEAR(*first, (5 * d - 1) * (1 - d), 1e-8);
    EXPECT_NEAR(*later, 1 - d, 1e-8);
    const auto v = is_good_match(h, l, g, 1, DiscountFactor(d));
    ASSERT_TRUE(v.margin);
    EXPECT_NEAR(*v.margin, std::min(*first, *later), 1e-12);
  }
  EXPECT_THROW(is_good_match(pd("( c,c )"), l, g, 1, DiscountFactor(0.5)), std::invalid_argument);
}

TEST(GoodMatch, GrimTriggerMarginScalesWithDeviationTime) {
  const auto family = equilibrium_family(fixture::vector("grim"));
  const Game g = fixture::prisoners_dilemma();
  const LassoWord h = pd("( c,c )");
  for (const double d : {0.25, 0.3, 0.6, 0.9}) {
    const DeviationAnalysis analysis(family.opponents[0], g, 0, DiscountFactor(d));
    for (std::size_t k = 0; k < 5; ++k) {
      const auto check = analysis.check_position(h, k);
      ASSERT_TRUE(check.margin());
      EXPECT_NEAR(std::pow(d, k) * *check.margin(), std::pow(d, k) * (4 * d - 1), 1e-9);
      // Against the explicit i-variation (c,c)^k (d,c) (d,d)^omega.
      std::string deviation;
      for (std::size_t j = 0; j < k; ++j) deviation += "c,c ";
      const double gap = discounted_payoff_value(g, d, h, 0) -
                         discounted_payoff_value(g, d, pd(deviation + "d,c ( d,d )"), 0);
      EXPECT_NEAR(std::pow(d, k) * *check.margin(), gap, 1e-9);
    }
  }
  const auto quarter = is_good_match(h, family.opponents[0], g, 0, DiscountFactor::parse("1/4"));
  EXPECT_TRUE(quarter.good);
  EXPECT_TRUE(quarter.boundary);
  for (const auto& p : quarter.positions) EXPECT_NEAR(*p.margin(), 0.0, 1e-9);
}

TEST(GoodMatchProperty, WitnessImprovesOnBadMatches) {
  gen::Rng rng(54);
  int bad = 0;
  for (int round = 0; round < 300; ++round) {
    const SafetyAutomaton y = gen::safety(rng, kPd, 4);
    if (y.is_empty()) continue;
    const auto candidates = enumerate_lassos(y, 4);
    if (candidates.empty()) continue;
    const LassoWord h = candidates[gen::uniform(rng, 0, candidates.size() - 1)];
    const Game g = gen::game(rng, kPd);
    const std::size_t player = gen::uniform(rng, 0, 1);
    const DiscountFactor d(0.2 + 0.6 * std::uniform_real_distribution<double>(0, 1)(rng));
    const DeviationAnalysis analysis(y, g, player, d);
    const auto verdict = analysis.check(h);
    if (verdict.good) continue;
    ++bad;
    const LassoWord witness = analysis.deviation_witness(h, verdict);
    ASSERT_TRUE(oracle::accepts(y, witness));
    ASSERT_TRUE(is_variation(h, witness, *verdict.worst_position, player));
    ASSERT_GT(discounted_payoff_value(g, d.value(), witness, player),
              discounted_payoff_value(g, d.value(), h, player));
  }
  EXPECT_GT(bad, 20);
}

TEST(Nash, GrimTrigger) {
  const ProductStrategyVector grim = fixture::vector("grim");
  const Game g = fixture::prisoners_dilemma();
  const auto yes = is_nash(grim, g, DiscountFactor(0.3));
  EXPECT_EQ(yes.outcome, NashOutcome::equilibrium);
  ASSERT_TRUE(yes.witness);
  EXPECT_TRUE(same_infinite_word(*yes.witness, pd("( c,c )")));

  NashOptions options;
  options.candidate = pd("( c,c )");
  const auto no = is_nash(grim, g, DiscountFactor(0.2), options);
  EXPECT_EQ(no.outcome, NashOutcome::not_equilibrium);
  // Evaluation stops at the first player for whom the match is not good.
  ASSERT_EQ(no.player_verdicts.size(), 1u);
  EXPECT_FALSE(no.player_verdicts[0].good);
  EXPECT_NEAR(*no.player_verdicts[0].margin, 4 * 0.2 - 1, 1e-9);

  EXPECT_EQ(is_nash(grim, g, DiscountFactor(0.2)).outcome, NashOutcome::inconclusive);
}

TEST(Nash, AlwaysDefect) {
  const ProductStrategyVector defect = fixture::vector("always_defect");
  const Game g = fixture::prisoners_dilemma();
  for (const double d : {0.1, 0.5, 0.9}) {
    const auto v = is_nash(defect, g, DiscountFactor(d));
    EXPECT_EQ(v.outcome, NashOutcome::equilibrium);
    ASSERT_TRUE(v.witness);
    EXPECT_TRUE(same_infinite_word(*v.witness, pd("( d,d )")));
    // Horizon-30 oracle: nothing in Y_1 beats staying on (d,d).
    const auto family = equilibrium_family(defect);
    const auto best = oracle::horizon_value(family.opponents[0], g, 0, d, 30);
    EXPECT_NEAR(best[family.opponents[0].structure().initial()], 1.0, std::pow(d, 30) * 5 / (1 - d) + 1e-9);
  }
}

TEST(Thresholds, NonMonotonePredicate) {
  const auto report = find_thresholds([](double d) { return d < 0.3 || d > 0.7; });
  ASSERT_EQ(report.crossings.size(), 2u);
  EXPECT_NEAR(report.crossings[0].estimate(), 0.3, 1e-6);
  EXPECT_FALSE(report.crossings[0].good_above);
  EXPECT_NEAR(report.crossings[1].estimate(), 0.7, 1e-6);
  EXPECT_TRUE(report.crossings[1].good_above);
  EXPECT_EQ(report.grid.size(), 63u);
}

TEST(Thresholds, GrimTrigger) {
  const auto report = nash_threshold(fixture::vector("grim"), fixture::prisoners_dilemma(), pd("( c,c )"));
  ASSERT_EQ(report.crossings.size(), 1u);
  EXPECT_NEAR(report.crossings[0].estimate(), 0.25, 1e-6);
  EXPECT_TRUE(report.crossings[0].good_above);
}

TEST(Thresholds, DefectUntilOpponentCooperates) {
  const auto report = good_match_threshold(fixture::safety("defect_until_cooperation"), fixture::prisoners_dilemma(), 1,
                                           pd("d,c ( c,d )"));
  ASSERT_EQ(report.crossings.size(), 1u);
  EXPECT_NEAR(report.crossings[0].estimate(), 0.2, 1e-6);
}

TEST(Thresholds, AlwaysDefectHasNoCrossing) {
  const auto report =
      nash_threshold(fixture::vector("always_defect"), fixture::prisoners_dilemma(), pd("( d,d )"));
  EXPECT_TRUE(report.crossings.empty());
  for (const auto& [d, ok] : report.grid) EXPECT_TRUE(ok) << d;
}
