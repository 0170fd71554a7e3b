#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "stratlang/alphabet.hpp"

namespace stratlang {

/// An ultimately periodic infinite word stem . cycle^omega.
struct LassoWord {
  Word stem;
  Word cycle;  // never empty

  friend bool operator==(const LassoWord&, const LassoWord&) = default;
  friend auto operator<=>(const LassoWord&, const LassoWord&) = default;
};

/// Builds a lasso, rejecting an empty cycle with std::invalid_argument.
LassoWord make_lasso(Word stem, Word cycle);

/// h_t, the letter at position t.
Letter letter_at(const LassoWord& word, std::size_t t);

/// h_0 ... h_{k-1}.
Word prefix(const LassoWord& word, std::size_t k);

/// The suffix h_t h_{t+1} ... as a lasso.
LassoWord suffix(const LassoWord& word, std::size_t t);

/// Position of h_t inside the lasso representation: t itself inside the stem,
/// |stem| + (t - |stem|) mod |cycle| afterwards.
std::size_t lasso_phase(const LassoWord& word, std::size_t t);

/// Canonical representative: primitive cycle, and no stem letter that can be
/// absorbed into the cycle by rotation.
LassoWord normalize_lasso(LassoWord word);

/// Length of the longest common prefix, or nullopt when x and y denote the
/// same infinite word.
std::optional<std::size_t> common_prefix_length(const LassoWord& x, const LassoWord& y);

bool same_infinite_word(const LassoWord& x, const LassoWord& y);

/// An exact nonnegative rational, used for prefix-metric distances.
struct Distance {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;

  double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }

  friend bool operator==(const Distance& a, const Distance& b) {
    return static_cast<unsigned __int128>(a.numerator) * b.denominator ==
           static_cast<unsigned __int128>(b.numerator) * a.denominator;
  }
  friend std::strong_ordering operator<=>(const Distance& a, const Distance& b) {
    return static_cast<unsigned __int128>(a.numerator) * b.denominator <=>
           static_cast<unsigned __int128>(b.numerator) * a.denominator;
  }
};

/// d(x, y) = 1 / (1 + longest common prefix length), and 0 when x = y.
Distance metric_distance(const LassoWord& x, const LassoWord& y);

}  // namespace stratlang
