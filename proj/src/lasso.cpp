#include "stratlang/lasso.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace stratlang {

LassoWord make_lasso(Word stem, Word cycle) {
  if (cycle.empty()) throw std::invalid_argument("lasso cycle must be nonempty");
  return LassoWord{std::move(stem), std::move(cycle)};
}

std::size_t lasso_phase(const LassoWord& word, std::size_t t) {
  const std::size_t u = word.stem.size();
  if (t < u) return t;
  return u + (t - u) % word.cycle.size();
}

Letter letter_at(const LassoWord& word, std::size_t t) {
  const std::size_t phase = lasso_phase(word, t);
  return phase < word.stem.size() ? word.stem[phase] : word.cycle[phase - word.stem.size()];
}

Word prefix(const LassoWord& word, std::size_t k) {
  Word out;
  out.reserve(k);
  for (std::size_t t = 0; t < k; ++t) out.push_back(letter_at(word, t));
  return out;
}

LassoWord suffix(const LassoWord& word, std::size_t t) {
  const std::size_t u = word.stem.size();
  if (t <= u) {
    return LassoWord{Word(word.stem.begin() + static_cast<std::ptrdiff_t>(t), word.stem.end()),
                     word.cycle};
  }
  const std::size_t shift = (t - u) % word.cycle.size();
  Word cycle(word.cycle.size());
  std::rotate_copy(word.cycle.begin(), word.cycle.begin() + static_cast<std::ptrdiff_t>(shift),
                   word.cycle.end(), cycle.begin());
  return LassoWord{{}, std::move(cycle)};
}

LassoWord normalize_lasso(LassoWord word) {
  if (word.cycle.empty()) throw std::invalid_argument("lasso cycle must be nonempty");
  auto& cycle = word.cycle;
  const std::size_t n = cycle.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = cycle[i] == cycle[i - p];
    if (periodic) {
      cycle.resize(p);
      break;
    }
  }
  while (!word.stem.empty() && word.stem.back() == cycle.back()) {
    word.stem.pop_back();
    std::rotate(cycle.rbegin(), cycle.rbegin() + 1, cycle.rend());
  }
  return word;
}

std::optional<std::size_t> common_prefix_length(const LassoWord& x, const LassoWord& y) {
  // Past this bound the pair of lasso positions repeats, so agreement is permanent.
  const std::size_t bound = std::max(x.stem.size(), y.stem.size()) +
                            std::lcm(x.cycle.size(), y.cycle.size());
  for (std::size_t t = 0; t < bound; ++t)
    if (letter_at(x, t) != letter_at(y, t)) return t;
  return std::nullopt;
}

bool same_infinite_word(const LassoWord& x, const LassoWord& y) {
  return !common_prefix_length(x, y).has_value();
}

Distance metric_distance(const LassoWord& x, const LassoWord& y) {
  const auto m = common_prefix_length(x, y);
  if (!m) return Distance{0, 1};
  return Distance{1, static_cast<std::uint64_t>(*m) + 1};
}

}  // namespace stratlang
