#pragma once

// Explicit-graph helpers shared by the automaton and strategy code.

#include <cstdint>
#include <optional>
#include <vector>

#include "stratlang/alphabet.hpp"
#include "stratlang/lasso.hpp"

namespace stratlang::detail {

struct Edge {
  Letter letter;
  std::uint32_t target;
};

/// A letter-labelled graph in which every node is reachable from `root`.
struct ExplicitGraph {
  std::vector<std::vector<Edge>> out;
  std::uint32_t root = 0;

  std::size_t size() const { return out.size(); }
};

/// Strongly connected components restricted to nodes with `member[v]` set.
/// Returns the component id per node (-1 for excluded nodes) and, per
/// component, whether it contains a cycle.
struct Components {
  std::vector<int> id;
  std::vector<bool> nontrivial;
};

Components strongly_connected(const ExplicitGraph& graph, const std::vector<bool>& member);

/// Searches for a lasso whose cycle stays inside `cycle_nodes` and visits a
/// node of `accepting`. The stem may pass through any node. The result is
/// normalized; nullopt when no such lasso exists.
std::optional<LassoWord> find_accepting_lasso(const ExplicitGraph& graph,
                                              const std::vector<bool>& cycle_nodes,
                                              const std::vector<bool>& accepting);

}  // namespace stratlang::detail
