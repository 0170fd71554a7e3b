#include "graph_search.hpp"

#include <algorithm>
#include <deque>

namespace stratlang::detail {

Components strongly_connected(const ExplicitGraph& graph, const std::vector<bool>& member) {
  const std::size_t n = graph.size();
  Components result;
  result.id.assign(n, -1);

  // Iterative Tarjan.
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::uint32_t> stack;
  struct Frame {
    std::uint32_t node;
    std::size_t next_edge;
  };
  std::vector<Frame> call;
  int counter = 0;

  for (std::uint32_t start = 0; start < n; ++start) {
    if (!member[start] || index[start] != -1) continue;
    call.push_back({start, 0});
    index[start] = low[start] = counter++;
    stack.push_back(start);
    on_stack[start] = true;

    while (!call.empty()) {
      Frame& frame = call.back();
      const std::uint32_t v = frame.node;
      const auto& edges = graph.out[v];
      if (frame.next_edge < edges.size()) {
        const std::uint32_t w = edges[frame.next_edge++].target;
        if (!member[w]) continue;
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        const int comp = static_cast<int>(result.nontrivial.size());
        std::size_t comp_size = 0;
        while (true) {
          const std::uint32_t w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          result.id[w] = comp;
          ++comp_size;
          if (w == v) break;
        }
        bool cyclic = comp_size > 1;
        if (!cyclic)
          for (const auto& e : edges) cyclic = cyclic || e.target == v;
        result.nontrivial.push_back(cyclic);
      }
      call.pop_back();
      if (!call.empty()) {
        const std::uint32_t parent = call.back().node;
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  }
  return result;
}

std::optional<LassoWord> find_accepting_lasso(const ExplicitGraph& graph,
                                              const std::vector<bool>& cycle_nodes,
                                              const std::vector<bool>& accepting) {
  const std::size_t n = graph.size();
  if (n == 0) return std::nullopt;
  const Components comps = strongly_connected(graph, cycle_nodes);

  // BFS from the root gives shortest stems; take the first suitable node in BFS order.
  std::vector<std::int64_t> parent(n, -2);
  std::vector<Letter> via(n, 0);
  std::deque<std::uint32_t> queue{graph.root};
  parent[graph.root] = -1;
  std::optional<std::uint32_t> target;
  while (!queue.empty()) {
    const std::uint32_t v = queue.front();
    queue.pop_front();
    if (cycle_nodes[v] && accepting[v] && comps.nontrivial[static_cast<std::size_t>(comps.id[v])]) {
      target = v;
      break;
    }
    for (const auto& e : graph.out[v]) {
      if (parent[e.target] != -2) continue;
      parent[e.target] = v;
      via[e.target] = e.letter;
      queue.push_back(e.target);
    }
  }
  if (!target) return std::nullopt;

  Word stem;
  for (std::uint32_t v = *target; parent[v] != -1; v = static_cast<std::uint32_t>(parent[v]))
    stem.push_back(via[v]);
  std::reverse(stem.begin(), stem.end());

  // Shortest cycle through the target inside its component.
  const int comp = comps.id[*target];
  std::vector<std::int64_t> cparent(n, -2);
  std::vector<Letter> cvia(n, 0);
  std::deque<std::uint32_t> cqueue;
  bool closed = false;
  for (const auto& e : graph.out[*target]) {
    if (comps.id[e.target] != comp) continue;
    if (e.target == *target) {
      return normalize_lasso(LassoWord{std::move(stem), Word{e.letter}});
    }
    if (cparent[e.target] != -2) continue;
    cparent[e.target] = *target;
    cvia[e.target] = e.letter;
    cqueue.push_back(e.target);
  }
  std::uint32_t last = *target;
  Letter closing = 0;
  while (!cqueue.empty() && !closed) {
    const std::uint32_t v = cqueue.front();
    cqueue.pop_front();
    for (const auto& e : graph.out[v]) {
      if (comps.id[e.target] != comp) continue;
      if (e.target == *target) {
        last = v;
        closing = e.letter;
        closed = true;
        break;
      }
      if (cparent[e.target] != -2) continue;
      cparent[e.target] = v;
      cvia[e.target] = e.letter;
      cqueue.push_back(e.target);
    }
  }
  Word cycle{closing};
  for (std::uint32_t v = last; v != *target; v = static_cast<std::uint32_t>(cparent[v]))
    cycle.push_back(cvia[v]);
  std::reverse(cycle.begin(), cycle.end());
  return normalize_lasso(LassoWord{std::move(stem), std::move(cycle)});
}

}  // namespace stratlang::detail
