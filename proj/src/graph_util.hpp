#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace limem::detail {

struct SccResult {
  std::vector<int> component;       // -1 for nodes outside the mask
  std::vector<char> nontrivial;     // per component: has an internal edge
};

/// Iterative Tarjan over the subgraph induced by `mask`. Succ lists hold
/// target node ids via the projection `target_of`.
template <typename Succ, typename TargetOf>
SccResult strongly_connected(const Succ& succ, const std::vector<char>& mask, TargetOf target_of) {
  const std::size_t n = succ.size();
  SccResult r;
  r.component.assign(n, -1);
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<std::uint32_t> stack;
  struct Frame {
    std::uint32_t node;
    std::size_t next;
  };
  std::vector<Frame> call;
  int counter = 0;
  int comps = 0;
  for (std::uint32_t root = 0; root < n; ++root) {
    if (!mask[root] || index[root] >= 0) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& fr = call.back();
      const std::uint32_t v = fr.node;
      if (fr.next < succ[v].size()) {
        const std::uint32_t w = target_of(succ[v][fr.next++]);
        if (!mask[w]) continue;
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          r.component[w] = comps;
        } while (w != v);
        ++comps;
      }
      call.pop_back();
      if (!call.empty()) {
        const std::uint32_t parent = call.back().node;
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  }
  r.nontrivial.assign(comps, 0);
  for (std::uint32_t v = 0; v < n; ++v) {
    if (r.component[v] < 0) continue;
    for (const auto& e : succ[v]) {
      const std::uint32_t w = target_of(e);
      if (mask[w] && r.component[w] == r.component[v]) r.nontrivial[r.component[v]] = 1;
    }
  }
  return r;
}

}  // namespace limem::detail
