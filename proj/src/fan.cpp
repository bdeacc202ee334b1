#include <algorithm>
#include <map>
#include <unordered_map>

#include "pbx/error.hpp"
#include "pbx/extremes.hpp"

namespace pbx {

std::vector<std::vector<std::size_t>> FanGraph::point_neighbors() const {
  std::vector<std::vector<std::size_t>> adj(points.size());
  for (const auto& [p, q] : quotient_edges) {
    adj[p].push_back(q);
    adj[q].push_back(p);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

std::vector<ExtremePoint> FanGraph::extremes() const {
  std::vector<std::vector<GeneratorSet>> witnesses(points.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) witnesses[point_of[i]].push_back(nodes[i]);
  std::vector<ExtremePoint> out;
  for (std::size_t p = 0; p < points.size(); ++p) out.push_back({points[p], std::move(witnesses[p])});
  return out;
}

FanGraph build_fan(const PBox& pbox, Exec exec) {
  const std::size_t n = pbox.size();
  FanGraph fan;
  fan.nodes = n <= kMaxStructuralDomain ? feasible_mescs(pbox, exec) : bfs_mescs(pbox, exec);

  std::map<StepCDF, std::size_t> point_index;
  std::vector<StepCDF> node_cdf;
  for (const auto& g : fan.nodes) {
    node_cdf.push_back(*realize(g, pbox));
    point_index.emplace(node_cdf.back(), 0);
  }
  for (auto& [f, idx] : point_index) {
    idx = fan.points.size();
    fan.points.push_back(f);
  }
  for (const auto& f : node_cdf) fan.point_of.push_back(point_index.at(f));

  std::unordered_map<GeneratorSet, std::size_t> node_index;
  for (std::size_t i = 0; i < fan.nodes.size(); ++i) node_index.emplace(fan.nodes[i], i);

  // Every swap partner of a node is found by replacing one member with any
  // constraint set; the sign test then decides whether they share a facet.
  const auto candidates = constraint_generators(n);
  std::vector<std::vector<FanEdge>> found(fan.nodes.size());
  const auto scan = [&](std::size_t i) {
    const GeneratorSet& g = fan.nodes[i];
    for (const Generator& out : g.members()) {
      if (is_omega(n, out)) continue;
      for (const Generator& in : candidates) {
        if (g.contains(in)) continue;
        const auto it = node_index.find(g.replaced(out, in));
        if (it == node_index.end() || it->second <= i) continue;
        if (!adjacency_sign_test(g, fan.nodes[it->second])) continue;
        found[i].push_back({i, it->second, out, in, fan.point_of[i] == fan.point_of[it->second]});
      }
    }
  };
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (std::size_t i = 0; i < fan.nodes.size(); ++i) scan(i);
  } else {
    for (std::size_t i = 0; i < fan.nodes.size(); ++i) scan(i);
  }

  for (auto& edges : found) fan.edges.insert(fan.edges.end(), edges.begin(), edges.end());
  std::sort(fan.edges.begin(), fan.edges.end(),
            [](const FanEdge& a, const FanEdge& b) { return std::pair(a.from, a.to) < std::pair(b.from, b.to); });
  for (const auto& e : fan.edges) {
    if (e.same_point) continue;
    const std::size_t p = fan.point_of[e.from];
    const std::size_t q = fan.point_of[e.to];
    fan.quotient_edges.emplace_back(std::min(p, q), std::max(p, q));
  }
  std::sort(fan.quotient_edges.begin(), fan.quotient_edges.end());
  fan.quotient_edges.erase(std::unique(fan.quotient_edges.begin(), fan.quotient_edges.end()), fan.quotient_edges.end());
  return fan;
}

WalkResult argmin_walk(const Gamble& h, const FanGraph& fan, const GeneratorSet& start) {
  const auto it = std::find(fan.nodes.begin(), fan.nodes.end(), start);
  if (it == fan.nodes.end()) {
    throw Error(ErrorCode::InfeasibleStart, start.str() + " is not a feasible MESC of this p-box");
  }
  const auto adj = fan.point_neighbors();
  std::size_t current = fan.point_of[static_cast<std::size_t>(it - fan.nodes.begin())];
  Rational value = expectation(fan.points[current], h);
  std::size_t steps = 0;
  for (;;) {
    std::optional<std::size_t> best;
    Rational best_value;
    // Neighbors are in increasing F order, so strict < keeps the smallest F on ties.
    for (std::size_t q : adj[current]) {
      Rational v = expectation(fan.points[q], h);
      if (!best || v < best_value) {
        best = q;
        best_value = std::move(v);
      }
    }
    if (!best || !(best_value < value)) break;
    current = *best;
    value = best_value;
    ++steps;
  }
  std::vector<GeneratorSet> witnesses;
  for (std::size_t i = 0; i < fan.nodes.size(); ++i) {
    if (fan.point_of[i] == current) witnesses.push_back(fan.nodes[i]);
  }
  return {{fan.points[current], std::move(witnesses)}, value, steps};
}

WalkResult argmin_walk(const Gamble& h, const PBox& pbox, const GeneratorSet& start) {
  require_same_domain(h.domain(), pbox.domain(), "argmin_walk");
  if (start.domain_size() != pbox.size()) {
    throw Error(ErrorCode::InfeasibleStart, "start family is on a different domain");
  }
  return argmin_walk(h, build_fan(pbox), start);
}

}  // namespace pbx
