#include "coordnet/detect.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace coordnet::detect {

double percentile(std::vector<double> values, double p) {
  if (values.empty()) throw std::invalid_argument("percentile of empty set");
  if (p < 0.0 || p > 100.0) throw std::invalid_argument("percentile must be in [0,100]");
  std::sort(values.begin(), values.end());
  if (values.size() == 1) return values[0];
  double rank = p / 100.0 * static_cast<double>(values.size() - 1);
  std::size_t lo = static_cast<std::size_t>(rank);
  if (lo + 1 >= values.size()) return values.back();
  double frac = rank - static_cast<double>(lo);
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

DetectionResult edge_filter(const SimilarityNetwork& net, double pct) {
  DetectionResult result;
  result.method = "edge-filter";
  result.params["percentile"] = pct;
  if (net.empty()) return result;

  std::vector<double> weights;
  weights.reserve(net.edge_count());
  for (const auto& e : net.edges()) weights.push_back(e.weight);

  for (const std::string& user : net.nodes()) result.score[user] = 0.0;
  for (const auto& e : net.edges()) {
    result.score[net.node_name(e.a)] = std::max(result.score[net.node_name(e.a)], e.weight);
    result.score[net.node_name(e.b)] = std::max(result.score[net.node_name(e.b)], e.weight);
  }

  if (weights.empty()) return result;
  double threshold = percentile(std::move(weights), pct);
  result.params["threshold"] = threshold;
  for (const auto& e : net.edges()) {
    if (e.weight >= threshold) {  // ties at the threshold survive
      result.flagged.insert(net.node_name(e.a));
      result.flagged.insert(net.node_name(e.b));
    }
  }
  return result;
}

CentralityScores eigenvector_centrality(const SimilarityNetwork& net, bool use_weights,
                                        double tol, int max_iter) {
  if (net.empty()) throw std::invalid_argument("centrality of empty network");

  const auto& adj = net.adjacency();
  const std::size_t n = net.node_count();
  std::vector<double> x(n, 1.0), next(n, 0.0);

  CentralityScores out;
  out.converged = false;
  for (int iter = 1; iter <= max_iter; ++iter) {
    // next = (A + I) x: the shift keeps the dominant eigenvector of A
    // while giving bipartite components a convergent iteration.
    for (std::size_t u = 0; u < n; ++u) {
      double sum = x[u];
      for (const auto& [v, w] : adj[u]) sum += use_weights ? w * x[v] : x[v];
      next[u] = sum;
    }
    double max_val = 0.0;
    for (double v : next) max_val = std::max(max_val, v);
    if (max_val > 0.0)
      for (double& v : next) v /= max_val;
    double delta = 0.0;
    for (std::size_t u = 0; u < n; ++u) delta = std::max(delta, std::abs(next[u] - x[u]));
    x.swap(next);
    out.iterations = iter;
    if (delta < tol) {
      out.converged = true;
      break;
    }
  }

  double max_val = 0.0;
  for (double v : x) max_val = std::max(max_val, v);
  for (std::size_t u = 0; u < n; ++u) {
    double score = max_val > 0.0 ? x[u] / max_val : 0.0;
    if (adj[u].empty()) score = 0.0;  // isolated nodes score 0 by convention
    out.scores.emplace(net.node_name(u), score);
  }
  return out;
}

DetectionResult node_prune(const CentralityScores& centrality, double threshold) {
  DetectionResult result;
  result.method = "node-prune";
  result.params["centrality_threshold"] = threshold;
  result.warning = !centrality.converged;
  for (const auto& [user, score] : centrality.scores) {
    result.score[user] = score;
    if (score >= threshold) result.flagged.insert(user);
  }
  return result;
}

DetectionResult node_prune(const SimilarityNetwork& net, double centrality_threshold,
                           bool use_weights) {
  if (net.empty()) {
    DetectionResult result;
    result.method = "node-prune";
    result.params["centrality_threshold"] = centrality_threshold;
    return result;
  }
  return node_prune(eigenvector_centrality(net, use_weights), centrality_threshold);
}

FusedNetwork fuse(const std::vector<SimilarityNetwork>& nets) {
  if (nets.empty()) throw std::invalid_argument("fuse requires at least one network");
  if (nets.size() > 32) throw std::invalid_argument("fuse supports up to 32 networks");

  FusedNetwork fused;
  fused.net.set_kind("fused");
  for (const auto& net : nets) fused.input_kinds.push_back(net.kind());

  std::map<std::pair<std::string, std::string>, std::uint32_t> edge_mask;
  for (std::size_t k = 0; k < nets.size(); ++k) {
    for (const std::string& user : nets[k].nodes()) fused.net.add_node(user);
    for (const auto& e : nets[k].edges()) {
      std::string a = nets[k].node_name(e.a);
      std::string b = nets[k].node_name(e.b);
      if (b < a) std::swap(a, b);
      edge_mask[{std::move(a), std::move(b)}] |= (1u << k);
    }
  }
  for (const auto& [key, mask] : edge_mask) fused.net.add_edge(key.first, key.second, 1.0);
  fused.net.finalize();

  // finalize() sorts edges by node index; rebuild provenance aligned
  // with the final order.
  fused.provenance.resize(fused.net.edge_count());
  for (std::size_t i = 0; i < fused.net.edge_count(); ++i) {
    const auto& e = fused.net.edges()[i];
    std::string a = fused.net.node_name(e.a);
    std::string b = fused.net.node_name(e.b);
    fused.provenance[i] = edge_mask.at({std::min(a, b), std::max(a, b)});
  }
  return fused;
}

DetectionResult backbone_filter(const SimilarityNetwork& net, double alpha) {
  if (!(alpha > 0.0) || alpha >= 1.0)
    throw std::invalid_argument("alpha must be in (0,1)");
  DetectionResult result;
  result.method = "backbone";
  result.params["alpha"] = alpha;
  if (net.empty()) return result;

  const auto& adj = net.adjacency();
  std::vector<double> strength(net.node_count());
  for (std::size_t u = 0; u < net.node_count(); ++u) strength[u] = net.strength(u);

  for (const std::string& user : net.nodes()) result.score[user] = 0.0;

  auto endpoint_pvalue = [&](int u, double w) {
    std::size_t k = adj[u].size();
    if (k <= 1) return 1.0;  // degree-1 endpoints are never surprising
    double p = w / strength[u];
    return std::pow(1.0 - p, static_cast<double>(k - 1));
  };

  for (const auto& e : net.edges()) {
    double pa = endpoint_pvalue(e.a, e.weight);
    double pb = endpoint_pvalue(e.b, e.weight);
    double best = std::min(pa, pb);
    auto& sa = result.score[net.node_name(e.a)];
    auto& sb = result.score[net.node_name(e.b)];
    sa = std::max(sa, 1.0 - best);
    sb = std::max(sb, 1.0 - best);
    if (best < alpha) {
      result.flagged.insert(net.node_name(e.a));
      result.flagged.insert(net.node_name(e.b));
    }
  }
  return result;
}

std::map<std::string, double> degree_centrality(const SimilarityNetwork& net) {
  std::map<std::string, double> out;
  const auto& adj = net.adjacency();
  double denom = net.node_count() > 1 ? static_cast<double>(net.node_count() - 1) : 1.0;
  for (std::size_t u = 0; u < net.node_count(); ++u)
    out.emplace(net.node_name(u), static_cast<double>(adj[u].size()) / denom);
  return out;
}

}  // namespace coordnet::detect
