#include "coordnet/network.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace coordnet {

int SimilarityNetwork::add_node(const std::string& user_id) {
  auto it = index_.find(user_id);
  if (it != index_.end()) return it->second;
  int idx = static_cast<int>(nodes_.size());
  nodes_.push_back(user_id);
  index_.emplace(user_id, idx);
  finalized_ = false;
  return idx;
}

void SimilarityNetwork::add_edge(const std::string& u, const std::string& v, double weight) {
  if (u == v) throw std::invalid_argument("self-loop on " + u);
  if (!(weight > 0.0) || weight > 1.0 + 1e-9)
    throw std::invalid_argument("edge weight must be in (0,1]: " + std::to_string(weight));
  int a = add_node(u);
  int b = add_node(v);
  edges_.push_back(Edge{std::min(a, b), std::max(a, b), std::min(weight, 1.0)});
  finalized_ = false;
}

void SimilarityNetwork::finalize() {
  // Re-sort nodes by id and remap edges so construction order is
  // irrelevant to the stored form.
  std::vector<int> order(nodes_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return nodes_[x] < nodes_[y]; });
  std::vector<int> rank(nodes_.size());
  std::vector<std::string> sorted_nodes(nodes_.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    rank[order[pos]] = static_cast<int>(pos);
    sorted_nodes[pos] = std::move(nodes_[order[pos]]);
  }
  nodes_ = std::move(sorted_nodes);
  index_.clear();
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    index_.emplace(nodes_[i], static_cast<int>(i));

  for (Edge& e : edges_) {
    int a = rank[e.a];
    int b = rank[e.b];
    e.a = std::min(a, b);
    e.b = std::max(a, b);
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& x, const Edge& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  });
  auto dup = std::adjacent_find(edges_.begin(), edges_.end(), [](const Edge& x, const Edge& y) {
    return x.a == y.a && x.b == y.b;
  });
  if (dup != edges_.end())
    throw std::logic_error("duplicate edge " + nodes_[dup->a] + "--" + nodes_[dup->b]);

  adjacency_.clear();
  finalized_ = true;
}

int SimilarityNetwork::node_index(const std::string& user_id) const {
  auto it = index_.find(user_id);
  return it == index_.end() ? -1 : it->second;
}

const std::vector<std::vector<std::pair<int, double>>>& SimilarityNetwork::adjacency() const {
  if (adjacency_.empty() && !nodes_.empty()) {
    adjacency_.resize(nodes_.size());
    for (const Edge& e : edges_) {
      adjacency_[e.a].emplace_back(e.b, e.weight);
      adjacency_[e.b].emplace_back(e.a, e.weight);
    }
    for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
  }
  return adjacency_;
}

double SimilarityNetwork::strength(int idx) const {
  double s = 0.0;
  for (const auto& [nbr, w] : adjacency()[idx]) s += w;
  return s;
}

bool SimilarityNetwork::adjacent(int u, int v) const {
  const auto& nbrs = adjacency()[u];
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), std::make_pair(v, 0.0),
                             [](const auto& a, const auto& b) { return a.first < b.first; });
  return it != nbrs.end() && it->first == v;
}

void SimilarityNetwork::write_edges(const std::string& edge_path,
                                    const std::string& node_path) const {
  std::ofstream edges(edge_path);
  if (!edges) throw std::runtime_error("cannot write " + edge_path);
  edges << "user_a,user_b,weight\n";
  char buf[32];
  for (const Edge& e : edges_) {
    std::snprintf(buf, sizeof buf, "%.6f", e.weight);
    edges << nodes_[e.a] << ',' << nodes_[e.b] << ',' << buf << '\n';
  }
  std::ofstream nodes(node_path);
  if (!nodes) throw std::runtime_error("cannot write " + node_path);
  nodes << "user_id\n";
  for (const std::string& n : nodes_) nodes << n << '\n';
}

SimilarityNetwork SimilarityNetwork::read_edges(const std::string& edge_path,
                                                const std::string& node_path,
                                                std::string kind) {
  SimilarityNetwork net(std::move(kind));
  std::ifstream nodes(node_path);
  if (!nodes) throw std::runtime_error("cannot open " + node_path);
  std::string line;
  std::getline(nodes, line);  // header
  while (std::getline(nodes, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) net.add_node(line);
  }
  std::ifstream edges(edge_path);
  if (!edges) throw std::runtime_error("cannot open " + edge_path);
  std::getline(edges, line);  // header
  while (std::getline(edges, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto c1 = line.find(',');
    auto c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw std::runtime_error("malformed edge line: " + line);
    net.add_edge(line.substr(0, c1), line.substr(c1 + 1, c2 - c1 - 1),
                 std::stod(line.substr(c2 + 1)));
  }
  net.finalize();
  return net;
}

std::size_t FusedNetwork::provenance_size(std::size_t edge_idx) const {
  return static_cast<std::size_t>(std::popcount(provenance[edge_idx]));
}

}  // namespace coordnet
