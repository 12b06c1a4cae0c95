#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "coordnet/types.hpp"

namespace coordnet {

// Weighted undirected user-user graph. Nodes are kept sorted by id and
// edges sorted by (a, b) with a < b, so identical inputs always produce
// byte-identical exports.
class SimilarityNetwork {
 public:
  struct Edge {
    int a = 0;
    int b = 0;
    double weight = 0.0;
  };

  SimilarityNetwork() = default;
  explicit SimilarityNetwork(std::string kind) : kind_(std::move(kind)) {}

  // Builder interface: add nodes/edges in any order, then finalize().
  int add_node(const std::string& user_id);
  void add_edge(const std::string& u, const std::string& v, double weight);
  void finalize();

  const std::string& kind() const { return kind_; }
  void set_kind(std::string kind) { kind_ = std::move(kind); }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return nodes_.empty(); }

  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& node_name(int idx) const { return nodes_[idx]; }
  int node_index(const std::string& user_id) const;  // -1 when absent
  bool has_node(const std::string& user_id) const { return node_index(user_id) >= 0; }

  // Adjacency lists (neighbor, weight), neighbors sorted by index.
  const std::vector<std::vector<std::pair<int, double>>>& adjacency() const;
  std::size_t degree(int idx) const { return adjacency()[idx].size(); }
  double strength(int idx) const;
  bool adjacent(int u, int v) const;

  // Edge list export: user_a,user_b,weight (6 decimals) plus a node
  // list file so isolated nodes survive a round trip.
  void write_edges(const std::string& edge_path, const std::string& node_path) const;
  static SimilarityNetwork read_edges(const std::string& edge_path,
                                      const std::string& node_path,
                                      std::string kind = "");

 private:
  std::string kind_;
  std::vector<std::string> nodes_;
  std::unordered_map<std::string, int> index_;
  std::vector<Edge> edges_;
  bool finalized_ = false;
  mutable std::vector<std::vector<std::pair<int, double>>> adjacency_;
};

// Union-of-edges combination of several similarity networks. Edge
// weights are 1; provenance records which traces contributed each edge.
struct FusedNetwork {
  SimilarityNetwork net;
  // Aligned with net.edges(): bitmask over input network positions.
  std::vector<std::uint32_t> provenance;
  std::vector<std::string> input_kinds;

  std::size_t provenance_size(std::size_t edge_idx) const;
};

}  // namespace coordnet
