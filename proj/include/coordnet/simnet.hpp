#pragma once

#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "coordnet/network.hpp"
#include "coordnet/traces.hpp"
#include "coordnet/types.hpp"

namespace coordnet::simnet {

// Sparse vector as sorted (index, value) pairs.
using SparseVec = std::vector<std::pair<int, double>>;

double sparse_dot(const SparseVec& a, const SparseVec& b);
double sparse_norm(const SparseVec& a);

// User-entity bipartite graph with raw occurrence counts.
struct BipartiteGraph {
  std::vector<std::string> users;     // row order
  std::vector<std::string> entities;  // column order
  std::vector<SparseVec> rows;        // per user: (entity column, count)

  std::size_t user_count() const { return users.size(); }
  std::size_t entity_count() const { return entities.size(); }
  bool empty() const { return users.empty(); }
};

// TF-IDF weighted user rows; all-zero users are dropped.
struct UserVectors {
  std::vector<std::string> users;
  std::vector<SparseVec> rows;

  bool empty() const { return users.empty(); }
};

BipartiteGraph build_bipartite(const std::vector<TraceEvent>& events);

// tf = raw count, idf(e) = ln(N / df(e)); entities shared by every user
// vanish, and users left with empty vectors are dropped.
UserVectors tfidf_transform(const BipartiteGraph& g);

// Cosine projection via inverted-index candidate generation. Output is
// exactly the positive-cosine pairs brute force would produce.
SimilarityNetwork cosine_project(const UserVectors& v, const std::string& kind = "");

// Convenience: events -> bipartite -> tfidf -> cosine network.
SimilarityNetwork build_trace_network(const std::vector<TraceEvent>& events,
                                      TraceKind kind);

// -- text similarity ----------------------------------------------------

class DocumentEmbedder {
 public:
  virtual ~DocumentEmbedder() = default;
  // One L2-normalized vector per document, keyed by tweet_id.
  virtual std::unordered_map<std::string, SparseVec> embed(
      const traces::DocumentSet& docs) const = 0;
};

// Default embedder: TF-IDF over word unigrams + bigrams hashed to a
// fixed dimension. Smoothed idf (ln((1+n)/(1+df)) + 1) so duplicated
// documents keep a nonzero vector.
class HashedTfidfEmbedder : public DocumentEmbedder {
 public:
  explicit HashedTfidfEmbedder(int dim = 4096) : dim_(dim) {}
  std::unordered_map<std::string, SparseVec> embed(
      const traces::DocumentSet& docs) const override;

 private:
  int dim_;
};

// Loads vectors produced by an external encoder: one line per document,
// tweet_id followed by whitespace-separated components. Every document
// in the set must be covered.
class PrecomputedEmbedder : public DocumentEmbedder {
 public:
  explicit PrecomputedEmbedder(std::string path) : path_(std::move(path)) {}
  std::unordered_map<std::string, SparseVec> embed(
      const traces::DocumentSet& docs) const override;

 private:
  std::string path_;
};

std::unordered_map<std::string, SparseVec> embed_documents(
    const traces::DocumentSet& docs, const DocumentEmbedder& embedder);

// Connects users posting at least one pair of similar documents within
// the sliding window; edge weight is the mean cosine over their similar
// pairs. Equivalent to brute-force all-pairs within the window.
SimilarityNetwork text_similarity_network(
    const traces::DocumentSet& docs,
    const std::unordered_map<std::string, SparseVec>& vectors,
    double sim_threshold = 0.7, int window_days = 365);

}  // namespace coordnet::simnet
