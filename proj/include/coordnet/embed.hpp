#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coordnet/network.hpp"

namespace coordnet::embed {

// Random-walk corpus over network node indices. Walks hold at most
// walk_len nodes; consecutive nodes are always adjacent.
struct WalkCorpus {
  std::vector<std::string> node_names;  // network node order
  std::vector<std::vector<int>> walks;
};

struct WalkParams {
  int walks_per_node = 16;
  int walk_len = 16;
  double p = 1.0;  // return parameter
  double q = 1.0;  // in-out parameter
  bool use_weights = false;
  std::uint64_t seed = 1;
};

// Second-order biased walks. Each (start node, walk index) derives its
// own RNG stream from the seed, so output is identical however the
// start nodes are scheduled.
WalkCorpus generate_walks(const SimilarityNetwork& net, const WalkParams& params);

struct EmbeddingMatrix {
  std::vector<std::string> users;
  int dim = 0;
  std::vector<float> values;  // row-major, users.size() x dim

  const float* row(std::size_t i) const { return values.data() + i * dim; }
  int index_of(const std::string& user) const;  // -1 when absent

  void save(const std::string& path) const;
  static EmbeddingMatrix load(const std::string& path);
};

struct SgnsParams {
  int dim = 128;
  int window = 5;
  int negatives = 5;
  int epochs = 5;
  double learning_rate = 0.025;  // linearly decayed
  std::uint64_t seed = 1;
};

struct TrainStats {
  std::vector<double> epoch_loss;  // mean negative-sampling loss per epoch
};

// Skip-gram with negative sampling over walk windows. Single-threaded
// and bit-reproducible for a fixed seed.
EmbeddingMatrix train_embeddings(const WalkCorpus& walks, const SgnsParams& params,
                                 TrainStats* stats = nullptr);

double cosine(const float* a, const float* b, int dim);

}  // namespace coordnet::embed
