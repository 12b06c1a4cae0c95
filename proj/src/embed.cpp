#include "coordnet/embed.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "coordnet/rng.hpp"

namespace coordnet::embed {

WalkCorpus generate_walks(const SimilarityNetwork& net, const WalkParams& params) {
  if (params.walks_per_node < 1 || params.walk_len < 1)
    throw std::invalid_argument("walks_per_node and walk_len must be >= 1");
  if (!(params.p > 0.0) || !(params.q > 0.0))
    throw std::invalid_argument("p and q must be positive");

  WalkCorpus corpus;
  corpus.node_names = net.nodes();
  const auto& adj = net.adjacency();
  const int n = static_cast<int>(net.node_count());

  corpus.walks.reserve(static_cast<std::size_t>(n) * params.walks_per_node);
  std::vector<double> cumulative;
  for (int start = 0; start < n; ++start) {
    for (int w = 0; w < params.walks_per_node; ++w) {
      Rng rng(mix_seed(params.seed, static_cast<std::uint64_t>(start),
                       static_cast<std::uint64_t>(w)));
      std::vector<int> walk;
      walk.reserve(params.walk_len);
      walk.push_back(start);
      int prev = -1;
      while (static_cast<int>(walk.size()) < params.walk_len) {
        int cur = walk.back();
        const auto& nbrs = adj[cur];
        if (nbrs.empty()) break;

        int next;
        if (prev < 0) {
          if (!params.use_weights) {
            next = nbrs[rng.uniform(nbrs.size())].first;
          } else {
            cumulative.clear();
            double total = 0.0;
            for (const auto& [v, wt] : nbrs) cumulative.push_back(total += wt);
            double u = rng.uniform_real() * total;
            std::size_t k = std::upper_bound(cumulative.begin(), cumulative.end(), u) -
                            cumulative.begin();
            next = nbrs[std::min(k, nbrs.size() - 1)].first;
          }
        } else {
          // node2vec bias: back to prev 1/p, to prev's neighborhood 1,
          // outward 1/q.
          cumulative.clear();
          double total = 0.0;
          for (const auto& [v, wt] : nbrs) {
            double bias;
            if (v == prev) bias = 1.0 / params.p;
            else if (net.adjacent(v, prev)) bias = 1.0;
            else bias = 1.0 / params.q;
            if (params.use_weights) bias *= wt;
            cumulative.push_back(total += bias);
          }
          double u = rng.uniform_real() * total;
          std::size_t k = std::upper_bound(cumulative.begin(), cumulative.end(), u) -
                          cumulative.begin();
          next = nbrs[std::min(k, nbrs.size() - 1)].first;
        }
        prev = cur;
        walk.push_back(next);
      }
      corpus.walks.push_back(std::move(walk));
    }
  }
  return corpus;
}

int EmbeddingMatrix::index_of(const std::string& user) const {
  auto it = std::lower_bound(users.begin(), users.end(), user);
  if (it != users.end() && *it == user) return static_cast<int>(it - users.begin());
  // Rows follow network node order, which is sorted, but stay robust to
  // externally loaded files.
  for (std::size_t i = 0; i < users.size(); ++i)
    if (users[i] == user) return static_cast<int>(i);
  return -1;
}

void EmbeddingMatrix::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write embedding file: " + path);
  out << "user_id,dim=" << dim << '\n';
  char buf[32];
  for (std::size_t i = 0; i < users.size(); ++i) {
    out << users[i];
    const float* r = row(i);
    for (int d = 0; d < dim; ++d) {
      std::snprintf(buf, sizeof buf, "%.6f", static_cast<double>(r[d]));
      out << ',' << buf;
    }
    out << '\n';
  }
}

EmbeddingMatrix EmbeddingMatrix::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open embedding file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty embedding file: " + path);
  auto eq = line.find("dim=");
  if (eq == std::string::npos) throw std::runtime_error("missing dim header in " + path);
  EmbeddingMatrix m;
  m.dim = std::stoi(line.substr(eq + 4));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string id, cell;
    std::getline(fields, id, ',');
    m.users.push_back(id);
    int d = 0;
    while (std::getline(fields, cell, ',')) {
      m.values.push_back(std::stof(cell));
      ++d;
    }
    if (d != m.dim) throw std::runtime_error("row width mismatch in " + path);
  }
  return m;
}

namespace {

inline float sigmoid(float x) {
  if (x > 8.0f) return 1.0f;
  if (x < -8.0f) return 0.0f;
  return 1.0f / (1.0f + std::exp(-x));
}

}  // namespace

EmbeddingMatrix train_embeddings(const WalkCorpus& walks, const SgnsParams& params,
                                 TrainStats* stats) {
  if (walks.walks.empty()) throw std::invalid_argument("walk corpus is empty");
  const int n = static_cast<int>(walks.node_names.size());
  const int dim = params.dim;

  // Vocabulary == walk nodes; every start node emits a walk, so this is
  // exactly the network node set.
  std::vector<std::int64_t> freq(n, 0);
  std::int64_t total_tokens = 0;
  for (const auto& walk : walks.walks) {
    for (int node : walk) ++freq[node];
    total_tokens += static_cast<std::int64_t>(walk.size());
  }

  // Negative-sampling table: unigram frequency ^ 0.75.
  std::vector<double> neg_cumulative(n);
  double total_mass = 0.0;
  for (int i = 0; i < n; ++i) {
    total_mass += std::pow(static_cast<double>(freq[i]), 0.75);
    neg_cumulative[i] = total_mass;
  }

  Rng rng(mix_seed(params.seed, 0x53474E53ull));  // "SGNS"
  auto sample_negative = [&]() {
    double u = rng.uniform_real() * total_mass;
    auto it = std::upper_bound(neg_cumulative.begin(), neg_cumulative.end(), u);
    if (it == neg_cumulative.end()) --it;
    return static_cast<int>(it - neg_cumulative.begin());
  };

  std::vector<float> input(static_cast<std::size_t>(n) * dim);
  std::vector<float> output(static_cast<std::size_t>(n) * dim, 0.0f);
  for (float& v : input)
    v = static_cast<float>((rng.uniform_real() - 0.5) / dim);

  const std::int64_t planned = static_cast<std::int64_t>(params.epochs) * total_tokens;
  std::int64_t processed = 0;
  std::vector<float> grad(dim);

  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    double loss_sum = 0.0;
    std::int64_t loss_terms = 0;
    for (const auto& walk : walks.walks) {
      for (std::size_t pos = 0; pos < walk.size(); ++pos) {
        double progress = static_cast<double>(processed) / static_cast<double>(planned);
        float lr = static_cast<float>(params.learning_rate *
                                      std::max(1.0 - progress, 1e-4));
        ++processed;

        int center = walk[pos];
        int span = 1 + static_cast<int>(rng.uniform(params.window));
        std::size_t lo = pos >= static_cast<std::size_t>(span) ? pos - span : 0;
        std::size_t hi = std::min(walk.size() - 1, pos + span);
        for (std::size_t cpos = lo; cpos <= hi; ++cpos) {
          if (cpos == pos) continue;
          int context = walk[cpos];
          float* v_in = input.data() + static_cast<std::size_t>(context) * dim;
          std::fill(grad.begin(), grad.end(), 0.0f);

          for (int k = 0; k <= params.negatives; ++k) {
            int target;
            float label;
            if (k == 0) {
              target = center;
              label = 1.0f;
            } else {
              target = sample_negative();
              if (target == center) continue;
              label = 0.0f;
            }
            float* v_out = output.data() + static_cast<std::size_t>(target) * dim;
            float dot = 0.0f;
            for (int d = 0; d < dim; ++d) dot += v_in[d] * v_out[d];
            float pred = sigmoid(dot);
            float g = (label - pred) * lr;
            loss_sum += label > 0.5f ? -std::log(std::max(1e-7f, pred))
                                     : -std::log(std::max(1e-7f, 1.0f - pred));
            ++loss_terms;
            for (int d = 0; d < dim; ++d) {
              grad[d] += g * v_out[d];
              v_out[d] += g * v_in[d];
            }
          }
          for (int d = 0; d < dim; ++d) v_in[d] += grad[d];
        }
      }
    }
    if (stats)
      stats->epoch_loss.push_back(loss_terms > 0 ? loss_sum / static_cast<double>(loss_terms)
                                                 : 0.0);
  }

  EmbeddingMatrix m;
  m.users = walks.node_names;
  m.dim = dim;
  m.values = std::move(input);
  return m;
}

double cosine(const float* a, const float* b, int dim) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (int d = 0; d < dim; ++d) {
    dot += static_cast<double>(a[d]) * b[d];
    na += static_cast<double>(a[d]) * a[d];
    nb += static_cast<double>(b[d]) * b[d];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / std::sqrt(na * nb);
}

}  // namespace coordnet::embed
