#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <vector>

#include "coordnet/embed.hpp"
#include "coordnet/rng.hpp"

using namespace coordnet;
using embed::SgnsParams;
using embed::WalkParams;

namespace {

SimilarityNetwork clique_pair(int size, bool bridge) {
  // two cliques A0..  B0.., optionally joined A0-bridge0-bridge1-B0
  SimilarityNetwork net("cliques");
  for (int i = 0; i < size; ++i)
    for (int j = i + 1; j < size; ++j) {
      net.add_edge("A" + std::to_string(i), "A" + std::to_string(j), 1.0);
      net.add_edge("B" + std::to_string(i), "B" + std::to_string(j), 1.0);
    }
  if (bridge) {
    net.add_edge("A0", "bridge0", 1.0);
    net.add_edge("bridge0", "bridge1", 1.0);
    net.add_edge("bridge1", "B0", 1.0);
  }
  net.finalize();
  return net;
}

std::vector<double> centroid(const embed::EmbeddingMatrix& m, const std::string& prefix) {
  std::vector<double> c(m.dim, 0.0);
  int count = 0;
  for (std::size_t i = 0; i < m.users.size(); ++i) {
    if (m.users[i].rfind(prefix, 0) != 0) continue;
    for (int d = 0; d < m.dim; ++d) c[d] += m.row(i)[d];
    ++count;
  }
  for (double& x : c) x /= count;
  return c;
}

double vcos(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return dot / std::sqrt(na * nb);
}

}  // namespace

TEST_CASE("walks stay on edges and respect walk_len") {
  auto net = clique_pair(5, true);
  WalkParams params;
  params.seed = 9;
  auto corpus = embed::generate_walks(net, params);
  CHECK(corpus.walks.size() == net.node_count() * 16);
  for (const auto& walk : corpus.walks) {
    CHECK(walk.size() <= 16);
    CHECK(!walk.empty());
    for (std::size_t i = 1; i < walk.size(); ++i)
      CHECK(net.adjacent(walk[i - 1], walk[i]));
  }
}

TEST_CASE("isolated node walks contain only that node") {
  SimilarityNetwork net("iso");
  net.add_edge("a", "b", 1.0);
  net.add_node("loner");
  net.finalize();
  WalkParams params;
  auto corpus = embed::generate_walks(net, params);
  int loner = net.node_index("loner");
  int count = 0;
  for (const auto& walk : corpus.walks) {
    if (walk[0] != loner) continue;
    ++count;
    CHECK(walk == std::vector<int>{loner});
  }
  CHECK(count == 16);
}

TEST_CASE("two-node path walks alternate endpoints") {
  SimilarityNetwork net("pair");
  net.add_edge("a", "b", 1.0);
  net.finalize();
  WalkParams params;
  params.p = 0.25;
  params.q = 4.0;
  auto corpus = embed::generate_walks(net, params);
  for (const auto& walk : corpus.walks) {
    CHECK(walk.size() == 16);
    for (std::size_t i = 1; i < walk.size(); ++i) CHECK(walk[i] != walk[i - 1]);
  }
}

TEST_CASE("same seed gives identical walks, different seeds differ") {
  auto net = clique_pair(6, true);
  WalkParams params;
  params.seed = 1234;
  auto w1 = embed::generate_walks(net, params);
  auto w2 = embed::generate_walks(net, params);
  CHECK(w1.walks == w2.walks);
  params.seed = 4321;
  auto w3 = embed::generate_walks(net, params);
  CHECK(w1.walks != w3.walks);
}

TEST_CASE("training is deterministic and covers the vocabulary") {
  auto net = clique_pair(6, false);
  WalkParams wp;
  wp.seed = 5;
  auto walks = embed::generate_walks(net, wp);
  SgnsParams sp;
  sp.dim = 16;
  sp.epochs = 2;
  sp.seed = 5;
  auto m1 = embed::train_embeddings(walks, sp);
  auto m2 = embed::train_embeddings(walks, sp);
  CHECK(m1.values == m2.values);  // bit-identical
  CHECK(m1.users.size() == net.node_count());
  CHECK(m1.dim == 16);
}

TEST_CASE("loss decreases across epochs") {
  // Fixed small corpus: a sparse ring, where the skip-gram objective is
  // cleanly satisfiable and descent dominates the negative-sampling
  // noise floor.
  SimilarityNetwork net("ring");
  for (int i = 0; i < 30; ++i)
    net.add_edge("n" + std::to_string(i), "n" + std::to_string((i + 1) % 30), 1.0);
  net.finalize();
  WalkParams wp;
  wp.seed = 11;
  auto walks = embed::generate_walks(net, wp);
  SgnsParams sp;
  sp.dim = 32;
  sp.epochs = 4;
  sp.seed = 11;
  embed::TrainStats stats;
  embed::train_embeddings(walks, sp, &stats);
  REQUIRE(stats.epoch_loss.size() == 4);
  int non_decreasing = 0;
  for (std::size_t e = 1; e < stats.epoch_loss.size(); ++e)
    if (stats.epoch_loss[e] >= stats.epoch_loss[e - 1]) ++non_decreasing;
  CHECK(non_decreasing <= 1);
  CHECK(stats.epoch_loss.back() < stats.epoch_loss.front());
}

TEST_CASE("two disjoint cliques separate in embedding space") {
  auto net = clique_pair(10, false);
  WalkParams wp;
  wp.seed = 21;
  auto walks = embed::generate_walks(net, wp);
  SgnsParams sp;
  sp.dim = 32;
  sp.seed = 21;
  auto m = embed::train_embeddings(walks, sp);

  double intra = 0.0, inter = 0.0;
  int intra_n = 0, inter_n = 0;
  for (std::size_t i = 0; i < m.users.size(); ++i) {
    for (std::size_t j = i + 1; j < m.users.size(); ++j) {
      std::vector<double> a(m.row(i), m.row(i) + m.dim);
      std::vector<double> b(m.row(j), m.row(j) + m.dim);
      double c = vcos(a, b);
      if (m.users[i][0] == m.users[j][0]) {
        intra += c;
        ++intra_n;
      } else {
        inter += c;
        ++inter_n;
      }
    }
  }
  CHECK(intra / intra_n > inter / inter_n);
}

TEST_CASE("barbell bridge embeds between the clique centroids") {
  auto net = clique_pair(8, true);
  WalkParams wp;
  wp.seed = 33;
  auto walks = embed::generate_walks(net, wp);
  SgnsParams sp;
  sp.dim = 32;
  sp.seed = 33;
  auto m = embed::train_embeddings(walks, sp);

  auto ca = centroid(m, "A");
  auto cb = centroid(m, "B");
  auto cbridge = centroid(m, "bridge");
  double between = vcos(ca, cb);
  CHECK(vcos(cbridge, ca) > between);
  CHECK(vcos(cbridge, cb) > between);
}

TEST_CASE("embedding matrix round trips through save/load") {
  auto net = clique_pair(4, false);
  WalkParams wp;
  auto walks = embed::generate_walks(net, wp);
  SgnsParams sp;
  sp.dim = 8;
  sp.epochs = 1;
  auto m = embed::train_embeddings(walks, sp);
  auto path = std::filesystem::temp_directory_path() / "emb_rt.emb";
  m.save(path.string());
  auto loaded = embed::EmbeddingMatrix::load(path.string());
  CHECK(loaded.dim == m.dim);
  CHECK(loaded.users == m.users);
  for (std::size_t i = 0; i < m.values.size(); ++i)
    CHECK(loaded.values[i] == doctest::Approx(m.values[i]).epsilon(1e-5));
}
