#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "coordnet/detect.hpp"
#include "coordnet/rng.hpp"

using namespace coordnet;

namespace {

SimilarityNetwork make_net(std::initializer_list<std::tuple<const char*, const char*, double>> edges,
                           std::initializer_list<const char*> isolated = {}) {
  SimilarityNetwork net("test");
  for (const auto& [u, v, w] : edges) net.add_edge(u, v, w);
  for (const char* u : isolated) net.add_node(u);
  net.finalize();
  return net;
}

// Test-only oracle: full Jacobi eigen-decomposition of the symmetric
// adjacency; returns the dominant eigenvector, abs-valued and
// max-normalized.
std::vector<double> dense_dominant_eigenvector(const std::vector<std::vector<double>>& sym) {
  const std::size_t n = sym.size();
  std::vector<std::vector<double>> a = sym;
  std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;

  for (int sweep = 0; sweep < 300; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-26) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-20) continue;
        double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        double app = a[p][p], aqq = a[q][q], apq = a[p][q];
        a[p][p] = app - t * apq;
        a[q][q] = aqq + t * apq;
        a[p][q] = a[q][p] = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k != p && k != q) {
            double akp = a[k][p], akq = a[k][q];
            a[k][p] = a[p][k] = c * akp - s * akq;
            a[k][q] = a[q][k] = s * akp + c * akq;
          }
          double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (a[i][i] > a[best][best]) best = i;
  std::vector<double> vec(n);
  double max_abs = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    vec[i] = std::abs(v[i][best]);
    max_abs = std::max(max_abs, vec[i]);
  }
  for (double& x : vec) x /= max_abs;
  return vec;
}

SimilarityNetwork random_connected_graph(Rng& rng, int max_nodes) {
  int n = 3 + static_cast<int>(rng.uniform(max_nodes - 2));
  SimilarityNetwork net("rand");
  // random spanning tree, then extra edges
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) edges.emplace_back(static_cast<int>(rng.uniform(v)), v);
  int extra = static_cast<int>(rng.uniform(2 * n));
  for (int i = 0; i < extra; ++i) {
    int a = static_cast<int>(rng.uniform(n));
    int b = static_cast<int>(rng.uniform(n));
    if (a != b) edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (const auto& [a, b] : edges)
    net.add_edge("n" + std::to_string(a), "n" + std::to_string(b),
                 0.1 + 0.9 * rng.uniform_real());
  net.finalize();
  return net;
}

}  // namespace

TEST_CASE("percentile uses linear interpolation") {
  CHECK(detect::percentile({0.1, 0.5, 0.9}, 0.0) == doctest::Approx(0.1));
  CHECK(detect::percentile({0.1, 0.5, 0.9}, 100.0) == doctest::Approx(0.9));
  CHECK(detect::percentile({0.1, 0.5, 0.9}, 50.0) == doctest::Approx(0.5));
  CHECK(detect::percentile({0.0, 1.0}, 25.0) == doctest::Approx(0.25));
  CHECK_THROWS(detect::percentile({}, 50.0));
}

TEST_CASE("edge_filter keeps ties and flags connected users") {
  auto net = make_net({{"a", "b", 0.1}, {"c", "d", 0.5}, {"e", "f", 0.9}});
  auto all = detect::edge_filter(net, 0.0);
  CHECK(all.flagged.size() == 6);  // percentile 0: every connected user

  auto strict = detect::edge_filter(net, 99.5);
  CHECK(strict.flagged == std::set<std::string>{"e", "f"});
  CHECK(strict.score_of("a") == doctest::Approx(0.1));  // score is max incident weight
  CHECK(strict.score_of("e") == doctest::Approx(0.9));

  // ten equal weights: any percentile keeps them all (tie rule)
  SimilarityNetwork equal("eq");
  for (int i = 0; i < 10; ++i)
    equal.add_edge("x" + std::to_string(2 * i), "x" + std::to_string(2 * i + 1), 0.4);
  equal.finalize();
  auto kept = detect::edge_filter(equal, 80.0);
  CHECK(kept.flagged.size() == 20);
}

TEST_CASE("edge_filter of empty network is empty") {
  SimilarityNetwork net("empty");
  auto result = detect::edge_filter(net, 50.0);
  CHECK(result.flagged.empty());
  CHECK(result.score.empty());
}

TEST_CASE("eigenvector centrality on a triangle and a path") {
  auto triangle = make_net({{"a", "b", 1.0}, {"b", "c", 1.0}, {"a", "c", 1.0}});
  auto scores = detect::eigenvector_centrality(triangle);
  CHECK(scores.converged);
  CHECK(scores.of("a") == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(scores.of("b") == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(scores.of("c") == doctest::Approx(1.0).epsilon(1e-8));

  // path a-b-c: analytic eigenvector (1, sqrt 2, 1)
  auto path = make_net({{"a", "b", 1.0}, {"b", "c", 1.0}});
  auto ps = detect::eigenvector_centrality(path);
  CHECK(ps.of("b") == doctest::Approx(1.0));
  CHECK(ps.of("a") == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-8));
  CHECK(ps.of("c") == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-8));

  // absent user scores zero
  CHECK(ps.of("ghost") == 0.0);
}

TEST_CASE("isolated nodes score zero") {
  auto net = make_net({{"a", "b", 1.0}}, {"loner"});
  auto scores = detect::eigenvector_centrality(net);
  CHECK(scores.of("loner") == 0.0);
  CHECK(scores.of("a") == doctest::Approx(1.0));
}

TEST_CASE("power iteration matches dense eigen-decomposition") {
  Rng rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    auto net = random_connected_graph(rng, 40);
    auto scores = detect::eigenvector_centrality(net, false, 1e-13, 100000);
    REQUIRE(scores.converged);

    const std::size_t n = net.node_count();
    std::vector<std::vector<double>> adj(n, std::vector<double>(n, 0.0));
    for (const auto& e : net.edges()) adj[e.a][e.b] = adj[e.b][e.a] = 1.0;
    auto oracle = dense_dominant_eigenvector(adj);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(scores.of(net.node_name(i)) == doctest::Approx(oracle[i]).epsilon(1e-6));
  }
}

TEST_CASE("weighted centrality matches dense oracle too") {
  Rng rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    auto net = random_connected_graph(rng, 25);
    auto scores = detect::eigenvector_centrality(net, true, 1e-13, 100000);
    REQUIRE(scores.converged);
    const std::size_t n = net.node_count();
    std::vector<std::vector<double>> adj(n, std::vector<double>(n, 0.0));
    for (const auto& e : net.edges()) adj[e.a][e.b] = adj[e.b][e.a] = e.weight;
    auto oracle = dense_dominant_eigenvector(adj);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(scores.of(net.node_name(i)) == doctest::Approx(oracle[i]).epsilon(1e-6));
  }
}

TEST_CASE("node_prune thresholds behave") {
  auto net = make_net({{"a", "b", 1.0}, {"b", "c", 1.0}, {"c", "d", 0.9}});
  auto everyone = detect::node_prune(net, 0.0);
  CHECK(everyone.flagged.size() == 4);
  auto nobody = detect::node_prune(net, 1.5);
  CHECK(nobody.flagged.empty());
  auto conservative = detect::node_prune(net, 1e-2);
  CHECK(conservative.flagged.size() == 4);  // small connected graph, all central
  for (const auto& [user, score] : conservative.score)
    CHECK(score == doctest::Approx(detect::eigenvector_centrality(net).of(user)));
}

TEST_CASE("monotonicity of flag sets in thresholds") {
  Rng rng(5150);
  auto net = random_connected_graph(rng, 30);
  double prev_pct_size = -1;
  for (double pct : {0.0, 25.0, 50.0, 75.0, 95.0}) {
    auto r = detect::edge_filter(net, pct);
    if (prev_pct_size >= 0) CHECK(r.flagged.size() <= prev_pct_size);
    prev_pct_size = static_cast<double>(r.flagged.size());
  }
  std::set<std::string> prev;
  bool first = true;
  for (double thr : {0.0, 0.1, 0.3, 0.7, 1.01}) {
    auto r = detect::node_prune(net, thr);
    if (!first)
      for (const auto& u : r.flagged) CHECK(prev.count(u) == 1);  // subset of previous
    prev = r.flagged;
    first = false;
  }
}

TEST_CASE("fuse unions nodes and edges with provenance") {
  auto n1 = make_net({{"a", "b", 0.5}});
  n1.set_kind("co_retweet");
  auto n2 = make_net({{"a", "b", 0.9}, {"b", "c", 0.4}});
  n2.set_kind("co_url");
  auto n3 = make_net({{"d", "e", 0.2}});
  n3.set_kind("text_sim");

  auto fused = detect::fuse({n1, n2, n3});
  CHECK(fused.net.node_count() == 5);
  CHECK(fused.net.edge_count() == 3);
  for (const auto& e : fused.net.edges()) CHECK(e.weight == 1.0);

  int ab = -1;
  for (std::size_t i = 0; i < fused.net.edge_count(); ++i) {
    const auto& e = fused.net.edges()[i];
    if (fused.net.node_name(e.a) == "a" && fused.net.node_name(e.b) == "b")
      ab = static_cast<int>(i);
  }
  REQUIRE(ab >= 0);
  CHECK(fused.provenance_size(ab) == 2);
}

TEST_CASE("fuse is idempotent, commutative and associative on edge sets") {
  auto n1 = make_net({{"a", "b", 0.5}, {"b", "c", 0.2}});
  auto n2 = make_net({{"c", "d", 0.7}});
  auto n3 = make_net({{"a", "d", 0.9}});

  auto edges_of = [](const FusedNetwork& f) {
    std::set<std::pair<std::string, std::string>> out;
    for (const auto& e : f.net.edges())
      out.insert({f.net.node_name(e.a), f.net.node_name(e.b)});
    return out;
  };

  auto abc = edges_of(detect::fuse({n1, n2, n3}));
  auto cba = edges_of(detect::fuse({n3, n2, n1}));
  CHECK(abc == cba);

  auto fused_once = detect::fuse({n1, n2});
  auto assoc = edges_of(detect::fuse({fused_once.net, n3}));
  CHECK(assoc == abc);

  auto idem = edges_of(detect::fuse({fused_once.net}));
  CHECK(idem == edges_of(fused_once));
}

TEST_CASE("fuse of a single network keeps edges but resets weights to 1") {
  auto n1 = make_net({{"a", "b", 0.5}, {"b", "c", 0.2}});
  auto fused = detect::fuse({n1});
  CHECK(fused.net.edge_count() == 2);
  for (const auto& e : fused.net.edges()) CHECK(e.weight == 1.0);
}

TEST_CASE("fuse of disjoint networks is their disjoint union") {
  auto n1 = make_net({{"a", "b", 0.5}});
  auto n2 = make_net({{"x", "y", 0.5}});
  auto fused = detect::fuse({n1, n2});
  CHECK(fused.net.node_count() == 4);
  CHECK(fused.net.edge_count() == 2);
}

TEST_CASE("backbone filter matches hand-computed p-values") {
  // Star center c: strength 1.0, degree 4.
  auto net = make_net({{"c", "a", 0.90}, {"c", "b", 0.05}, {"c", "d", 0.03},
                       {"c", "e", 0.02}});
  auto result = detect::backbone_filter(net, 0.05);
  // p-value of (c,a) at c: (1-0.9)^3 = 1e-3 < 0.05 -> kept.
  CHECK(result.flagged.count("c") == 1);
  CHECK(result.flagged.count("a") == 1);
  // (c,b): (0.95)^3 = 0.857; from b (degree 1) p=1. Not kept.
  CHECK(result.flagged.count("b") == 0);
  CHECK(result.flagged.count("d") == 0);
  CHECK(result.flagged.count("e") == 0);
  CHECK(result.score_of("c") == doctest::Approx(1.0 - 1e-3).epsilon(1e-9));
  CHECK(result.score_of("b") == doctest::Approx(1.0 - std::pow(0.95, 3)).epsilon(1e-9));

  // degree-1 endpoints alone never keep an edge
  auto pair = make_net({{"u", "v", 0.9}});
  auto pr = detect::backbone_filter(pair, 0.05);
  CHECK(pr.flagged.empty());
  CHECK(pr.score_of("u") == doctest::Approx(0.0));

  // alpha -> 1 keeps everything with degree > 1
  auto loose = detect::backbone_filter(net, 0.999999);
  CHECK(loose.flagged.count("c") == 1);
}

TEST_CASE("dense core outranks high-weight stragglers under centrality") {
  // Fig 3-style structure: a dense coordinated core plus organic pairs
  // whose edge weights rival the core's. Centrality ranking must beat
  // the max-edge-weight ranking.
  SimilarityNetwork net("synthetic");
  Rng rng(31337);
  const int core = 12;
  for (int i = 0; i < core; ++i)
    for (int j = i + 1; j < core; ++j)
      if (rng.bernoulli(0.9))
        net.add_edge("drv" + std::to_string(i), "drv" + std::to_string(j),
                     0.3 + 0.4 * rng.uniform_real());
  for (int p = 0; p < 10; ++p)
    net.add_edge("org" + std::to_string(2 * p), "org" + std::to_string(2 * p + 1),
                 0.8 + 0.2 * rng.uniform_real());
  net.finalize();

  auto centrality = detect::eigenvector_centrality(net);
  auto edge_scores = detect::edge_filter(net, 0.0);

  auto auc = [&](const std::map<std::string, double>& score) {
    double wins = 0.0, pairs = 0.0;
    for (int i = 0; i < core; ++i) {
      for (int p = 0; p < 20; ++p) {
        double sd = score.count("drv" + std::to_string(i))
                        ? score.at("drv" + std::to_string(i)) : 0.0;
        double so = score.count("org" + std::to_string(p))
                        ? score.at("org" + std::to_string(p)) : 0.0;
        wins += sd > so ? 1.0 : (sd == so ? 0.5 : 0.0);
        pairs += 1.0;
      }
    }
    return wins / pairs;
  };
  CHECK(auc(centrality.scores) > auc(edge_scores.score));
  CHECK(auc(centrality.scores) > 0.95);
}
