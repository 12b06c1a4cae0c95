#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "coordnet/network.hpp"

namespace coordnet::detect {

// Eigenvector centrality per user, max-normalized to [0,1]. Users
// absent from the network score 0.
struct CentralityScores {
  std::map<std::string, double> scores;
  bool converged = true;
  int iterations = 0;

  double of(const std::string& user) const {
    auto it = scores.find(user);
    return it == scores.end() ? 0.0 : it->second;
  }
};

struct DetectionResult {
  std::set<std::string> flagged;
  std::map<std::string, double> score;  // continuous ranking score
  std::string method;
  std::map<std::string, double> params;
  bool warning = false;  // e.g. centrality did not converge

  double score_of(const std::string& user) const {
    auto it = score.find(user);
    return it == score.end() ? 0.0 : it->second;
  }
};

// Linear-interpolation percentile of a weight multiset (p in [0,100]).
double percentile(std::vector<double> values, double p);

// Keeps edges at or above the given weight percentile; users with at
// least one surviving edge are flagged. Ranking score is the maximum
// incident edge weight in the unfiltered network.
DetectionResult edge_filter(const SimilarityNetwork& net, double pct);

// Power iteration with an identity shift (same eigenvectors, immune to
// bipartite oscillation), deterministic all-ones start, max entry
// normalized to 1. use_weights=false binarizes the adjacency.
CentralityScores eigenvector_centrality(const SimilarityNetwork& net,
                                        bool use_weights = false,
                                        double tol = 1e-10, int max_iter = 1000);

// Flags users whose eigenvector centrality clears the threshold; the
// centrality itself is the ranking score. With threshold 1e-2 this is
// the conservative high-precision operating point.
DetectionResult node_prune(const SimilarityNetwork& net, double centrality_threshold,
                           bool use_weights = false);
DetectionResult node_prune(const CentralityScores& centrality, double centrality_threshold);

// Union-of-edges fusion; fused edges are unweighted (weight 1).
FusedNetwork fuse(const std::vector<SimilarityNetwork>& nets);

// Disparity filter baseline: an edge survives if its normalized weight
// is statistically surprising, (1-p)^(k-1) < alpha, at either endpoint.
// Score is 1 minus the user's best (smallest) incident p-value.
DetectionResult backbone_filter(const SimilarityNetwork& net, double alpha);

// Diagnostic centralities (not detectors): degree, strength.
std::map<std::string, double> degree_centrality(const SimilarityNetwork& net);

}  // namespace coordnet::detect
