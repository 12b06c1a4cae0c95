#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coordnet/embed.hpp"
#include "coordnet/traces.hpp"
#include "coordnet/types.hpp"

namespace coordnet::classify {

// Row-aligned features with optional {0,1} labels (1 = io_driver).
struct FeatureMatrix {
  std::vector<std::string> users;
  int dim = 0;
  std::vector<double> values;  // row-major
  std::vector<int> labels;     // empty or users.size()

  const double* row(std::size_t i) const { return values.data() + i * dim; }
  bool has_labels() const { return !labels.empty(); }
};

// Features from an embedding for every labeled user; users absent from
// the embedding get a zero row so detached users stay classifiable.
FeatureMatrix features_from_embedding(const embed::EmbeddingMatrix& emb,
                                      const LabelMap& labels);

struct TreeNode {
  int feature = -1;       // -1 marks a leaf
  double threshold = 0.0;  // goes left when x[feature] <= threshold
  int left = -1;
  int right = -1;
  double positive_fraction = 0.0;
};

struct Tree {
  std::vector<TreeNode> nodes;
};

struct ForestParams {
  int n_trees = 100;
  std::optional<int> max_depth;  // unset = grow to purity
  int min_samples_split = 2;
  std::uint64_t seed = 1;
};

struct ForestModel {
  std::vector<Tree> trees;
  int dim = 0;
  std::uint64_t seed = 0;

  void save(const std::string& path) const;
  static ForestModel load(const std::string& path);
};

// Bagged Gini trees over sqrt(d) feature subsets per split. Splits
// compare x <= threshold where the threshold is a training value, so
// predictions are invariant under monotone feature transforms.
ForestModel train_forest(const FeatureMatrix& data, const ForestParams& params = {});

std::map<std::string, double> predict_scores(const ForestModel& model,
                                             const FeatureMatrix& data);

struct FoldMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double auc = 0.0;        // NaN when the test fold is single-class
  std::size_t test_size = 0;
};

struct EvalReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;   // harmonic mean of the report's precision/recall
  double auc = 0.0;  // pooled over per-fold test scores
  std::vector<FoldMetrics> per_fold;
  std::map<std::string, double> config;
  std::vector<std::string> warnings;
  bool skipped = false;

  std::string to_json() const;
};

struct CrossValParams {
  int k = 10;
  double flag_threshold = 0.5;
  ForestParams forest;
  std::uint64_t seed = 1;
};

// Stratified k-fold cross-validation; P/R/F1 averaged over folds, AUC
// from the pooled test scores.
EvalReport cross_validate(const FeatureMatrix& data, const CrossValParams& params = {});

// Full network->embedding->forest configuration shared by the temporal
// task and the ablation study.
struct PipelineParams {
  traces::TraceParams trace_params = traces::TraceParams::optimized();
  std::vector<TraceKind> enabled = {TraceKind::co_retweet, TraceKind::co_url,
                                    TraceKind::hashtag_seq, TraceKind::fast_retweet,
                                    TraceKind::text_sim};
  double text_sim_threshold = 0.7;
  int text_window_days = 365;
  int text_hash_dim = 4096;
  int text_min_words = 4;
  embed::WalkParams walk;
  embed::SgnsParams sgns;
  CrossValParams cv;
  // When false the fused network for a temporal cutoff is built from
  // historical tweets only and later users fall back to zero features.
  bool include_test_activity = true;
  std::uint64_t seed = 1;
};

std::vector<SimilarityNetwork> build_trace_networks(const Corpus& corpus,
                                                    const PipelineParams& params);

embed::EmbeddingMatrix embed_fused(const std::vector<SimilarityNetwork>& nets,
                                   const PipelineParams& params);

// Trains on users first active up to cutoff_year and evaluates on users
// whose first activity comes later, both featurized from the fused
// network of all activity up to evaluation time.
EvalReport temporal_forecast(const Corpus& corpus, const LabelMap& labels,
                             int cutoff_year, const PipelineParams& params);

int year_of_timestamp(std::int64_t ts);
std::int64_t year_start_timestamp(int year);

}  // namespace coordnet::classify
