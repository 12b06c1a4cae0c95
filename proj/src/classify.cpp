#include "coordnet/classify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "coordnet/detect.hpp"
#include "coordnet/eval.hpp"
#include "coordnet/rng.hpp"
#include "coordnet/simnet.hpp"

namespace coordnet::classify {

using nlohmann::json;

FeatureMatrix features_from_embedding(const embed::EmbeddingMatrix& emb,
                                      const LabelMap& labels) {
  FeatureMatrix fm;
  fm.dim = emb.dim;
  fm.users.reserve(labels.size());
  fm.values.reserve(labels.size() * emb.dim);
  for (const auto& [user, rec] : labels) {
    fm.users.push_back(user);
    fm.labels.push_back(rec.label == Label::io_driver ? 1 : 0);
    int idx = emb.index_of(user);
    if (idx < 0) {
      fm.values.insert(fm.values.end(), emb.dim, 0.0);
    } else {
      const float* r = emb.row(idx);
      for (int d = 0; d < emb.dim; ++d) fm.values.push_back(r[d]);
    }
  }
  return fm;
}

namespace {

struct TreeBuilder {
  const FeatureMatrix& data;
  const ForestParams& params;
  Rng rng;
  Tree tree;
  int mtry;

  TreeBuilder(const FeatureMatrix& d, const ForestParams& p, std::uint64_t seed)
      : data(d), params(p), rng(seed) {
    mtry = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(d.dim))));
  }

  static double gini(std::size_t pos, std::size_t total) {
    if (total == 0) return 0.0;
    double p = static_cast<double>(pos) / static_cast<double>(total);
    return 2.0 * p * (1.0 - p);
  }

  int build(std::vector<int>& samples, int depth) {
    std::size_t pos = 0;
    for (int s : samples) pos += data.labels[s];

    int node_idx = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    tree.nodes[node_idx].positive_fraction =
        samples.empty() ? 0.0 : static_cast<double>(pos) / static_cast<double>(samples.size());

    bool pure = (pos == 0 || pos == samples.size());
    bool too_small = samples.size() < static_cast<std::size_t>(params.min_samples_split);
    bool too_deep = params.max_depth && depth >= *params.max_depth;
    if (pure || too_small || too_deep) return node_idx;

    // Feature subset: mtry indices sampled without replacement.
    std::vector<int> features(data.dim);
    for (int f = 0; f < data.dim; ++f) features[f] = f;
    for (int k = 0; k < mtry; ++k) {
      std::size_t j = k + rng.uniform(features.size() - k);
      std::swap(features[k], features[j]);
    }

    double best_impurity = std::numeric_limits<double>::infinity();
    int best_feature = -1;
    double best_threshold = 0.0;
    double parent = gini(pos, samples.size());

    std::vector<std::pair<double, int>> column(samples.size());
    for (int k = 0; k < mtry; ++k) {
      int f = features[k];
      for (std::size_t i = 0; i < samples.size(); ++i)
        column[i] = {data.row(samples[i])[f], data.labels[samples[i]]};
      std::sort(column.begin(), column.end());

      std::size_t left_n = 0, left_pos = 0;
      for (std::size_t i = 0; i + 1 < column.size(); ++i) {
        ++left_n;
        left_pos += column[i].second;
        if (column[i].first == column[i + 1].first) continue;  // not a boundary
        std::size_t right_n = column.size() - left_n;
        std::size_t right_pos = pos - left_pos;
        double impurity =
            (static_cast<double>(left_n) * gini(left_pos, left_n) +
             static_cast<double>(right_n) * gini(right_pos, right_n)) /
            static_cast<double>(column.size());
        if (impurity < best_impurity) {
          best_impurity = impurity;
          best_feature = f;
          best_threshold = column[i].first;  // split on x <= value
        }
      }
    }

    if (best_feature < 0 || best_impurity >= parent) return node_idx;

    std::vector<int> left, right;
    for (int s : samples) {
      if (data.row(s)[best_feature] <= best_threshold) left.push_back(s);
      else right.push_back(s);
    }
    if (left.empty() || right.empty()) return node_idx;

    samples.clear();
    samples.shrink_to_fit();
    int l = build(left, depth + 1);
    int r = build(right, depth + 1);
    tree.nodes[node_idx].feature = best_feature;
    tree.nodes[node_idx].threshold = best_threshold;
    tree.nodes[node_idx].left = l;
    tree.nodes[node_idx].right = r;
    return node_idx;
  }
};

double tree_score(const Tree& tree, const double* row) {
  int idx = 0;
  while (tree.nodes[idx].feature >= 0) {
    const TreeNode& node = tree.nodes[idx];
    idx = row[node.feature] <= node.threshold ? node.left : node.right;
  }
  return tree.nodes[idx].positive_fraction;
}

}  // namespace

ForestModel train_forest(const FeatureMatrix& data, const ForestParams& params) {
  if (!data.has_labels()) throw std::invalid_argument("training data has no labels");
  if (data.users.size() < 2) throw std::invalid_argument("need at least 2 examples");
  std::size_t pos = 0;
  for (int l : data.labels) pos += l;
  if (pos == 0 || pos == data.labels.size())
    throw std::invalid_argument("training data must contain both classes");

  ForestModel model;
  model.dim = data.dim;
  model.seed = params.seed;
  model.trees.resize(params.n_trees);

  const std::size_t n = data.users.size();
  for (int t = 0; t < params.n_trees; ++t) {
    // Per-tree derived seed keeps results independent of scheduling.
    std::uint64_t tree_seed = mix_seed(params.seed, 0xF0E57ull, static_cast<std::uint64_t>(t));
    Rng boot(tree_seed);
    std::vector<int> samples(n);
    for (std::size_t i = 0; i < n; ++i) samples[i] = static_cast<int>(boot.uniform(n));

    TreeBuilder builder(data, params, mix_seed(tree_seed, 0x7EEEull));
    builder.tree.nodes.reserve(2 * n);
    builder.build(samples, 0);
    model.trees[t] = std::move(builder.tree);
  }
  return model;
}

std::map<std::string, double> predict_scores(const ForestModel& model,
                                             const FeatureMatrix& data) {
  if (data.dim != model.dim)
    throw std::invalid_argument("feature dimension mismatch: model " +
                                std::to_string(model.dim) + ", data " +
                                std::to_string(data.dim));
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < data.users.size(); ++i) {
    double sum = 0.0;
    for (const Tree& tree : model.trees) sum += tree_score(tree, data.row(i));
    out[data.users[i]] = sum / static_cast<double>(model.trees.size());
  }
  return out;
}

void ForestModel::save(const std::string& path) const {
  json j;
  j["dim"] = dim;
  j["seed"] = seed;
  j["n_trees"] = trees.size();
  json jtrees = json::array();
  for (const Tree& tree : trees) {
    json jnodes = json::array();
    for (const TreeNode& n : tree.nodes)
      jnodes.push_back({n.feature, n.threshold, n.left, n.right, n.positive_fraction});
    jtrees.push_back(std::move(jnodes));
  }
  j["trees"] = std::move(jtrees);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model file: " + path);
  out << j.dump() << '\n';
}

ForestModel ForestModel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  json j = json::parse(in);
  ForestModel model;
  model.dim = j.at("dim").get<int>();
  model.seed = j.at("seed").get<std::uint64_t>();
  for (const json& jtree : j.at("trees")) {
    Tree tree;
    for (const json& jn : jtree) {
      TreeNode n;
      n.feature = jn.at(0).get<int>();
      n.threshold = jn.at(1).get<double>();
      n.left = jn.at(2).get<int>();
      n.right = jn.at(3).get<int>();
      n.positive_fraction = jn.at(4).get<double>();
      tree.nodes.push_back(n);
    }
    model.trees.push_back(std::move(tree));
  }
  return model;
}

std::string EvalReport::to_json() const {
  json j;
  j["precision"] = precision;
  j["recall"] = recall;
  j["f1"] = f1;
  j["auc"] = auc;
  j["skipped"] = skipped;
  j["config"] = config;
  j["warnings"] = warnings;
  json folds = json::array();
  for (const FoldMetrics& f : per_fold) {
    json jf;
    jf["precision"] = f.precision;
    jf["recall"] = f.recall;
    jf["f1"] = f.f1;
    jf["auc"] = std::isnan(f.auc) ? json() : json(f.auc);
    jf["test_size"] = f.test_size;
    folds.push_back(std::move(jf));
  }
  j["per_fold"] = std::move(folds);
  return j.dump(2);
}

EvalReport cross_validate(const FeatureMatrix& data, const CrossValParams& params) {
  if (!data.has_labels()) throw std::invalid_argument("cross_validate needs labels");
  if (params.k < 2) throw std::invalid_argument("k must be >= 2");

  // Stratified assignment: shuffle each class, deal round-robin.
  std::vector<int> pos_idx, neg_idx;
  for (std::size_t i = 0; i < data.labels.size(); ++i)
    (data.labels[i] ? pos_idx : neg_idx).push_back(static_cast<int>(i));
  if (pos_idx.empty() || neg_idx.empty())
    throw std::invalid_argument("cross_validate needs both classes");
  if (pos_idx.size() < 2 || neg_idx.size() < 2)
    throw std::invalid_argument(
        "class too small for stratified folds: need at least 2 examples per class, got " +
        std::to_string(std::min(pos_idx.size(), neg_idx.size())));

  const int k = params.k;
  Rng rng(mix_seed(params.seed, 0xCF01Dull));
  rng.shuffle(pos_idx);
  rng.shuffle(neg_idx);

  // Per-class round-robin with a running offset so k == n degenerates
  // to leave-one-out instead of leaving folds empty.
  std::vector<int> fold_of(data.labels.size());
  for (std::size_t i = 0; i < pos_idx.size(); ++i) fold_of[pos_idx[i]] = static_cast<int>(i % k);
  for (std::size_t i = 0; i < neg_idx.size(); ++i)
    fold_of[neg_idx[i]] = static_cast<int>((pos_idx.size() + i) % k);

  EvalReport report;
  report.config["k"] = k;
  report.config["n_trees"] = params.forest.n_trees;
  report.config["flag_threshold"] = params.flag_threshold;
  report.config["seed"] = static_cast<double>(params.seed);

  eval::LabeledScores pooled;
  double precision_sum = 0.0, recall_sum = 0.0;
  std::size_t folds_used = 0;

  for (int fold = 0; fold < k; ++fold) {
    FeatureMatrix train, test;
    train.dim = test.dim = data.dim;
    for (std::size_t i = 0; i < data.users.size(); ++i) {
      FeatureMatrix& dst = fold_of[i] == fold ? test : train;
      dst.users.push_back(data.users[i]);
      dst.labels.push_back(data.labels[i]);
      const double* r = data.row(i);
      dst.values.insert(dst.values.end(), r, r + data.dim);
    }
    if (test.users.empty()) continue;
    std::size_t train_pos = 0;
    for (int l : train.labels) train_pos += l;
    if (train_pos == 0 || train_pos == train.labels.size())
      throw std::invalid_argument("fold " + std::to_string(fold) +
                                  " training split lost a class; use a smaller k");

    ForestParams fp = params.forest;
    fp.seed = mix_seed(params.seed, 0xF01Dull, static_cast<std::uint64_t>(fold));
    ForestModel model = train_forest(train, fp);
    auto scores = predict_scores(model, test);

    std::size_t tp = 0, fp_count = 0, fn = 0;
    std::size_t test_pos = 0, test_neg = 0;
    eval::LabeledScores fold_scores;
    for (std::size_t i = 0; i < test.users.size(); ++i) {
      double s = scores.at(test.users[i]);
      int label = test.labels[i];
      (label ? test_pos : test_neg) += 1;
      pooled.pairs.emplace_back(s, label);
      fold_scores.pairs.emplace_back(s, label);
      bool flag = s >= params.flag_threshold;
      if (flag && label) ++tp;
      if (flag && !label) ++fp_count;
      if (!flag && label) ++fn;
    }

    FoldMetrics fm;
    fm.test_size = test.users.size();
    fm.precision = tp + fp_count > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp_count) : 0.0;
    fm.recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    fm.f1 = eval::f1_score(fm.precision, fm.recall);
    fm.auc = (test_pos > 0 && test_neg > 0) ? eval::roc_auc(fold_scores)
                                            : std::numeric_limits<double>::quiet_NaN();
    report.per_fold.push_back(fm);
    precision_sum += fm.precision;
    recall_sum += fm.recall;
    ++folds_used;
  }

  report.precision = precision_sum / static_cast<double>(folds_used);
  report.recall = recall_sum / static_cast<double>(folds_used);
  report.f1 = eval::f1_score(report.precision, report.recall);
  report.auc = eval::roc_auc(pooled);
  return report;
}

// -- pipeline pieces shared by the temporal task ------------------------

std::vector<SimilarityNetwork> build_trace_networks(const Corpus& corpus,
                                                    const PipelineParams& params) {
  std::vector<SimilarityNetwork> nets;
  for (TraceKind kind : params.enabled) {
    if (kind == TraceKind::text_sim) {
      auto docs = traces::extract_documents(corpus, params.text_min_words);
      if (docs.docs.empty()) {
        nets.emplace_back("text_sim");
        nets.back().finalize();
        continue;
      }
      simnet::HashedTfidfEmbedder embedder(params.text_hash_dim);
      auto vectors = simnet::embed_documents(docs, embedder);
      nets.push_back(simnet::text_similarity_network(docs, vectors,
                                                     params.text_sim_threshold,
                                                     params.text_window_days));
    } else {
      auto events = traces::extract_events(corpus, kind, params.trace_params);
      nets.push_back(simnet::build_trace_network(events, kind));
    }
  }
  return nets;
}

embed::EmbeddingMatrix embed_fused(const std::vector<SimilarityNetwork>& nets,
                                   const PipelineParams& params) {
  FusedNetwork fused = detect::fuse(nets);
  embed::WalkParams wp = params.walk;
  wp.seed = mix_seed(params.seed, 0x3A1Cull);
  auto walks = embed::generate_walks(fused.net, wp);
  embed::SgnsParams sp = params.sgns;
  sp.seed = mix_seed(params.seed, 0x3A1Dull);
  return embed::train_embeddings(walks, sp);
}

int year_of_timestamp(std::int64_t ts) {
  // Civil-from-days (Hinnant); days may be negative for pre-1970.
  std::int64_t days = ts / 86400 - (ts % 86400 < 0 ? 1 : 0);
  std::int64_t z = days + 719468;
  std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  std::int64_t doe = z - era * 146097;
  std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  std::int64_t y = yoe + era * 400;
  std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  std::int64_t mp = (5 * doy + 2) / 153;
  std::int64_t m = mp < 10 ? mp + 3 : mp - 9;
  return static_cast<int>(m <= 2 ? y + 1 : y);
}

std::int64_t year_start_timestamp(int year) {
  // Days from 1970-01-01 to year-01-01 (days-from-civil, Hinnant);
  // January maps to month 10 of the previous March-based year.
  std::int64_t y = year - 1;
  std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  std::int64_t yoe = y - era * 400;
  std::int64_t doy = (153 * 10 + 2) / 5;  // = 306, day-of-year of Jan 1
  std::int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  std::int64_t days = era * 146097 + doe - 719468;
  return days * 86400;
}

EvalReport temporal_forecast(const Corpus& corpus, const LabelMap& labels,
                             int cutoff_year, const PipelineParams& params) {
  EvalReport report;
  report.config["cutoff_year"] = cutoff_year;
  report.config["seed"] = static_cast<double>(params.seed);

  std::vector<std::string> train_users, test_users;
  for (const auto& [user, rec] : labels) {
    (rec.first_active_year <= cutoff_year ? train_users : test_users).push_back(user);
  }
  if (train_users.empty() || test_users.empty()) {
    report.skipped = true;
    report.warnings.push_back(
        test_users.empty()
            ? "no users first active after cutoff " + std::to_string(cutoff_year)
            : "no users first active by cutoff " + std::to_string(cutoff_year));
    return report;
  }

  Corpus scoped;
  if (params.include_test_activity) {
    scoped = corpus;
  } else {
    std::int64_t boundary = year_start_timestamp(cutoff_year + 1);
    for (const TweetRecord& rec : corpus.records) {
      if (rec.timestamp < boundary) {
        scoped.records.push_back(rec);
        scoped.users.insert(rec.author_id);
      }
    }
  }

  auto nets = build_trace_networks(scoped, params);
  auto emb = embed_fused(nets, params);
  FeatureMatrix all = features_from_embedding(emb, labels);

  std::map<std::string, std::size_t> row_of;
  for (std::size_t i = 0; i < all.users.size(); ++i) row_of[all.users[i]] = i;

  auto subset = [&](const std::vector<std::string>& users) {
    FeatureMatrix fm;
    fm.dim = all.dim;
    for (const std::string& u : users) {
      std::size_t i = row_of.at(u);
      fm.users.push_back(u);
      fm.labels.push_back(all.labels[i]);
      const double* r = all.row(i);
      fm.values.insert(fm.values.end(), r, r + all.dim);
    }
    return fm;
  };

  FeatureMatrix train = subset(train_users);
  FeatureMatrix test = subset(test_users);

  std::size_t train_pos = 0;
  for (int l : train.labels) train_pos += l;
  if (train_pos == 0 || train_pos == train.labels.size()) {
    report.skipped = true;
    report.warnings.push_back("training partition at cutoff " +
                              std::to_string(cutoff_year) + " has a single class");
    return report;
  }

  ForestParams fp = params.cv.forest;
  fp.seed = mix_seed(params.seed, 0x7E3Aull, static_cast<std::uint64_t>(cutoff_year));
  ForestModel model = train_forest(train, fp);
  auto scores = predict_scores(model, test);

  std::size_t tp = 0, fp_count = 0, fn = 0, test_pos = 0, test_neg = 0;
  eval::LabeledScores ls;
  for (std::size_t i = 0; i < test.users.size(); ++i) {
    double s = scores.at(test.users[i]);
    int label = test.labels[i];
    (label ? test_pos : test_neg) += 1;
    ls.pairs.emplace_back(s, label);
    bool flag = s >= params.cv.flag_threshold;
    if (flag && label) ++tp;
    if (flag && !label) ++fp_count;
    if (!flag && label) ++fn;
  }
  report.precision = tp + fp_count > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp_count) : 0.0;
  report.recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  report.f1 = eval::f1_score(report.precision, report.recall);
  report.auc = (test_pos > 0 && test_neg > 0) ? eval::roc_auc(ls)
                                              : std::numeric_limits<double>::quiet_NaN();
  report.config["n_train"] = static_cast<double>(train.users.size());
  report.config["n_test"] = static_cast<double>(test.users.size());
  if (tp + fp_count == 0) report.warnings.push_back("no users flagged at cutoff");
  return report;
}

}  // namespace coordnet::classify
