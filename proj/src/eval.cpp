#include "coordnet/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace coordnet::eval {

double roc_auc(const LabeledScores& s) {
  std::int64_t n_pos = 0, n_neg = 0;
  for (const auto& [score, label] : s.pairs) (label ? n_pos : n_neg) += 1;
  if (n_pos == 0 || n_neg == 0)
    throw std::invalid_argument("roc_auc needs both classes");

  // Sort ascending; within each tie group positives score half a win
  // against the group's negatives. 2*wins + ties stays integral, so
  // the division matches brute-force pair counting bit for bit.
  std::vector<std::pair<double, int>> sorted = s.pairs;
  std::sort(sorted.begin(), sorted.end());

  std::int64_t twice_wins = 0;
  std::int64_t neg_below = 0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    std::int64_t group_pos = 0, group_neg = 0;
    while (j < sorted.size() && sorted[j].first == sorted[i].first) {
      (sorted[j].second ? group_pos : group_neg) += 1;
      ++j;
    }
    twice_wins += group_pos * (2 * neg_below + group_neg);
    neg_below += group_neg;
    i = j;
  }
  return static_cast<double>(twice_wins) / (2.0 * static_cast<double>(n_pos) *
                                            static_cast<double>(n_neg));
}

double f1_score(double precision, double recall) {
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

Prf precision_recall_f1(const std::set<std::string>& flagged, const LabelMap& labels) {
  if (labels.empty()) throw std::invalid_argument("labels must be nonempty");
  std::size_t tp = 0, fp = 0, total_pos = 0;
  for (const auto& [user, rec] : labels)
    if (rec.label == Label::io_driver) ++total_pos;
  for (const std::string& user : flagged) {
    auto it = labels.find(user);
    if (it == labels.end()) continue;  // unlabeled users are ignored
    (it->second.label == Label::io_driver ? tp : fp) += 1;
  }

  Prf out;
  if (tp + fp == 0) {
    out.warning = true;  // nothing flagged: precision 0 by convention
    return out;
  }
  out.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  out.recall = total_pos > 0 ? static_cast<double>(tp) / static_cast<double>(total_pos) : 0.0;
  out.f1 = f1_score(out.precision, out.recall);
  return out;
}

double nmi(const std::map<std::string, std::string>& groups_a,
           const std::map<std::string, std::string>& groups_b) {
  static const std::string kNone = "\x01none";
  std::set<std::string> universe;
  for (const auto& [u, g] : groups_a) universe.insert(u);
  for (const auto& [u, g] : groups_b) universe.insert(u);
  if (universe.empty()) throw std::invalid_argument("nmi over empty universe");

  auto group_of = [](const std::map<std::string, std::string>& groups,
                     const std::string& user) -> const std::string& {
    auto it = groups.find(user);
    return it == groups.end() ? kNone : it->second;
  };

  std::map<std::string, std::int64_t> count_a, count_b;
  std::map<std::pair<std::string, std::string>, std::int64_t> joint;
  for (const std::string& user : universe) {
    const std::string& ga = group_of(groups_a, user);
    const std::string& gb = group_of(groups_b, user);
    ++count_a[ga];
    ++count_b[gb];
    ++joint[{ga, gb}];
  }

  const double n = static_cast<double>(universe.size());
  auto entropy = [&](const std::map<std::string, std::int64_t>& counts) {
    double h = 0.0;
    for (const auto& [g, c] : counts) {
      double p = static_cast<double>(c) / n;
      h -= p * std::log(p);
    }
    return h;
  };
  double ha = entropy(count_a);
  double hb = entropy(count_b);
  if (ha == 0.0 || hb == 0.0) return 0.0;  // single-cluster convention

  double mi = 0.0;
  for (const auto& [key, c] : joint) {
    double pxy = static_cast<double>(c) / n;
    double px = static_cast<double>(count_a[key.first]) / n;
    double py = static_cast<double>(count_b[key.second]) / n;
    mi += pxy * std::log(pxy / (px * py));
  }
  double value = mi / (0.5 * (ha + hb));
  return std::clamp(value, 0.0, 1.0);
}

double coverage(const SimilarityNetwork& net, const LabelMap& labels) {
  std::size_t drivers = 0, present = 0;
  for (const auto& [user, rec] : labels) {
    if (rec.label != Label::io_driver) continue;
    ++drivers;
    if (net.has_node(user)) ++present;
  }
  if (drivers == 0) throw std::invalid_argument("coverage needs at least one io_driver");
  return static_cast<double>(present) / static_cast<double>(drivers);
}

std::vector<RocPoint> roc_curve(const LabeledScores& s) {
  std::int64_t n_pos = 0, n_neg = 0;
  for (const auto& [score, label] : s.pairs) (label ? n_pos : n_neg) += 1;
  if (n_pos == 0 || n_neg == 0)
    throw std::invalid_argument("roc_curve needs both classes");

  std::vector<std::pair<double, int>> sorted = s.pairs;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  std::vector<RocPoint> curve;
  curve.push_back({0.0, 0.0, std::numeric_limits<double>::infinity()});
  std::int64_t tp = 0, fp = 0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j].first == sorted[i].first) {
      (sorted[j].second ? tp : fp) += 1;
      ++j;
    }
    curve.push_back({static_cast<double>(fp) / static_cast<double>(n_neg),
                     static_cast<double>(tp) / static_cast<double>(n_pos),
                     sorted[i].first});
    i = j;
  }
  return curve;
}

std::pair<double, double> precision_at_recall(const LabeledScores& s, double min_recall) {
  std::int64_t n_pos = 0;
  for (const auto& [score, label] : s.pairs) n_pos += label;
  if (n_pos == 0) throw std::invalid_argument("no positives");

  std::vector<std::pair<double, int>> sorted = s.pairs;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  double best_precision = 0.0, best_recall = 0.0;
  std::int64_t tp = 0, flagged = 0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j].first == sorted[i].first) {
      tp += sorted[j].second;
      ++flagged;
      ++j;
    }
    double recall = static_cast<double>(tp) / static_cast<double>(n_pos);
    double precision = static_cast<double>(tp) / static_cast<double>(flagged);
    if (recall >= min_recall && precision > best_precision) {
      best_precision = precision;
      best_recall = recall;
    }
    i = j;
  }
  return {best_precision, best_recall};
}

LabeledScores make_labeled_scores(const std::map<std::string, double>& score,
                                  const LabelMap& labels) {
  LabeledScores out;
  out.pairs.reserve(labels.size());
  for (const auto& [user, rec] : labels) {
    auto it = score.find(user);
    double s = it == score.end() ? 0.0 : it->second;
    out.pairs.emplace_back(s, rec.label == Label::io_driver ? 1 : 0);
  }
  return out;
}

}  // namespace coordnet::eval
