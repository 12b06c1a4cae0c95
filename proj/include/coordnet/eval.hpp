#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "coordnet/network.hpp"
#include "coordnet/types.hpp"

namespace coordnet::eval {

// (score, label) pairs; label 1 = io_driver.
struct LabeledScores {
  std::vector<std::pair<double, int>> pairs;
};

// Mann-Whitney AUC: probability a random positive outranks a random
// negative, ties counted 1/2. Computed from exact integer pair counts.
double roc_auc(const LabeledScores& s);

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool warning = false;  // empty flagged set
};

Prf precision_recall_f1(const std::set<std::string>& flagged, const LabelMap& labels);

double f1_score(double precision, double recall);

// Normalized mutual information with arithmetic-mean normalization.
// Users missing from one partition land in a reserved "none" group;
// a single-group partition returns 0 by convention.
double nmi(const std::map<std::string, std::string>& groups_a,
           const std::map<std::string, std::string>& groups_b);

// Fraction of io_driver users present in the network.
double coverage(const SimilarityNetwork& net, const LabelMap& labels);

// ROC curve points (fpr, tpr, threshold) for plot export.
struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
  double threshold = 0.0;
};
std::vector<RocPoint> roc_curve(const LabeledScores& s);

// Max precision over operating points whose recall is at least
// min_recall (scores swept high to low); pair is (precision, recall).
std::pair<double, double> precision_at_recall(const LabeledScores& s, double min_recall);

LabeledScores make_labeled_scores(const std::map<std::string, double>& score,
                                  const LabelMap& labels);

}  // namespace coordnet::eval
