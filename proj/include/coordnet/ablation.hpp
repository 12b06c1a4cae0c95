#pragma once

#include <string>
#include <vector>

#include "coordnet/classify.hpp"
#include "coordnet/network.hpp"
#include "coordnet/types.hpp"

namespace coordnet::eval {

struct AblationEntry {
  std::string left_out;  // "none" for the full set
  classify::EvalReport report;
  double delta_auc = 0.0;  // full AUC - this AUC
  double delta_f1 = 0.0;
};

// Runs the fused embed+classify pipeline on the full network set and
// once per leave-one-network-out configuration.
std::vector<AblationEntry> ablation(const std::vector<SimilarityNetwork>& nets,
                                    const LabelMap& labels,
                                    const classify::PipelineParams& params);

}  // namespace coordnet::eval
