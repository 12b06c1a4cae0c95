#include "coordnet/ablation.hpp"

#include <stdexcept>

#include "coordnet/rng.hpp"

namespace coordnet::eval {

std::vector<AblationEntry> ablation(const std::vector<SimilarityNetwork>& nets,
                                    const LabelMap& labels,
                                    const classify::PipelineParams& params) {
  if (nets.size() < 2) throw std::invalid_argument("ablation needs at least 2 networks");

  auto run = [&](const std::vector<SimilarityNetwork>& subset) {
    auto emb = classify::embed_fused(subset, params);
    auto features = classify::features_from_embedding(emb, labels);
    classify::CrossValParams cv = params.cv;
    cv.seed = mix_seed(params.seed, 0xAB1A7ull);
    return classify::cross_validate(features, cv);
  };

  std::vector<AblationEntry> out;
  AblationEntry full;
  full.left_out = "none";
  full.report = run(nets);
  out.push_back(full);

  for (std::size_t i = 0; i < nets.size(); ++i) {
    std::vector<SimilarityNetwork> subset;
    for (std::size_t j = 0; j < nets.size(); ++j)
      if (j != i) subset.push_back(nets[j]);
    AblationEntry entry;
    entry.left_out = nets[i].kind().empty() ? "net" + std::to_string(i) : nets[i].kind();
    entry.report = run(subset);
    entry.delta_auc = full.report.auc - entry.report.auc;
    entry.delta_f1 = full.report.f1 - entry.report.f1;
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace coordnet::eval
