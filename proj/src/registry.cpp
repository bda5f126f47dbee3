#include "filterbench/registry.hpp"

#include <numeric>
#include <unordered_map>

#include "filterbench/multivariate.hpp"
#include "filterbench/relief.hpp"

namespace filterbench {

namespace {

FeatureSet cut(const FeatureWeights& w, std::size_t k) {
  return select_top_k(w, std::min(k, w.weights.size()));
}

MethodInfo split_method(const char* alias, SplitScoreMethod m) {
  MethodInfo info;
  info.name = to_string(m);
  info.aliases = {alias};
  if (m == SplitScoreMethod::MyopicReliefF) {
    info.robust_class_noise = true;
    info.robust_attribute_noise = true;
  }
  info.select = [m](const SelectionContext& ctx) {
    return cut(score_split(ctx.train, m, ctx.disc), ctx.k);
  };
  return info;
}

MethodInfo stat_method(const char* alias, StatScoreMethod m) {
  MethodInfo info;
  info.name = to_string(m);
  info.aliases = {alias};
  info.select = [m](const SelectionContext& ctx) {
    return cut(score_stat(ctx.train, m, ctx.disc), ctx.k);
  };
  return info;
}

MethodInfo cost_method(const char* alias, CostScoreMethod m) {
  MethodInfo info;
  info.name = to_string(m);
  info.aliases = {alias};
  info.cost_sensitive = true;
  info.select = [m](const SelectionContext& ctx) {
    Rng rng(ctx.seed);
    return cut(score_cost_sensitive(ctx.train, m, ctx.cost.value_or(CostMatrix{}),
                                    ctx.disc, rng),
               ctx.k);
  };
  return info;
}

MethodInfo relief_method(std::vector<std::string> aliases, ReliefVariant v) {
  MethodInfo info;
  info.name = to_string(v);
  info.aliases = std::move(aliases);
  info.cost_sensitive = relief_is_cost_sensitive(v);
  info.multivariate = true;
  info.robust_class_noise = v != ReliefVariant::ReliefFexpRank;
  info.robust_attribute_noise = v != ReliefVariant::ReliefFexpRank;
  info.select = [v](const SelectionContext& ctx) {
    ReliefParams params;
    params.variant = v;
    if (relief_is_cost_sensitive(v)) params.cost = ctx.cost.value_or(CostMatrix{});
    Rng rng(ctx.seed);
    return cut(relief_score(ctx.train, params, rng), ctx.k);
  };
  return info;
}

MethodInfo mi_method(const char* alias, MiCriterion c) {
  MethodInfo info;
  info.name = to_string(c);
  info.aliases = {alias};
  info.multivariate = true;
  info.select = [c](const SelectionContext& ctx) {
    return greedy_mi_select(ctx.train, c, std::min(ctx.k, ctx.train.cols()), ctx.disc);
  };
  return info;
}

MethodInfo rf_method(const char* name, const char* alias, ImportanceKind kind, int trees) {
  MethodInfo info;
  info.name = name;
  info.aliases = {alias};
  info.multivariate = true;
  info.select = [kind, trees](const SelectionContext& ctx) {
    Rng rng(ctx.seed);
    return cut(rf_importance(ctx.train, kind, trees, rng), ctx.k);
  };
  return info;
}

std::vector<MethodInfo> build_registry() {
  std::vector<MethodInfo> reg;

  MethodInfo none;
  none.name = "none";
  none.select = [](const SelectionContext& ctx) {
    FeatureSet all;
    all.indices.resize(ctx.train.cols());
    std::iota(all.indices.begin(), all.indices.end(), 0);
    all.scores.assign(all.indices.size(), 0.0);
    return all;
  };
  reg.push_back(std::move(none));

  reg.push_back(split_method("C:Accuracy", SplitScoreMethod::Accuracy));
  reg.push_back(split_method("C:DistAngle", SplitScoreMethod::DistAngle));
  reg.push_back(split_method("C:DistAUC", SplitScoreMethod::DistAUC));
  reg.push_back(split_method("C:DistEuclid", SplitScoreMethod::DistEuclid));
  reg.push_back(split_method("C:DistHellinger", SplitScoreMethod::DistHellinger));
  reg.push_back(split_method("C:DKM", SplitScoreMethod::DKM));
  reg.push_back(cost_method("C:DKMcost", CostScoreMethod::DKMcost));
  reg.push_back(split_method("C:EqualDKM", SplitScoreMethod::EqualDKM));
  reg.push_back(split_method("C:EqualGini", SplitScoreMethod::EqualGini));
  reg.push_back(split_method("C:EqualHellinger", SplitScoreMethod::EqualHellinger));
  reg.push_back(split_method("C:EqualInf", SplitScoreMethod::EqualInf));
  reg.push_back(split_method("C:GainRatio", SplitScoreMethod::GainRatio));
  reg.push_back(cost_method("C:GainRatioCost", CostScoreMethod::GainRatioCost));
  reg.push_back(split_method("C:Gini", SplitScoreMethod::Gini));
  reg.push_back(split_method("C:ImpurityEuclid", SplitScoreMethod::ImpurityEuclid));
  reg.push_back(split_method("C:ImpurityHellinger", SplitScoreMethod::ImpurityHellinger));
  reg.push_back(split_method("C:InfGain", SplitScoreMethod::InfGain));
  reg.push_back(split_method("C:MDL", SplitScoreMethod::MDL));
  reg.push_back(cost_method("C:MDLsmp", CostScoreMethod::MDLsmp));
  reg.push_back(split_method("C:MyopicReliefF", SplitScoreMethod::MyopicReliefF));

  reg.push_back(relief_method({"C:Relief", "F:relief"}, ReliefVariant::Relief));
  reg.push_back(relief_method({"C:ReliefFavgC"}, ReliefVariant::ReliefFavgC));
  reg.push_back(relief_method({"C:ReliefFbestK"}, ReliefVariant::ReliefFbestK));
  reg.push_back(relief_method({"C:ReliefFdistance"}, ReliefVariant::ReliefFdistance));
  reg.push_back(relief_method({"C:ReliefFequalK"}, ReliefVariant::ReliefFequalK));
  reg.push_back(relief_method({"C:ReliefFexpC"}, ReliefVariant::ReliefFexpC));
  reg.push_back(relief_method({"C:ReliefFexpRank"}, ReliefVariant::ReliefFexpRank));
  reg.push_back(relief_method({"C:ReliefFmerit"}, ReliefVariant::ReliefFmerit));
  reg.push_back(relief_method({"C:ReliefFpa"}, ReliefVariant::ReliefFpa));
  reg.push_back(relief_method({"C:ReliefFpe"}, ReliefVariant::ReliefFpe));
  reg.push_back(relief_method({"C:ReliefFsmp"}, ReliefVariant::ReliefFsmp));
  reg.push_back(relief_method({"C:ReliefFsqrDistance"}, ReliefVariant::ReliefFsqrDistance));
  reg.push_back(relief_method({"C:ReliefKukar"}, ReliefVariant::ReliefKukar));

  reg.push_back(split_method("C:UniformAccuracy", SplitScoreMethod::UniformAccuracy));
  reg.push_back(split_method("C:UniformDKM", SplitScoreMethod::UniformDKM));
  reg.push_back(split_method("C:UniformGini", SplitScoreMethod::UniformGini));
  reg.push_back(split_method("C:UniformInf", SplitScoreMethod::UniformInf));

  {
    MethodInfo cfs;
    cfs.name = "cfs";
    cfs.aliases = {"F:cfs"};
    cfs.multivariate = true;
    cfs.robust_class_noise = true;
    cfs.robust_attribute_noise = true;
    cfs.select = [](const SelectionContext& ctx) { return cfs_select(ctx.train, ctx.disc); };
    reg.push_back(std::move(cfs));
  }
  reg.push_back(stat_method("F:chi.squared", StatScoreMethod::ChiSquared));
  {
    MethodInfo cons;
    cons.name = "consistency";
    cons.aliases = {"F:consistency"};
    cons.multivariate = true;
    cons.robust_class_noise = true;
    cons.select = [](const SelectionContext& ctx) {
      return consistency_select(ctx.train, ctx.disc);
    };
    reg.push_back(std::move(cons));
  }
  reg.push_back(stat_method("F:gain.ratio", StatScoreMethod::GainRatioAlt));
  reg.push_back(stat_method("F:oneR", StatScoreMethod::OneR));
  reg.push_back(rf_method("random_forest_importance", "F:random.forest.importance",
                          ImportanceKind::Permutation, 500));
  reg.push_back(stat_method("F:symmetrical.uncertainty",
                            StatScoreMethod::SymmetricalUncertainty));
  reg.push_back(stat_method("m:anova", StatScoreMethod::AnovaF));
  reg.push_back(stat_method("m:auc", StatScoreMethod::PerFeatureAuc));
  reg.push_back(stat_method("m:kruskal.test", StatScoreMethod::KruskalWallis));
  reg.push_back(rf_method("ranger_impurity", "m:ranger_impurity",
                          ImportanceKind::Impurity, 500));
  reg.push_back(rf_method("ranger_permutation", "m:ranger_permutation",
                          ImportanceKind::Permutation, 500));

  reg.push_back(mi_method("p:CMIM", MiCriterion::CMIM));
  reg.push_back(mi_method("p:DISR", MiCriterion::DISR));
  reg.push_back(mi_method("p:JIM", MiCriterion::JIM));
  reg.push_back(mi_method("p:JMI", MiCriterion::JMI));
  reg.push_back(mi_method("p:JMIM", MiCriterion::JMIM));
  reg.push_back(mi_method("p:MIM", MiCriterion::MIM));
  reg.push_back(mi_method("p:MRMR", MiCriterion::MRMR));
  reg.push_back(mi_method("p:NJMIM", MiCriterion::NJMIM));

  return reg;
}

}  // namespace

const std::vector<MethodInfo>& method_registry() {
  static const std::vector<MethodInfo> reg = build_registry();
  return reg;
}

const MethodInfo& method_by_name(const std::string& name) {
  static const auto index = [] {
    std::unordered_map<std::string, std::size_t> idx;
    const auto& reg = method_registry();
    for (std::size_t i = 0; i < reg.size(); ++i) {
      idx.emplace(reg[i].name, i);
      for (const auto& a : reg[i].aliases) idx.emplace(a, i);
    }
    return idx;
  }();
  const auto it = index.find(name);
  if (it == index.end()) throw UnknownMethod("unknown method: " + name);
  return method_registry()[it->second];
}

std::vector<std::string> all_method_names(bool include_cost) {
  std::vector<std::string> names;
  for (const auto& m : method_registry())
    if (include_cost || !m.cost_sensitive) names.push_back(m.name);
  return names;
}

}  // namespace filterbench
