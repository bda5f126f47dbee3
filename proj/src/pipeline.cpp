#include "filterbench/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>

#include "filterbench/io.hpp"

namespace filterbench {

namespace fs = std::filesystem;

BenchConfig to_bench_config(const RunConfig& config) {
  BenchConfig bench;
  bench.scenarios.clear();
  for (const auto& s : config.scenarios)
    if (s == "all") {
      for (const auto& spec : scenario_table()) bench.scenarios.push_back(spec.name);
    } else {
      bench.scenarios.push_back(s);
    }
  bench.methods = config.methods;
  bench.classifiers = config.classifiers;
  bench.folds = config.folds;
  bench.repeats = config.repeats;
  bench.k_policy.fixed = config.fixed_k;
  bench.master_seed = config.master_seed;
  bench.threads = config.threads;
  bench.zero_runtime = config.zero_runtime;
  bench.scale_observations = config.scale_observations;
  bench.classifier_trees = config.classifier_trees;
  return bench;
}

int cmd_generate(const RunConfig& config, std::ostream& err) {
  try {
    std::vector<ScenarioSpec> specs;
    for (const auto& name : config.scenarios) {
      if (name == "all") {
        const auto table = scenario_table();
        specs.insert(specs.end(), table.begin(), table.end());
      } else {
        specs.push_back(scenario_by_name(name));
      }
    }
    fs::create_directories(config.out_dir);
    const GeneratorParams params;
    for (auto spec : specs) {
      if (config.scale_observations > 0) spec.observations = config.scale_observations;
      const ScenarioData data = generate_with_noise(spec, config.master_seed, params);
      const fs::path base = fs::path(config.out_dir) / spec.name;
      write_dataset_csv(base.string() + ".csv", data.noisy);
      write_dataset_sidecar(base.string() + ".json", data.noisy, spec, params,
                            config.master_seed);
      if (!config.quiet) err << "wrote " << base.string() << ".csv\n";
    }
    return 0;
  } catch (const Error& e) {
    err << "generate: " << e.what() << '\n';
    return 2;
  }
}

int cmd_bench(const RunConfig& config, std::ostream& err) {
  BenchConfig bench;
  try {
    bench = to_bench_config(config);
    // validate names up front so config errors exit 2 before any work
    for (const auto& s : bench.scenarios) scenario_by_name(s);
    for (const auto& m : bench.methods)
      if (m != "all") method_by_name(m);
    fs::create_directories(config.out_dir);
  } catch (const Error& e) {
    err << "bench: " << e.what() << '\n';
    return 2;
  }
  try {
    const auto records = run_benchmark(
        bench, config.quiet ? std::function<void(const std::string&)>()
                            : [&err](const std::string& msg) { err << msg << '\n'; });
    write_records_csv(fs::path(config.out_dir) / "results.csv", records);
    write_manifest(fs::path(config.out_dir) / "manifest.json", bench);
    return 0;
  } catch (const Error& e) {
    err << "bench: " << e.what() << '\n';
    return 3;
  }
}

std::vector<std::string> scenario_group_names() {
  return {"Noise", "Redundant", "Imbalanced", "Dimensionality"};
}

std::vector<std::string> scenarios_in_group(const std::string& group) {
  if (group == "Noise")
    return {"Baseline", "ClassNoise_1", "ClassNoise_2", "ClassNoise_3",
            "AttNoise_1", "AttNoise_2", "AttNoise_3"};
  if (group == "Redundant") return {"Baseline", "Redundant_1", "Redundant_2"};
  if (group == "Imbalanced") return {"Baseline", "Imbalanced_1", "Imbalanced_2"};
  if (group == "Dimensionality")
    return {"Baseline", "Dimensionality_1", "Dimensionality_2"};
  throw Error("unknown scenario group: " + group);
}

namespace {

std::vector<ControlVar> group_controls(const std::string& group) {
  if (group == "Noise")
    return {ControlVar::ClassNoise, ControlVar::AttributeNoise, ControlVar::Classifier};
  if (group == "Redundant")
    return {ControlVar::Classifier, ControlVar::NumRedundantFeatures};
  if (group == "Imbalanced") return {ControlVar::Classifier, ControlVar::MinClassDev};
  return {ControlVar::Classifier, ControlVar::RelFeatObs};
}

std::string stars(double coef, double se, std::size_t n, std::size_t q) {
  if (se <= 0.0) return "";
  const double t = std::fabs(coef / se);
  const double p = 2.0 * (1.0 - student_t_cdf(t, static_cast<double>(n - q)));
  if (p < 0.001) return "***";
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  return "";
}

// drop controls that are constant over the given records
std::vector<ControlVar> usable_controls(const std::vector<RunRecord>& records,
                                        std::vector<ControlVar> controls) {
  auto varies = [&](ControlVar c) {
    if (c == ControlVar::Classifier) {
      std::set<std::string> clf;
      for (const auto& r : records) clf.insert(r.classifier);
      return clf.size() > 1;
    }
    std::set<std::string> seen;
    for (const auto& r : records) {
      const auto& spec = scenario_by_name(r.scenario);
      double v = 0.0;
      switch (c) {
        case ControlVar::ClassNoise: v = spec.class_noise; break;
        case ControlVar::AttributeNoise: v = spec.attribute_noise; break;
        case ControlVar::NumRedundantFeatures:
          v = spec.features_redundant;
          break;
        case ControlVar::MinClassDev: v = 10.0 * (0.5 - spec.minority_fraction); break;
        case ControlVar::RelFeatObs:
          v = static_cast<double>(spec.features_total) / spec.observations;
          break;
        default: break;
      }
      seen.insert(format_double(v));
      if (seen.size() > 1) return true;
    }
    return false;
  };
  std::erase_if(controls, [&](ControlVar c) { return !varies(c); });
  return controls;
}

}  // namespace

int cmd_analyze(const RunConfig& config, std::ostream& err) {
  std::vector<RunRecord> records;
  Criterion outcome;
  try {
    if (config.runs_csv.empty()) throw SchemaError("analyze: --runs is required");
    records = read_records_csv(config.runs_csv);
    outcome = criterion_from_string(config.criterion);
    fs::create_directories(config.out_dir);
  } catch (const Error& e) {
    err << "analyze: " << e.what() << '\n';
    return 2;
  }
  try {
    std::ofstream out(fs::path(config.out_dir) / ("model_" + config.criterion + ".csv"));
    out << "group,term,coefficient,robust_se,significance,n_obs,r_squared,adj_r_squared,"
           "f_statistic\n";
    for (const auto& group : scenario_group_names()) {
      const auto wanted = scenarios_in_group(group);
      std::vector<RunRecord> subset;
      std::set<std::string> present;
      for (const auto& r : records)
        if (std::find(wanted.begin(), wanted.end(), r.scenario) != wanted.end()) {
          subset.push_back(r);
          present.insert(r.scenario);
        }
      // a group needs variation beyond the shared zero point
      if (present.size() < 2) continue;
      bool has_reference = false;
      for (const auto& r : subset) has_reference |= r.method == "none";
      if (!has_reference) continue;

      RegressionSpec spec;
      spec.outcome = outcome;
      spec.controls = usable_controls(subset, group_controls(group));
      const AnalysisModel model = fit_criterion_model(subset, spec);
      for (std::size_t j = 0; j < model.terms.size(); ++j) {
        out << group << ',' << model.terms[j] << ','
            << format_double(model.coefficients[j]) << ','
            << format_double(model.robust_se[j]) << ','
            << stars(model.coefficients[j], model.robust_se[j], model.n_obs,
                     model.terms.size())
            << ',' << model.n_obs << ',' << format_double(model.r_squared) << ','
            << format_double(model.adj_r_squared) << ','
            << format_double(model.f_statistic) << '\n';
      }
      if (!config.quiet)
        err << "analyze: " << group << " model on " << model.n_obs << " rows\n";
    }
    return 0;
  } catch (const Error& e) {
    err << "analyze: " << e.what() << '\n';
    return 2;
  }
}

int cmd_report(const RunConfig& config, std::ostream& err) {
  std::vector<RunRecord> records;
  try {
    if (config.runs_csv.empty()) throw SchemaError("report: --runs is required");
    records = read_records_csv(config.runs_csv);
    fs::create_directories(config.out_dir);
  } catch (const Error& e) {
    err << "report: " << e.what() << '\n';
    return 2;
  }
  try {
    std::set<std::string> method_set, classifier_set;
    for (const auto& r : records) {
      method_set.insert(r.method);
      classifier_set.insert(r.classifier);
    }
    const std::vector<std::string> classifiers(classifier_set.begin(), classifier_set.end());

    // per-method means over all records
    std::map<std::string, double> mean_auc, mean_rel, mean_runtime, mean_stab;
    for (const auto& m : method_set) {
      double sa = 0, sr = 0, st = 0;
      std::size_t cnt = 0;
      for (const auto& r : records) {
        if (r.method != m) continue;
        sa += r.auc;
        sr += r.relevant_fraction;
        st += r.runtime_seconds;
        ++cnt;
      }
      mean_auc[m] = sa / static_cast<double>(cnt);
      mean_rel[m] = sr / static_cast<double>(cnt);
      mean_runtime[m] = st / static_cast<double>(cnt);
    }
    for (const auto& s : pooled_stability(records, classifiers)) {
      if (!s.defined) continue;
      mean_stab[s.method] += s.value;
    }
    std::map<std::string, int> stab_count;
    for (const auto& s : pooled_stability(records, classifiers))
      if (s.defined) stab_count[s.method]++;
    for (auto& [m, v] : mean_stab) v /= stab_count[m];

    auto runtime_grade = [](double seconds) {
      if (seconds < 0.1) return Grade::PlusPlus;
      if (seconds < 1.0) return Grade::Plus;
      if (seconds < 10.0) return Grade::Zero;
      if (seconds < 60.0) return Grade::Minus;
      return Grade::MinusMinus;
    };

    const auto auc_grades = quantile_grade(mean_auc, true);
    const auto rel_grades = quantile_grade(mean_rel, true);
    const bool have_stab = mean_stab.size() >= 2;
    const auto stab_grades =
        have_stab ? quantile_grade(mean_stab, true) : std::map<std::string, Grade>{};

    std::ofstream grades(fs::path(config.out_dir) / "report_grades.csv");
    grades << "method,auc,relevant_fraction,stability,runtime\n";
    std::ofstream md(fs::path(config.out_dir) / "report_grades.md");
    md << "| method | auc | relevant | stability | runtime |\n";
    md << "|---|---|---|---|---|\n";
    for (const auto& m : method_set) {
      const std::string stab =
          mean_stab.count(m) && have_stab ? to_string(stab_grades.at(m)) : "n/a";
      grades << m << ',' << to_string(auc_grades.at(m)) << ','
             << to_string(rel_grades.at(m)) << ',' << stab << ','
             << to_string(runtime_grade(mean_runtime.at(m))) << '\n';
      md << "| " << m << " | " << to_string(auc_grades.at(m)) << " | "
         << to_string(rel_grades.at(m)) << " | " << stab << " | "
         << to_string(runtime_grade(mean_runtime.at(m))) << " |\n";
    }

    // rank summary per criterion (1 = best)
    auto ranks_of = [](const std::map<std::string, double>& vals, bool higher) {
      std::vector<std::pair<std::string, double>> v(vals.begin(), vals.end());
      std::sort(v.begin(), v.end(), [&](const auto& a, const auto& b) {
        return higher ? a.second > b.second : a.second < b.second;
      });
      std::map<std::string, std::size_t> out;
      for (std::size_t i = 0; i < v.size(); ++i) out[v[i].first] = i + 1;
      return out;
    };
    const auto rank_auc = ranks_of(mean_auc, true);
    const auto rank_rel = ranks_of(mean_rel, true);
    const auto rank_rt = ranks_of(mean_runtime, false);
    std::ofstream ranks(fs::path(config.out_dir) / "report_ranks.csv");
    ranks << "method,mean_auc,rank_auc,mean_relevant_fraction,rank_relevant,"
             "mean_stability,mean_runtime_seconds,rank_runtime\n";
    for (const auto& m : method_set) {
      ranks << m << ',' << format_double(mean_auc.at(m)) << ',' << rank_auc.at(m) << ','
            << format_double(mean_rel.at(m)) << ',' << rank_rel.at(m) << ','
            << (mean_stab.count(m) ? format_double(mean_stab.at(m)) : "nan") << ','
            << format_double(mean_runtime.at(m)) << ',' << rank_rt.at(m) << '\n';
    }

    // method-characteristic comparisons: per-method mean AUC on the matching
    // scenario group, flagged vs unflagged
    std::ofstream tests(fs::path(config.out_dir) / "report_tests.csv");
    tests << "comparison,n_flagged,n_other,t,df,p_one_sided,cohens_d\n";
    struct GroupTest {
      const char* label;
      const char* group;
      bool exclude_cost;
      std::function<bool(const MethodInfo&)> flagged;
    };
    const GroupTest group_tests[] = {
        {"attribute_noise_robust", "Noise", true,
         [](const MethodInfo& m) { return m.robust_attribute_noise; }},
        {"class_noise_robust", "Noise", true,
         [](const MethodInfo& m) { return m.robust_class_noise; }},
        {"cost_sensitive", "Imbalanced", false,
         [](const MethodInfo& m) { return m.cost_sensitive; }},
        {"multivariate", "Redundant", true,
         [](const MethodInfo& m) { return m.multivariate; }},
    };
    for (const auto& gt : group_tests) {
      const auto wanted = scenarios_in_group(gt.group);
      std::map<std::string, std::pair<double, std::size_t>> per_method;
      for (const auto& r : records) {
        if (r.method == "none") continue;
        if (std::find(wanted.begin(), wanted.end(), r.scenario) == wanted.end()) continue;
        auto& acc = per_method[r.method];
        acc.first += r.auc;
        acc.second += 1;
      }
      std::vector<double> flagged, other;
      for (const auto& [name, acc] : per_method) {
        const MethodInfo& info = method_by_name(name);
        if (gt.exclude_cost && info.cost_sensitive) continue;
        (gt.flagged(info) ? flagged : other)
            .push_back(acc.first / static_cast<double>(acc.second));
      }
      if (flagged.size() < 2 || other.size() < 2) continue;
      const WelchResult res = welch_t(flagged, other);
      tests << gt.label << ',' << flagged.size() << ',' << other.size() << ','
            << format_double(res.t) << ',' << format_double(res.df) << ','
            << format_double(res.p_one_sided) << ',' << format_double(res.cohens_d)
            << '\n';
    }

    // runtime vs predictive performance across methods
    {
      std::vector<double> rt, aucv;
      for (const auto& m : method_set) {
        if (m == "none") continue;
        rt.push_back(mean_runtime.at(m));
        aucv.push_back(mean_auc.at(m));
      }
      std::ofstream corr(fs::path(config.out_dir) / "report_runtime_auc.csv");
      corr << "r,df,p_two_sided\n";
      if (rt.size() >= 3) {
        try {
          const PearsonResult res = pearson_r(rt, aucv);
          corr << format_double(res.r) << ',' << res.df << ','
               << format_double(res.p_two_sided) << '\n';
        } catch (const DegenerateInput&) {
          corr << "nan,0,nan\n";
        }
      }
    }
    if (!config.quiet) err << "report: " << method_set.size() << " methods\n";
    return 0;
  } catch (const Error& e) {
    err << "report: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace filterbench
