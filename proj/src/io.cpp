#include "filterbench/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace filterbench {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_dataset_csv(const std::filesystem::path& path, const Dataset& ds) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  for (std::size_t j = 0; j < ds.cols(); ++j) out << 'f' << (j + 1) << ',';
  out << "label\n";
  for (std::size_t i = 0; i < ds.rows(); ++i) {
    for (std::size_t j = 0; j < ds.cols(); ++j) out << format_double(ds(i, j)) << ',';
    out << ds.label(i) << '\n';
  }
}

void write_dataset_sidecar(const std::filesystem::path& path, const Dataset& ds,
                           const ScenarioSpec& spec, const GeneratorParams& params,
                           std::uint64_t seed) {
  json j;
  j["name"] = ds.name();
  j["seed"] = seed;
  json roles = json::array();
  for (std::size_t k = 0; k < ds.cols(); ++k) roles.push_back(to_string(ds.role(k)));
  j["roles"] = roles;
  j["scenario"] = {
      {"name", spec.name},
      {"observations", spec.observations},
      {"features_total", spec.features_total},
      {"features_relevant", spec.features_relevant},
      {"features_redundant", spec.features_redundant},
      {"class_noise", spec.class_noise},
      {"attribute_noise", spec.attribute_noise},
      {"minority_fraction", spec.minority_fraction},
  };
  j["generator"] = {
      {"clusters_per_class", params.clusters_per_class},
      {"class_sep", params.class_sep},
      {"redundant_noise_sd", params.redundant_noise_sd},
      {"scale_log_min", params.scale_log_min},
      {"scale_log_max", params.scale_log_max},
      {"shift_min", params.shift_min},
      {"shift_max", params.shift_max},
  };
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

Dataset read_dataset(const std::filesystem::path& csv_path,
                     const std::filesystem::path& sidecar_path) {
  std::ifstream meta(sidecar_path);
  if (!meta) throw Error("cannot read " + sidecar_path.string());
  json j = json::parse(meta);

  std::ifstream in(csv_path);
  if (!in) throw Error("cannot read " + csv_path.string());
  std::string header;
  if (!std::getline(in, header)) throw SchemaError("empty dataset csv");
  std::size_t p = 0;
  for (char c : header)
    if (c == ',') ++p;  // p feature columns + label

  std::vector<double> values;
  std::vector<int> labels;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    for (std::size_t j = 0; j < p; ++j) {
      if (!std::getline(ss, cell, ',')) throw SchemaError("short dataset row");
      values.push_back(std::stod(cell));
    }
    if (!std::getline(ss, cell, ',')) throw SchemaError("missing label");
    labels.push_back(std::stoi(cell));
  }
  const std::size_t n = labels.size();
  Dataset ds(j.value("name", csv_path.stem().string()), n, p);
  for (std::size_t i = 0; i < n; ++i) {
    ds.set_label(i, labels[i]);
    for (std::size_t k = 0; k < p; ++k) ds(i, k) = values[i * p + k];
  }
  const auto& roles = j.at("roles");
  if (roles.size() != p) throw SchemaError("sidecar roles length mismatch");
  for (std::size_t k = 0; k < p; ++k)
    ds.set_role(k, role_from_string(roles[k].get<std::string>()));
  ds.validate();
  return ds;
}

const char* const kRunRecordHeader =
    "scenario,method,classifier,repeat,fold,auc,relevant_fraction,n_selected,"
    "runtime_seconds,seed,selected_indices";

void write_records_csv(const std::filesystem::path& path,
                       const std::vector<RunRecord>& records) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << kRunRecordHeader << '\n';
  for (const auto& r : records) {
    out << r.scenario << ',' << r.method << ',' << r.classifier << ',' << r.repeat << ','
        << r.fold << ',' << format_double(r.auc) << ',' << format_double(r.relevant_fraction)
        << ',' << r.selected.size() << ',' << format_double(r.runtime_seconds) << ','
        << r.seed << ',';
    for (std::size_t i = 0; i < r.selected.size(); ++i) {
      if (i) out << ';';
      out << r.selected[i];
    }
    out << '\n';
  }
}

std::vector<RunRecord> read_records_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  std::string header;
  if (!std::getline(in, header) || header != kRunRecordHeader)
    throw SchemaError("results csv header mismatch in " + path.string());

  std::vector<RunRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    RunRecord r;
    auto next = [&](const char* what) {
      if (!std::getline(ss, cell, ',')) throw SchemaError(std::string("missing ") + what);
      return cell;
    };
    r.scenario = next("scenario");
    r.method = next("method");
    r.classifier = next("classifier");
    r.repeat = std::stoi(next("repeat"));
    r.fold = std::stoi(next("fold"));
    r.auc = std::stod(next("auc"));
    r.relevant_fraction = std::stod(next("relevant_fraction"));
    const std::size_t n_selected = std::stoul(next("n_selected"));
    r.runtime_seconds = std::stod(next("runtime_seconds"));
    r.seed = std::stoull(next("seed"));
    if (std::getline(ss, cell, ',') && !cell.empty()) {
      std::stringstream sel(cell);
      std::string idx;
      while (std::getline(sel, idx, ';')) r.selected.push_back(std::stoul(idx));
    }
    if (r.selected.size() != n_selected)
      throw SchemaError("selected_indices count mismatch");
    records.push_back(std::move(r));
  }
  return records;
}

void write_manifest(const std::filesystem::path& path, const BenchConfig& config) {
  json j;
  j["tool"] = "filterbench";
  j["registry_version"] = 1;
  j["scenarios"] = config.scenarios;
  j["methods"] = config.methods;
  j["classifiers"] = config.classifiers;
  j["folds"] = config.folds;
  j["repeats"] = config.repeats;
  j["k_policy"] = config.k_policy.describe();
  j["master_seed"] = config.master_seed;
  j["threads"] = config.threads;
  j["zero_runtime"] = config.zero_runtime;
  j["scale_observations"] = config.scale_observations;
  j["cost"] = {{"cost01", config.cost.cost01}, {"cost10", config.cost.cost10}};
  j["classifier_trees"] = config.classifier_trees;
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace filterbench
