#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "filterbench/bench.hpp"
#include "filterbench/datagen.hpp"

namespace filterbench {

// %.17g textual doubles: round-trip exact and platform stable
std::string format_double(double v);

// Dataset on disk: CSV with header f1..fp,label plus a JSON sidecar carrying
// name, roles, the generating scenario and generator parameters, and seed.
void write_dataset_csv(const std::filesystem::path& path, const Dataset& ds);
void write_dataset_sidecar(const std::filesystem::path& path, const Dataset& ds,
                           const ScenarioSpec& spec, const GeneratorParams& params,
                           std::uint64_t seed);
Dataset read_dataset(const std::filesystem::path& csv_path,
                     const std::filesystem::path& sidecar_path);

// Results CSV, bit-exact header:
// scenario,method,classifier,repeat,fold,auc,relevant_fraction,n_selected,
// runtime_seconds,seed,selected_indices
extern const char* const kRunRecordHeader;
void write_records_csv(const std::filesystem::path& path,
                       const std::vector<RunRecord>& records);
std::vector<RunRecord> read_records_csv(const std::filesystem::path& path);

void write_manifest(const std::filesystem::path& path, const BenchConfig& config);

}  // namespace filterbench
