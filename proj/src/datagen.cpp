#include "filterbench/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "filterbench/kernels.hpp"

namespace filterbench {

void ScenarioSpec::validate() const {
  if (observations < 2 || features_total < 1)
    throw InvalidSpec(name + ": observations/features out of range");
  if (features_relevant < 0 || features_redundant < 0 ||
      features_relevant + features_redundant > features_total)
    throw InvalidSpec(name + ": relevant + redundant exceeds total");
  if (class_noise < 0.0 || class_noise > 1.0 || attribute_noise < 0.0 ||
      attribute_noise > 1.0)
    throw InvalidSpec(name + ": noise rate outside [0,1]");
  if (minority_fraction <= 0.0 || minority_fraction > 0.5)
    throw InvalidSpec(name + ": minority fraction outside (0,0.5]");
}

namespace {

// distinct hypercube vertices in {-sep,+sep}^d, one per cluster
std::vector<std::vector<double>> pick_vertices(int count, int dim, double sep, Rng& rng) {
  std::vector<std::uint64_t> codes;
  if (dim < 63 && (1ULL << dim) <= 4096) {
    std::vector<std::uint64_t> all(1ULL << dim);
    std::iota(all.begin(), all.end(), 0);
    rng.shuffle(all);
    const std::size_t take = std::min<std::size_t>(count, all.size());
    codes.assign(all.begin(), all.begin() + take);
    // fewer vertices than clusters only when 2^dim < count; reuse cyclically
    while (codes.size() < static_cast<std::size_t>(count))
      codes.push_back(codes[codes.size() % take]);
  } else {
    while (codes.size() < static_cast<std::size_t>(count)) {
      std::uint64_t c = 0;
      for (int b = 0; b < dim; ++b)
        c = (c << 1) | (rng.next_u64() & 1);
      if (std::find(codes.begin(), codes.end(), c) == codes.end()) codes.push_back(c);
    }
  }
  std::vector<std::vector<double>> vertices;
  vertices.reserve(count);
  for (int v = 0; v < count; ++v) {
    std::vector<double> vertex(dim);
    for (int b = 0; b < dim; ++b)
      vertex[b] = ((codes[v] >> b) & 1) ? sep : -sep;
    vertices.push_back(std::move(vertex));
  }
  return vertices;
}

}  // namespace

Dataset generate(const ScenarioSpec& spec, Rng& rng, const GeneratorParams& params) {
  spec.validate();
  const int n = spec.observations;
  const int p = spec.features_total;
  const int n_rel = spec.features_relevant;
  const int n_red = spec.features_redundant;
  const int n_irr = p - n_rel - n_red;

  // class sizes follow the minority fraction exactly
  const int n_minority = static_cast<int>(std::lround(spec.minority_fraction * n));
  const int n_majority = n - n_minority;

  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = i < n_majority ? 0 : 1;

  const int n_clusters = 2 * params.clusters_per_class;
  const auto vertices = pick_vertices(n_clusters, std::max(n_rel, 1), params.class_sep, rng);

  // cluster c serves class c % 2; split each class count evenly over its
  // clusters
  std::vector<int> cluster_of(n);
  {
    int pos = 0;
    for (int cls = 0; cls < 2; ++cls) {
      const int size = cls == 0 ? n_majority : n_minority;
      for (int i = 0; i < size; ++i, ++pos)
        cluster_of[pos] = cls + 2 * (i % params.clusters_per_class);
    }
  }

  Dataset ds(spec.name, n, p);
  // relevant block: unit-variance Gaussians around the cluster vertex
  for (int i = 0; i < n; ++i) {
    const auto& vert = vertices[cluster_of[i]];
    ds.set_label(i, labels[i]);
    for (int j = 0; j < n_rel; ++j)
      ds(i, j) = vert[j] + rng.gaussian();
  }
  // redundant block: random linear combinations of the relevant block plus
  // small Gaussian noise
  if (n_red > 0) {
    std::vector<double> w(static_cast<std::size_t>(n_red) * n_rel);
    for (auto& x : w) x = rng.uniform(-1.0, 1.0);
    for (int i = 0; i < n; ++i) {
      const double* rel = &ds(i, 0);
      for (int r = 0; r < n_red; ++r) {
        double v = kernels::active().dot(rel, &w[static_cast<std::size_t>(r) * n_rel],
                                         static_cast<std::size_t>(n_rel));
        ds(i, n_rel + r) = v + params.redundant_noise_sd * rng.gaussian();
      }
    }
  }
  // irrelevant block: iid standard normal
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n_irr; ++j)
      ds(i, n_rel + n_red + j) = rng.gaussian();

  for (int j = 0; j < p; ++j)
    ds.set_role(j, j < n_rel               ? FeatureRole::Relevant
                   : j < n_rel + n_red     ? FeatureRole::Redundant
                                           : FeatureRole::Irrelevant);

  // per-feature random rescale and shift
  for (int j = 0; j < p; ++j) {
    const double scale = std::exp(
        rng.uniform(std::log(params.scale_log_min), std::log(params.scale_log_max)));
    const double shift = rng.uniform(params.shift_min, params.shift_max);
    for (int i = 0; i < n; ++i) ds(i, j) = ds(i, j) * scale + shift;
  }

  // randomize the order of columns and rows
  std::vector<std::size_t> col_perm(p), row_perm(n);
  std::iota(col_perm.begin(), col_perm.end(), 0);
  std::iota(row_perm.begin(), row_perm.end(), 0);
  rng.shuffle(col_perm);
  rng.shuffle(row_perm);
  Dataset shuffled = ds.subset_cols(col_perm).subset_rows(row_perm);
  shuffled.set_name(spec.name);
  return shuffled;
}

Dataset inject_class_noise(const Dataset& ds, double rate, Rng& rng) {
  if (rate < 0.0 || rate > 1.0) throw RateOutOfRange("inject_class_noise: rate outside [0,1]");
  Dataset out = ds;
  const std::size_t n = ds.rows();
  const auto flips = static_cast<std::size_t>(std::lround(rate * static_cast<double>(n)));
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  rng.shuffle(idx);
  for (std::size_t k = 0; k < flips; ++k)
    out.set_label(idx[k], 1 - ds.label(idx[k]));
  return out;
}

Dataset inject_attribute_noise(const Dataset& ds, double rate, Rng& rng) {
  if (rate < 0.0 || rate > 1.0)
    throw RateOutOfRange("inject_attribute_noise: rate outside [0,1]");
  Dataset out = ds;
  const std::size_t n = ds.rows(), p = ds.cols();
  if (rate == 0.0 || n < 2) return out;
  for (std::size_t j = 0; j < p; ++j) {
    const auto col = ds.column(j);
    const double mean = kernels::active().sum(col.data(), n) / static_cast<double>(n);
    double ss = 0.0;
    for (double v : col) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    if (sd == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) out(i, j) += rate * sd * rng.gaussian();
  }
  return out;
}

std::vector<ScenarioSpec> scenario_table() {
  auto row = [](const char* name, int n, int p, int rel, int red, double cn, double an,
                double minority) {
    return ScenarioSpec{name, n, p, rel, red, cn, an, minority};
  };
  return {
      row("Baseline", 2500, 100, 10, 0, 0.0, 0.0, 0.5),
      row("ClassNoise_1", 2500, 100, 10, 0, 0.1, 0.0, 0.5),
      row("ClassNoise_2", 2500, 100, 10, 0, 0.2, 0.0, 0.5),
      row("ClassNoise_3", 2500, 100, 10, 0, 0.3, 0.0, 0.5),
      row("AttNoise_1", 2500, 100, 10, 0, 0.0, 0.1, 0.5),
      row("AttNoise_2", 2500, 100, 10, 0, 0.0, 0.2, 0.5),
      row("AttNoise_3", 2500, 100, 10, 0, 0.0, 0.3, 0.5),
      row("Redundant_1", 2500, 100, 10, 10, 0.0, 0.0, 0.5),
      row("Redundant_2", 2500, 100, 10, 20, 0.0, 0.0, 0.5),
      row("Imbalanced_1", 2500, 100, 10, 10, 0.0, 0.0, 0.2),
      row("Imbalanced_2", 2500, 100, 10, 10, 0.0, 0.0, 0.1),
      row("Dimensionality_1", 2500, 500, 15, 0, 0.0, 0.0, 0.5),
      row("Dimensionality_2", 500, 1000, 30, 0, 0.0, 0.0, 0.5),
  };
}

const ScenarioSpec& scenario_by_name(const std::string& name) {
  static const std::vector<ScenarioSpec> table = scenario_table();
  for (const auto& s : table)
    if (s.name == name) return s;
  throw UnknownScenario("unknown scenario: " + name);
}

ScenarioData generate_with_noise(const ScenarioSpec& spec, std::uint64_t seed,
                                 const GeneratorParams& params) {
  // the base draw is keyed on the structural parameters, not the name: the
  // noise scenarios are the baseline data plus injected noise, so scenarios
  // that differ only in noise rates share their base dataset
  Rng gen_rng(derive_seed(
      seed, {std::string("generate"), spec.observations, spec.features_total,
             spec.features_relevant, spec.features_redundant,
             static_cast<std::int64_t>(std::lround(spec.minority_fraction * 1000.0))}));
  ScenarioData data;
  data.clean = generate(spec, gen_rng, params);
  data.noisy = data.clean;
  if (spec.class_noise > 0.0) {
    Rng noise_rng(derive_seed(seed, {std::string("class_noise"), spec.name}));
    data.noisy = inject_class_noise(data.noisy, spec.class_noise, noise_rng);
  }
  if (spec.attribute_noise > 0.0) {
    Rng noise_rng(derive_seed(seed, {std::string("attribute_noise"), spec.name}));
    data.noisy = inject_attribute_noise(data.noisy, spec.attribute_noise, noise_rng);
  }
  return data;
}

}  // namespace filterbench
