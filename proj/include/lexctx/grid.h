#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace lexctx {

using Json = nlohmann::json;

// Hyperparameter grid: parameter name -> values to try.
struct GridSpec {
  std::map<std::string, std::vector<Json>> params;
  int n_runs = 5;
  std::uint64_t base_seed = 0;

  // {"params": {...}, "n_runs": 5, "base_seed": 0}; validates non-empty
  // value lists and n_runs >= 1.
  static GridSpec from_json(const Json& j);
  void validate() const;
};

// Cartesian product of the grid values as config objects, iterating the
// last parameter (in key order) fastest.
std::vector<Json> expand_grid(const GridSpec& spec);

// Stable 16-hex-digit hash of a config's canonical serialization.
std::string config_hash(const Json& config);

struct PipelineOutcome {
  double criterion = 0.0;
  std::map<std::string, double> metrics;
};

// Evaluates one configuration under one seed.
using Pipeline = std::function<PipelineOutcome(const Json& config, std::uint64_t seed)>;

class PipelineRegistry {
 public:
  void add(const std::string& name, Pipeline pipeline);
  const Pipeline& get(const std::string& name) const;
  bool contains(const std::string& name) const { return pipelines_.contains(name); }
  std::vector<std::string> names() const;

 private:
  std::map<std::string, Pipeline> pipelines_;
};

struct RunRecord {
  std::string hash;
  Json config;
  std::uint64_t seed = 0;
  bool ok = true;
  double criterion = 0.0;
  std::map<std::string, double> metrics;
  std::string error;
};

// Completed runs keyed by (config hash, seed), optionally backed by an
// append-only line-delimited file. When a key appears twice on load, the
// later line wins.
class ReportStore {
 public:
  ReportStore() = default;
  explicit ReportStore(std::string path);

  std::optional<RunRecord> find(const std::string& hash, std::uint64_t seed) const;
  void append(const RunRecord& record);
  std::size_t size() const;

 private:
  std::string path_;
  mutable std::mutex mutex_;
  std::map<std::pair<std::string, std::uint64_t>, RunRecord> records_;
};

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // population
};

MeanStd aggregate_runs(std::span<const double> values);

struct RunReport {
  Json config;
  std::string hash;
  std::vector<double> values;  // criterion per run, seed order
  std::map<std::string, std::vector<double>> metrics;
  MeanStd criterion;
  bool failed = false;
  std::vector<std::string> errors;
  std::size_t reused = 0;  // runs taken from the store
};

// Runs every grid combination n_runs times with seeds base_seed, ...,
// base_seed + n_runs - 1, skipping (hash, seed) pairs already in `store`.
// A throwing run marks its report failed; the grid goes on. Reports are
// sorted by mean criterion, best first, ties by hash; failed ones last.
std::vector<RunReport> run_grid(const GridSpec& spec, const Pipeline& pipeline, ReportStore& store);

// Ranks every (layer1, layer2) pair from `layers` x `layers` by `score`
// (higher is better) and keeps the best `keep`, ties by layer order.
std::vector<std::pair<int, int>> prescreen_layer_pairs(const std::vector<int>& layers,
                                                       const std::function<double(int, int)>& score,
                                                       std::size_t keep = 10);

}  // namespace lexctx
