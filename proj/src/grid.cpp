#include "lexctx/grid.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "lexctx/errors.h"
#include "lexctx/rng.h"

namespace lexctx {

void GridSpec::validate() const {
  if (n_runs < 1) throw ArgumentError("n_runs must be >= 1");
  for (const auto& [name, values] : params) {
    if (values.empty()) throw ArgumentError("grid parameter '" + name + "' has no values");
  }
}

GridSpec GridSpec::from_json(const Json& j) {
  GridSpec spec;
  const Json& params = j.contains("params") ? j.at("params") : j.value("grid", Json::object());
  if (!params.is_object()) throw ArgumentError("grid params must be an object");
  for (const auto& [name, values] : params.items()) {
    if (values.is_array()) {
      spec.params[name] = values.get<std::vector<Json>>();
    } else {
      spec.params[name] = {values};
    }
  }
  spec.n_runs = j.value("n_runs", 5);
  spec.base_seed = j.value("base_seed", std::uint64_t{0});
  spec.validate();
  return spec;
}

std::vector<Json> expand_grid(const GridSpec& spec) {
  spec.validate();
  std::vector<Json> out = {Json::object()};
  for (const auto& [name, values] : spec.params) {
    std::vector<Json> next;
    next.reserve(out.size() * values.size());
    for (const Json& partial : out) {
      for (const Json& v : values) {
        Json c = partial;
        c[name] = v;
        next.push_back(std::move(c));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::string config_hash(const Json& config) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(config.dump())));
  return buf;
}

void PipelineRegistry::add(const std::string& name, Pipeline pipeline) { pipelines_[name] = std::move(pipeline); }

const Pipeline& PipelineRegistry::get(const std::string& name) const {
  auto it = pipelines_.find(name);
  if (it == pipelines_.end()) throw ArgumentError("unknown pipeline '" + name + "'");
  return it->second;
}

std::vector<std::string> PipelineRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, p] : pipelines_) out.push_back(name);
  return out;
}

namespace {

Json to_json(const RunRecord& r) {
  return Json{{"hash", r.hash},
              {"config", r.config},
              {"seed", r.seed},
              {"ok", r.ok},
              {"criterion", r.ok ? Json(r.criterion) : Json(nullptr)},
              {"metrics", r.metrics},
              {"error", r.error}};
}

RunRecord from_json(const Json& j) {
  RunRecord r;
  r.hash = j.at("hash").get<std::string>();
  r.config = j.at("config");
  r.seed = j.at("seed").get<std::uint64_t>();
  r.ok = j.at("ok").get<bool>();
  r.criterion = j.at("criterion").is_number() ? j.at("criterion").get<double>() : NAN;
  r.metrics = j.value("metrics", std::map<std::string, double>{});
  r.error = j.value("error", std::string());
  return r;
}

}  // namespace

ReportStore::ReportStore(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      RunRecord r = from_json(Json::parse(line));
      records_[{r.hash, r.seed}] = std::move(r);
    } catch (const Json::exception& e) {
      throw ParseError(path_ + ": " + e.what(), line_no);
    }
  }
}

std::optional<RunRecord> ReportStore::find(const std::string& hash, std::uint64_t seed) const {
  std::lock_guard lock(mutex_);
  auto it = records_.find({hash, seed});
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

void ReportStore::append(const RunRecord& record) {
  std::lock_guard lock(mutex_);
  records_[{record.hash, record.seed}] = record;
  if (path_.empty()) return;
  std::ofstream out(path_, std::ios::app);
  if (!out) throw IoError("cannot append to report store " + path_);
  // One write per line keeps concurrent appends line-atomic in practice.
  const std::string line = to_json(record).dump() + "\n";
  out.write(line.data(), static_cast<std::streamsize>(line.size()));
}

std::size_t ReportStore::size() const {
  std::lock_guard lock(mutex_);
  return records_.size();
}

MeanStd aggregate_runs(std::span<const double> values) {
  if (values.empty()) throw ArgumentError("cannot aggregate zero runs");
  MeanStd r;
  for (double v : values) r.mean += v;
  r.mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - r.mean) * (v - r.mean);
  r.std = std::sqrt(var / static_cast<double>(values.size()));
  return r;
}

std::vector<RunReport> run_grid(const GridSpec& spec, const Pipeline& pipeline, ReportStore& store) {
  std::vector<RunReport> reports;
  for (Json& config : expand_grid(spec)) {
    RunReport report;
    report.hash = config_hash(config);
    report.config = std::move(config);
    for (int run = 0; run < spec.n_runs; ++run) {
      const std::uint64_t seed = spec.base_seed + static_cast<std::uint64_t>(run);
      RunRecord record;
      if (auto cached = store.find(report.hash, seed); cached && cached->ok) {
        record = *cached;
        ++report.reused;
      } else {
        record.hash = report.hash;
        record.config = report.config;
        record.seed = seed;
        try {
          PipelineOutcome outcome = pipeline(report.config, seed);
          record.criterion = outcome.criterion;
          record.metrics = std::move(outcome.metrics);
        } catch (const std::exception& e) {
          record.ok = false;
          record.error = e.what();
        }
        store.append(record);
      }
      if (!record.ok) {
        report.failed = true;
        report.errors.push_back("seed " + std::to_string(seed) + ": " + record.error);
        continue;
      }
      report.values.push_back(record.criterion);
      for (const auto& [name, value] : record.metrics) report.metrics[name].push_back(value);
    }
    if (!report.failed) report.criterion = aggregate_runs(report.values);
    reports.push_back(std::move(report));
  }
  std::stable_sort(reports.begin(), reports.end(), [](const RunReport& a, const RunReport& b) {
    if (a.failed != b.failed) return !a.failed;
    if (!a.failed && a.criterion.mean != b.criterion.mean) return a.criterion.mean > b.criterion.mean;
    return a.hash < b.hash;
  });
  return reports;
}

std::vector<std::pair<int, int>> prescreen_layer_pairs(const std::vector<int>& layers,
                                                       const std::function<double(int, int)>& score, std::size_t keep) {
  struct Scored {
    double value;
    int first;
    int second;
  };
  std::vector<Scored> all;
  for (int a : layers)
    for (int b : layers) all.push_back({score(a, b), a, b});
  std::stable_sort(all.begin(), all.end(), [](const Scored& x, const Scored& y) { return x.value > y.value; });
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < all.size() && i < keep; ++i) out.emplace_back(all[i].first, all[i].second);
  return out;
}

}  // namespace lexctx
