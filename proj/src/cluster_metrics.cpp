#include "lexctx/cluster_metrics.h"

#include <algorithm>
#include <map>
#include <utility>

#include "lexctx/errors.h"

namespace lexctx {

namespace {

void check(const LabeledPartition& p) {
  if (p.system.empty()) throw ArgumentError("clustering metrics need at least one item");
  if (p.system.size() != p.gold.size()) throw ArgumentError("system and gold label counts differ");
}

// Contingency counts |cluster ∩ class| plus the marginals.
struct Contingency {
  std::map<std::pair<std::string, std::string>, double> joint;
  std::map<std::string, double> cluster_size;
  std::map<std::string, double> class_size;
};

Contingency contingency(const LabeledPartition& p) {
  Contingency c;
  for (std::size_t i = 0; i < p.system.size(); ++i) {
    c.joint[{p.system[i], p.gold[i]}] += 1.0;
    c.cluster_size[p.system[i]] += 1.0;
    c.class_size[p.gold[i]] += 1.0;
  }
  return c;
}

}  // namespace

LabeledPartition LabeledPartition::from_ints(const std::vector<int>& system, const std::vector<int>& gold) {
  LabeledPartition p;
  for (int s : system) p.system.push_back(std::to_string(s));
  for (int g : gold) p.gold.push_back(std::to_string(g));
  return p;
}

double harmonic_mean(double a, double b) { return a + b > 0.0 ? 2.0 * a * b / (a + b) : 0.0; }

PurityScores purity_scores(const LabeledPartition& p) {
  check(p);
  const Contingency c = contingency(p);
  std::map<std::string, double> best_for_cluster, best_for_class;
  for (const auto& [key, count] : c.joint) {
    best_for_cluster[key.first] = std::max(best_for_cluster[key.first], count);
    best_for_class[key.second] = std::max(best_for_class[key.second], count);
  }
  const double n = static_cast<double>(p.system.size());
  PurityScores s;
  for (const auto& [cluster, m] : best_for_cluster) s.purity += m;
  for (const auto& [cls, m] : best_for_class) s.inverse_purity += m;
  s.purity /= n;
  s.inverse_purity /= n;
  s.f1 = harmonic_mean(s.purity, s.inverse_purity);
  return s;
}

BCubedScores bcubed_scores(const LabeledPartition& p) {
  check(p);
  const Contingency c = contingency(p);
  // Items sharing (cluster, class) have identical per-item scores.
  double precision = 0.0, recall = 0.0;
  for (const auto& [key, count] : c.joint) {
    precision += count * count / c.cluster_size.at(key.first);
    recall += count * count / c.class_size.at(key.second);
  }
  const double n = static_cast<double>(p.system.size());
  BCubedScores s;
  s.precision = precision / n;
  s.recall = recall / n;
  s.f1 = harmonic_mean(s.precision, s.recall);
  return s;
}

}  // namespace lexctx
