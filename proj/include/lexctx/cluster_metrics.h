#pragma once

#include <string>
#include <vector>

namespace lexctx {

// System clusters and gold classes over the same items (parallel vectors).
struct LabeledPartition {
  std::vector<std::string> system;
  std::vector<std::string> gold;

  static LabeledPartition from_ints(const std::vector<int>& system, const std::vector<int>& gold);
};

struct PurityScores {
  double purity = 0.0;
  double inverse_purity = 0.0;
  double f1 = 0.0;  // harmonic mean of the two
};

struct BCubedScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;  // harmonic mean of the aggregate precision and recall
};

// Throw ArgumentError on empty or mismatched input.
PurityScores purity_scores(const LabeledPartition& p);
BCubedScores bcubed_scores(const LabeledPartition& p);

double harmonic_mean(double a, double b);

}  // namespace lexctx
