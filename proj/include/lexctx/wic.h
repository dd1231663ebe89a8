#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "lexctx/encoder.h"
#include "lexctx/projection.h"
#include "lexctx/wic_pairs.h"

namespace lexctx {

struct ScoredPair {
  WiCPair pair;
  double similarity = 0.0;
};

struct ScoreResult {
  std::vector<ScoredPair> scored;
  // Input indices dropped because a target did not align.
  std::vector<std::size_t> excluded;
};

// Cosine of the two unmasked target embeddings at `layer` (the last layer
// when negative), after `proj` when given. Order is preserved.
ScoreResult score_pairs(const Encoder& enc, const Projection* proj, std::span<const WiCPair> pairs, int layer = -1);

struct ThresholdModel {
  double threshold = 0.0;
  double step = 0.02;
  double dev_accuracy = 0.0;
};

// Grid {-1, -1 + step, ..., <= 1}, each point rounded to 12 decimals so that
// grid values equal their decimal literals.
std::vector<double> threshold_grid(double step);

// Best grid threshold for the rule similarity >= t -> same sense; ties go
// to the smallest t. Throws DegenerateTuningError without both labels.
ThresholdModel tune_threshold(std::span<const ScoredPair> scored, double step = 0.02);

struct AccuracyReport {
  std::size_t n = 0;
  std::size_t true_positive = 0, true_negative = 0, false_positive = 0, false_negative = 0;
  double accuracy = 0.0;
  double positive_accuracy = 0.0;  // recall on gold-true pairs
  double negative_accuracy = 0.0;  // recall on gold-false pairs
};

AccuracyReport evaluate_accuracy(std::span<const ScoredPair> scored, const ThresholdModel& model);
std::vector<bool> predict(std::span<const ScoredPair> scored, double threshold);

struct McNemarResult {
  std::size_t a_only = 0;  // a right, b wrong
  std::size_t b_only = 0;  // a wrong, b right
  bool exact = true;       // exact binomial (discordant < 25) or chi-squared
  double statistic = 0.0;  // min discordant count, or the corrected chi-squared
  double p_value = 1.0;
  bool significant = false;
  bool no_discordance = false;
};

McNemarResult mcnemar_test(const std::vector<bool>& preds_a, const std::vector<bool>& preds_b,
                           const std::vector<bool>& gold, double alpha = 0.05);

// Line-delimited {index, lemma, similarity, label}.
void write_scored(std::ostream& out, std::span<const ScoredPair> scored);
std::vector<ScoredPair> read_scored(std::istream& in);

}  // namespace lexctx
