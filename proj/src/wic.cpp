#include "lexctx/wic.h"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "json.hpp"
#include "lexctx/embedding.h"
#include "lexctx/errors.h"

namespace lexctx {

ScoreResult score_pairs(const Encoder& enc, const Projection* proj, std::span<const WiCPair> pairs, int layer) {
  if (layer < 0) layer = enc.num_layers();
  if (layer > enc.num_layers()) throw ArgumentError("layer out of range");
  ScoreResult out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const WiCPair& p = pairs[i];
    Eigen::VectorXd u, v;
    try {
      u = pool_target(encode_target(enc, p.sentence1, p.span1, false), layer);
      v = pool_target(encode_target(enc, p.sentence2, p.span2, false), layer);
    } catch (const AlignmentError&) {
      out.excluded.push_back(i);
      continue;
    }
    if (proj != nullptr) {
      u = project(*proj, u);
      v = project(*proj, v);
    }
    out.scored.push_back({p, cosine(u, v)});
  }
  return out;
}

std::vector<double> threshold_grid(double step) {
  if (!(step > 0.0 && step < 1.0)) throw ArgumentError("threshold step must lie in (0, 1)");
  const auto n = static_cast<long>(std::floor(2.0 / step + 1e-9));
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n) + 1);
  for (long i = 0; i <= n; ++i) {
    const double t = -1.0 + static_cast<double>(i) * step;
    grid.push_back(std::round(t * 1e12) / 1e12);
  }
  return grid;
}

ThresholdModel tune_threshold(std::span<const ScoredPair> scored, double step) {
  std::vector<double> pos, neg;
  for (const ScoredPair& s : scored) (s.pair.label ? pos : neg).push_back(s.similarity);
  if (pos.empty() || neg.empty())
    throw DegenerateTuningError("threshold tuning needs both positive and negative pairs");
  std::sort(pos.begin(), pos.end());
  std::sort(neg.begin(), neg.end());

  ThresholdModel best;
  best.step = step;
  std::size_t best_correct = 0;
  bool first = true;
  for (double t : threshold_grid(step)) {
    // positives at or above t, negatives below t
    const auto pos_right = static_cast<std::size_t>(pos.end() - std::lower_bound(pos.begin(), pos.end(), t));
    const auto neg_right = static_cast<std::size_t>(std::lower_bound(neg.begin(), neg.end(), t) - neg.begin());
    const std::size_t correct = pos_right + neg_right;
    if (first || correct > best_correct) {
      best_correct = correct;
      best.threshold = t;
      first = false;
    }
  }
  best.dev_accuracy = static_cast<double>(best_correct) / static_cast<double>(pos.size() + neg.size());
  return best;
}

std::vector<bool> predict(std::span<const ScoredPair> scored, double threshold) {
  std::vector<bool> out;
  out.reserve(scored.size());
  for (const ScoredPair& s : scored) out.push_back(s.similarity >= threshold);
  return out;
}

AccuracyReport evaluate_accuracy(std::span<const ScoredPair> scored, const ThresholdModel& model) {
  if (scored.empty()) throw ArgumentError("cannot evaluate an empty pair set");
  AccuracyReport r;
  r.n = scored.size();
  for (const ScoredPair& s : scored) {
    const bool predicted = s.similarity >= model.threshold;
    if (s.pair.label) {
      (predicted ? r.true_positive : r.false_negative)++;
    } else {
      (predicted ? r.false_positive : r.true_negative)++;
    }
  }
  r.accuracy = static_cast<double>(r.true_positive + r.true_negative) / static_cast<double>(r.n);
  const std::size_t gold_pos = r.true_positive + r.false_negative;
  const std::size_t gold_neg = r.true_negative + r.false_positive;
  r.positive_accuracy = gold_pos ? static_cast<double>(r.true_positive) / static_cast<double>(gold_pos) : 0.0;
  r.negative_accuracy = gold_neg ? static_cast<double>(r.true_negative) / static_cast<double>(gold_neg) : 0.0;
  return r;
}

McNemarResult mcnemar_test(const std::vector<bool>& preds_a, const std::vector<bool>& preds_b,
                           const std::vector<bool>& gold, double alpha) {
  if (preds_a.empty() || preds_a.size() != preds_b.size() || preds_a.size() != gold.size()) {
    throw ArgumentError("McNemar inputs must be non-empty and of equal length");
  }
  McNemarResult r;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const bool a_right = preds_a[i] == gold[i];
    const bool b_right = preds_b[i] == gold[i];
    if (a_right && !b_right) ++r.a_only;
    if (!a_right && b_right) ++r.b_only;
  }
  const std::size_t n = r.a_only + r.b_only;
  if (n == 0) {
    r.no_discordance = true;
    r.p_value = 1.0;
    return r;
  }
  if (n < 25) {
    r.exact = true;
    const std::size_t k = std::min(r.a_only, r.b_only);
    r.statistic = static_cast<double>(k);
    double tail = 0.0;
    double binom = 1.0;  // C(n, i)
    for (std::size_t i = 0; i <= k; ++i) {
      tail += binom;
      binom = binom * static_cast<double>(n - i) / static_cast<double>(i + 1);
    }
    r.p_value = std::min(1.0, 2.0 * tail * std::pow(0.5, static_cast<double>(n)));
  } else {
    r.exact = false;
    const double diff = std::abs(static_cast<double>(r.a_only) - static_cast<double>(r.b_only)) - 1.0;
    r.statistic = diff * diff / static_cast<double>(n);
    r.p_value = std::erfc(std::sqrt(r.statistic / 2.0));
  }
  r.significant = r.p_value < alpha;
  return r;
}

void write_scored(std::ostream& out, std::span<const ScoredPair> scored) {
  for (std::size_t i = 0; i < scored.size(); ++i) {
    const ScoredPair& s = scored[i];
    out << nlohmann::json{{"index", i}, {"lemma", s.pair.lemma}, {"similarity", s.similarity}, {"label", s.pair.label}}
               .dump()
        << '\n';
  }
}

std::vector<ScoredPair> read_scored(std::istream& in) {
  std::vector<ScoredPair> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      auto rec = nlohmann::json::parse(line);
      ScoredPair s;
      s.pair.lemma = rec.value("lemma", std::string());
      s.similarity = rec.at("similarity").get<double>();
      s.pair.label = rec.value("label", false);
      out.push_back(std::move(s));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return out;
}

}  // namespace lexctx
