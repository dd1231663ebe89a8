#include "lexctx/trainer.h"

#include <chrono>
#include <map>
#include <ostream>

#include "json.hpp"
#include "lexctx/embedding.h"
#include "lexctx/errors.h"
#include "lexctx/rng.h"

namespace lexctx {

namespace {

bool has_positive_pair(const std::vector<std::string>& labels) {
  std::map<std::string, int> counts;
  for (const std::string& l : labels) {
    if (++counts[l] >= 2) return true;
  }
  return false;
}

constexpr std::uint64_t kSubsampleStream = 0x5ab5;
constexpr std::uint64_t kOrderStream = 0x0bde;

}  // namespace

BatchPlan build_batches(const LexiconDataset& train, std::size_t cap, std::uint64_t seed) {
  if (cap < 2) throw ArgumentError("batch cap must be at least 2");
  BatchPlan plan;
  for (const auto& [lemma, senses] : train.index()) {
    std::vector<std::size_t> ids;
    for (const auto& [sense, members] : senses) ids.insert(ids.end(), members.begin(), members.end());
    std::sort(ids.begin(), ids.end());
    if (ids.size() > cap) {
      Rng rng(derive_seed(seed ^ fnv1a(lemma), kSubsampleStream));
      std::vector<std::size_t> picked;
      for (std::size_t k : rng.sample_indices(ids.size(), cap)) picked.push_back(ids[k]);
      ids = std::move(picked);
    }
    LemmaBatch batch;
    batch.lemma = lemma;
    for (std::size_t id : ids) {
      batch.examples.push_back(train.examples()[id]);
      batch.sense_labels.push_back(train.examples()[id].sense_id);
    }
    if (batch.examples.size() < 2 || !has_positive_pair(batch.sense_labels)) {
      ++plan.dropped;
      continue;
    }
    plan.batches.push_back(std::move(batch));
  }
  return plan;
}

std::vector<std::size_t> epoch_order(std::size_t n, std::uint64_t seed, int epoch) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(derive_seed(seed + static_cast<std::uint64_t>(epoch), kOrderStream));
  rng.shuffle(order);
  return order;
}

std::vector<int> class_labels(const std::vector<std::string>& sense_ids) {
  std::map<std::string, int> ids;
  std::vector<int> out;
  out.reserve(sense_ids.size());
  for (const std::string& s : sense_ids) {
    auto [it, inserted] = ids.emplace(s, static_cast<int>(ids.size()));
    out.push_back(it->second);
  }
  return out;
}

void TrainConfig::validate() const {
  if (epochs < 1) throw ArgumentError("epochs must be >= 1");
  if (batch_cap < 2) throw ArgumentError("batch cap must be >= 2");
  if (!(temperature > 0.0)) throw ArgumentError("temperature must be > 0");
  if (!(learning_rate > 0.0)) throw ArgumentError("learning rate must be > 0");
}

TrainLog train(Encoder& enc, const LexiconDataset& train_set, const TrainConfig& cfg, const EpochCallback& on_epoch) {
  cfg.validate();
  if (!enc.trainable()) throw ArgumentError("encoder is not trainable");
  const auto started = std::chrono::steady_clock::now();

  TrainLog log;
  log.config = cfg;
  BatchPlan plan = build_batches(train_set, cfg.batch_cap, cfg.seed);
  log.dropped_lemmas = plan.dropped;
  if (plan.batches.empty()) throw EmptyTrainingError("no lemma has a same-sense example pair to train on");

  const int last = enc.num_layers();
  OptimizerConfig opt;
  opt.learning_rate = cfg.learning_rate;
  std::size_t step = 0;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    double epoch_sum = 0.0;
    std::size_t epoch_batches = 0;
    for (std::size_t b : epoch_order(plan.batches.size(), cfg.seed, epoch)) {
      const LemmaBatch& batch = plan.batches[b];
      std::vector<TargetEncoding> encodings;
      std::vector<std::string> senses;
      for (std::size_t i = 0; i < batch.examples.size(); ++i) {
        const SenseExample& ex = batch.examples[i];
        try {
          encodings.push_back(encode_target(enc, ex.sentence, ex.target, false));
          senses.push_back(batch.sense_labels[i]);
        } catch (const AlignmentError&) {
          ++log.skipped_examples;
        }
      }
      if (encodings.size() < 2 || !has_positive_pair(senses)) {
        ++log.skipped_batches;
        continue;
      }

      Eigen::MatrixXd targets(static_cast<Eigen::Index>(encodings.size()), enc.hidden_size());
      for (std::size_t i = 0; i < encodings.size(); ++i) {
        targets.row(static_cast<Eigen::Index>(i)) = pool_target(encodings[i], last).transpose();
      }
      const std::vector<int> labels = class_labels(senses);
      LossWithGradient lg = batch_loss_with_gradient(targets, labels, cfg.temperature, cfg.similarity);

      std::vector<GradientSignal> signals;
      signals.reserve(encodings.size());
      for (std::size_t i = 0; i < encodings.size(); ++i) {
        const TargetEncoding& te = encodings[i];
        Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(te.output.layers[last].rows(), enc.hidden_size());
        const double share = 1.0 / static_cast<double>(te.positions.size());
        for (std::size_t p : te.positions) {
          grad.row(static_cast<Eigen::Index>(p)) += share * lg.grad.row(static_cast<Eigen::Index>(i));
        }
        signals.push_back({&te.output, last, std::move(grad)});
      }
      enc.update(signals, opt);

      log.batches.push_back({epoch, step++, batch.lemma, encodings.size(), lg.loss});
      epoch_sum += lg.loss;
      ++epoch_batches;
    }
    log.epoch_mean_loss.push_back(epoch_batches > 0 ? epoch_sum / static_cast<double>(epoch_batches) : 0.0);
    log.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    if (on_epoch) on_epoch(epoch, enc, log);
  }
  return log;
}

void write_train_log(std::ostream& out, const TrainLog& log) {
  using nlohmann::json;
  const TrainConfig& c = log.config;
  out << json{{"type", "config"},
              {"learning_rate", c.learning_rate},
              {"epochs", c.epochs},
              {"temperature", c.temperature},
              {"batch_cap", c.batch_cap},
              {"seed", c.seed},
              {"similarity", to_string(c.similarity)},
              {"optimizer", "adam"},
              {"schedule", "constant"}}
             .dump()
      << '\n';
  for (const BatchRecord& b : log.batches) {
    out << json{{"type", "batch"},  {"epoch", b.epoch}, {"step", b.step},
                {"lemma", b.lemma}, {"size", b.size},   {"loss", b.loss}}
               .dump()
        << '\n';
  }
  for (std::size_t e = 0; e < log.epoch_mean_loss.size(); ++e) {
    out << json{{"type", "epoch"}, {"epoch", e}, {"mean_loss", log.epoch_mean_loss[e]}}.dump() << '\n';
  }
  out << json{{"type", "summary"},
              {"dropped_lemmas", log.dropped_lemmas},
              {"skipped_examples", log.skipped_examples},
              {"skipped_batches", log.skipped_batches},
              {"wall_seconds", log.wall_seconds}}
             .dump()
      << '\n';
}

}  // namespace lexctx
