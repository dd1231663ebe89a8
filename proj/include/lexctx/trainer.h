#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "lexctx/contrastive_loss.h"
#include "lexctx/encoder.h"
#include "lexctx/lexicon.h"

namespace lexctx {

// All (possibly subsampled) examples of one lemma, trained as one batch.
struct LemmaBatch {
  std::string lemma;
  std::vector<SenseExample> examples;
  std::vector<std::string> sense_labels;
};

struct BatchPlan {
  std::vector<LemmaBatch> batches;
  // Lemmas whose examples hold no same-sense pair (or fewer than 2 examples).
  std::size_t dropped = 0;
};

// One batch per lemma. Lemmas with more than `cap` examples are subsampled
// uniformly without replacement, once, from a seed derived from `seed` and
// the lemma. Batches come out in lemma order; see epoch_order.
BatchPlan build_batches(const LexiconDataset& train, std::size_t cap, std::uint64_t seed);

// Permutation of [0, n) used as the batch order of `epoch` (0-based).
std::vector<std::size_t> epoch_order(std::size_t n, std::uint64_t seed, int epoch);

// Maps sense ids to dense class labels in first-seen order.
std::vector<int> class_labels(const std::vector<std::string>& sense_ids);

struct TrainConfig {
  double learning_rate = 5e-6;
  int epochs = 2;
  double temperature = 0.5;
  std::size_t batch_cap = 64;
  std::uint64_t seed = 0;
  Similarity similarity = Similarity::kCosine;

  void validate() const;
};

struct BatchRecord {
  int epoch = 0;
  std::size_t step = 0;
  std::string lemma;
  std::size_t size = 0;
  double loss = 0.0;
};

struct TrainLog {
  TrainConfig config;
  std::vector<BatchRecord> batches;
  std::vector<double> epoch_mean_loss;
  std::size_t dropped_lemmas = 0;
  std::size_t skipped_examples = 0;  // alignment failures
  std::size_t skipped_batches = 0;   // unusable after alignment failures
  double wall_seconds = 0.0;
};

// Called after every epoch with the 0-based epoch index.
using EpochCallback = std::function<void(int epoch, const Encoder& enc, const TrainLog& log)>;

// Fine-tunes `enc` in place: for each epoch, for each batch in epoch_order,
// re-encodes the batch at the last layer (unmasked), computes the
// contrastive loss and applies one optimizer step. Throws
// EmptyTrainingError when no lemma yields a usable batch, ArgumentError on
// a frozen encoder or invalid config.
TrainLog train(Encoder& enc, const LexiconDataset& train, const TrainConfig& cfg, const EpochCallback& on_epoch = {});

// Line-delimited records: one "config", one per batch, one per epoch and a
// final "summary".
void write_train_log(std::ostream& out, const TrainLog& log);

}  // namespace lexctx
