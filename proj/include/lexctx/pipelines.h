#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lexctx/encoder.h"
#include "lexctx/frame_induction.h"
#include "lexctx/grid.h"
#include "lexctx/lexicon.h"
#include "lexctx/projection.h"
#include "lexctx/trainer.h"
#include "lexctx/wic_pairs.h"

namespace lexctx {

// Directory for report stores and checkpoints: $LEXCTX_CACHE_DIR, or
// ".lexctx-cache" under the working directory.
std::string cache_dir();

struct WicDevSet {
  std::string name;
  std::vector<WiCPair> pairs;
};

// Read-only inputs shared by every run of a grid.
struct PipelineContext {
  std::shared_ptr<const Encoder> base_encoder;
  LexiconDataset train_lexicon;
  std::vector<WicDevSet> wic_dev;
  std::vector<FrameInstance> frame_dev;

  // Keys: "encoder" ({"checkpoint": path} or {"toy": {layers, hidden,
  // buckets, seed}}), "train_lexicon", "wic_dev" ([{name, data, gold}]),
  // "frame_dev". Relative paths resolve against `base_dir`.
  static PipelineContext from_config(const Json& config, const std::string& base_dir);
};

// Training settings read from run parameters (learning_rate, epochs,
// temperature, batch_cap, similarity); the seed is the run seed.
TrainConfig train_config_from(const Json& params, std::uint64_t seed);

// A fresh copy of the base encoder, fine-tuned when params.epochs > 0.
std::unique_ptr<Encoder> prepare_encoder(const PipelineContext& ctx, const Json& params, std::uint64_t seed);

// PCA fitted on unmasked target embeddings of the training lexicon at
// `layer`, when params.pca_components > 0 (params.whiten, default true).
std::optional<Projection> fit_train_projection(const Encoder& enc, const LexiconDataset& train, int layer,
                                               const Json& params);

// Macro-averaged dev accuracy over the WiC dev sets, each with its own
// tuned threshold. Metrics: "acc:<name>" and "threshold:<name>".
PipelineOutcome run_wic_dev_macro(const PipelineContext& ctx, const Json& params, std::uint64_t seed);

// Second-step B-cubed F on the frame dev instances. Metrics cover both
// steps plus unit and frame counts.
PipelineOutcome run_frame_dev_bcf(const PipelineContext& ctx, const Json& params, std::uint64_t seed);

FrameConfig frame_config_from(const Json& params, int num_layers, std::uint64_t seed);

// "wic-dev-macro" and "frame-dev-bcf" bound to `ctx`.
PipelineRegistry builtin_pipelines(std::shared_ptr<const PipelineContext> ctx);

}  // namespace lexctx
