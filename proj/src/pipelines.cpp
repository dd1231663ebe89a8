#include "lexctx/pipelines.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "lexctx/embedding_dump.h"
#include "lexctx/errors.h"
#include "lexctx/toy_encoder.h"
#include "lexctx/wic.h"

namespace lexctx {

namespace fs = std::filesystem;

std::string cache_dir() {
  if (const char* env = std::getenv("LEXCTX_CACHE_DIR"); env != nullptr && *env != '\0') return env;
  return ".lexctx-cache";
}

namespace {

std::string resolve(const std::string& base_dir, const std::string& path) {
  fs::path p(path);
  return p.is_absolute() || base_dir.empty() ? path : (fs::path(base_dir) / p).string();
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return in;
}

}  // namespace

PipelineContext PipelineContext::from_config(const Json& config, const std::string& base_dir) {
  PipelineContext ctx;
  const Json enc = config.value("encoder", Json::object());
  if (enc.contains("checkpoint")) {
    ctx.base_encoder = load_encoder(resolve(base_dir, enc.at("checkpoint").get<std::string>()));
  } else {
    const Json toy = enc.value("toy", Json::object());
    ToyEncoderConfig tc;
    tc.layers = toy.value("layers", tc.layers);
    tc.hidden = toy.value("hidden", tc.hidden);
    tc.buckets = toy.value("buckets", tc.buckets);
    tc.seed = toy.value("seed", tc.seed);
    ctx.base_encoder = std::make_shared<ToyEncoder>(tc);
  }
  if (config.contains("train_lexicon")) {
    auto in = open_input(resolve(base_dir, config.at("train_lexicon").get<std::string>()));
    ctx.train_lexicon = parse_lexicon(in).dataset;
  }
  for (const Json& set : config.value("wic_dev", Json::array())) {
    auto data = open_input(resolve(base_dir, set.at("data").get<std::string>()));
    auto gold = open_input(resolve(base_dir, set.at("gold").get<std::string>()));
    ctx.wic_dev.push_back({set.value("name", std::string("wic")), read_wic_pairs(data, &gold)});
  }
  if (config.contains("frame_dev")) {
    auto in = open_input(resolve(base_dir, config.at("frame_dev").get<std::string>()));
    ctx.frame_dev = parse_frame_instances(in);
  }
  return ctx;
}

TrainConfig train_config_from(const Json& params, std::uint64_t seed) {
  TrainConfig cfg;
  cfg.learning_rate = params.value("learning_rate", cfg.learning_rate);
  cfg.epochs = params.value("epochs", cfg.epochs);
  cfg.temperature = params.value("temperature", cfg.temperature);
  cfg.batch_cap = params.value("batch_cap", cfg.batch_cap);
  cfg.similarity = parse_similarity(params.value("similarity", std::string("cosine")));
  cfg.seed = seed;
  return cfg;
}

std::unique_ptr<Encoder> prepare_encoder(const PipelineContext& ctx, const Json& params, std::uint64_t seed) {
  if (!ctx.base_encoder) throw ArgumentError("pipeline context has no encoder");
  std::unique_ptr<Encoder> enc = ctx.base_encoder->clone();
  if (params.value("epochs", 0) > 0) train(*enc, ctx.train_lexicon, train_config_from(params, seed));
  return enc;
}

std::optional<Projection> fit_train_projection(const Encoder& enc, const LexiconDataset& train, int layer,
                                               const Json& params) {
  const int components = params.value("pca_components", 0);
  if (components <= 0) return std::nullopt;
  EmbeddingDump dump = encode_corpus(enc, train.examples(), layer, false);
  return fit_projection(dump.valid_matrix(), components, params.value("whiten", true));
}

PipelineOutcome run_wic_dev_macro(const PipelineContext& ctx, const Json& params, std::uint64_t seed) {
  if (ctx.wic_dev.empty()) throw ArgumentError("wic-dev-macro needs at least one WiC dev set");
  std::unique_ptr<Encoder> enc = prepare_encoder(ctx, params, seed);
  const int last = enc->num_layers();
  std::optional<Projection> proj = fit_train_projection(*enc, ctx.train_lexicon, last, params);
  const double step = params.value("threshold_step", 0.02);

  PipelineOutcome out;
  double total = 0.0;
  for (const WicDevSet& set : ctx.wic_dev) {
    ScoreResult scored = score_pairs(*enc, proj ? &*proj : nullptr, set.pairs, last);
    ThresholdModel model = tune_threshold(scored.scored, step);
    out.metrics["acc:" + set.name] = model.dev_accuracy;
    out.metrics["threshold:" + set.name] = model.threshold;
    total += model.dev_accuracy;
  }
  out.criterion = total / static_cast<double>(ctx.wic_dev.size());
  return out;
}

FrameConfig frame_config_from(const Json& params, int num_layers, std::uint64_t seed) {
  FrameConfig cfg;
  cfg.layer1 = params.value("layer1", num_layers);
  cfg.layer2 = params.value("layer2", num_layers);
  cfg.alpha1 = params.value("alpha1", 0.0);
  cfg.alpha2 = params.value("alpha2", 0.0);
  cfg.step1 = parse_step1_algorithm(params.value("step1", std::string("xmeans")));
  cfg.kmin = params.value("kmin", 1);
  cfg.kmax = params.value("kmax", 15);
  cfg.step1_threshold = params.value("step1_threshold", cfg.step1_threshold);
  cfg.termination_threshold = params.value("term_threshold", cfg.termination_threshold);
  cfg.seed = seed;
  return cfg;
}

PipelineOutcome run_frame_dev_bcf(const PipelineContext& ctx, const Json& params, std::uint64_t seed) {
  if (ctx.frame_dev.empty()) throw ArgumentError("frame-dev-bcf needs frame dev instances");
  std::unique_ptr<Encoder> enc = prepare_encoder(ctx, params, seed);
  const FrameConfig cfg = frame_config_from(params, enc->num_layers(), seed);
  std::optional<Projection> proj = fit_train_projection(*enc, ctx.train_lexicon, enc->num_layers(), params);
  const Projection* p = proj ? &*proj : nullptr;

  Step1Result s1 = induce_step1(*enc, p, ctx.frame_dev, cfg);
  Step2Result s2 = induce_step2(*enc, p, ctx.frame_dev, s1, cfg);
  FrameEvaluation ev = evaluate_frames(ctx.frame_dev, s1, s2);

  PipelineOutcome out;
  out.criterion = ev.step2_bcubed.f1;
  out.metrics = {{"pu1", ev.step1_purity.purity},
                 {"ipu1", ev.step1_purity.inverse_purity},
                 {"pif1", ev.step1_purity.f1},
                 {"bcp1", ev.step1_bcubed.precision},
                 {"bcr1", ev.step1_bcubed.recall},
                 {"bcf1", ev.step1_bcubed.f1},
                 {"pu", ev.step2_purity.purity},
                 {"ipu", ev.step2_purity.inverse_purity},
                 {"pif", ev.step2_purity.f1},
                 {"bcp", ev.step2_bcubed.precision},
                 {"bcr", ev.step2_bcubed.recall},
                 {"bcf", ev.step2_bcubed.f1},
                 {"n_plu", static_cast<double>(ev.n_units)},
                 {"n_clusters", static_cast<double>(ev.n_frames)}};
  return out;
}

PipelineRegistry builtin_pipelines(std::shared_ptr<const PipelineContext> ctx) {
  PipelineRegistry registry;
  registry.add("wic-dev-macro",
               [ctx](const Json& params, std::uint64_t seed) { return run_wic_dev_macro(*ctx, params, seed); });
  registry.add("frame-dev-bcf",
               [ctx](const Json& params, std::uint64_t seed) { return run_frame_dev_bcf(*ctx, params, seed); });
  return registry;
}

}  // namespace lexctx
