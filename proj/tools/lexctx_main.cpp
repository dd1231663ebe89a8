#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "lexctx/cluster_metrics.h"
#include "lexctx/embedding_dump.h"
#include "lexctx/errors.h"
#include "lexctx/frame_induction.h"
#include "lexctx/grid.h"
#include "lexctx/lexicon.h"
#include "lexctx/pipelines.h"
#include "lexctx/projection.h"
#include "lexctx/report_tables.h"
#include "lexctx/synthetic.h"
#include "lexctx/toy_encoder.h"
#include "lexctx/trainer.h"
#include "lexctx/wic.h"
#include "lexctx/wic_pairs.h"

namespace fs = std::filesystem;
using lexctx::Json;

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw lexctx::IoError("cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw lexctx::IoError("cannot write " + path);
  return out;
}

lexctx::LexiconDataset read_lexicon(const std::string& path, bool report = false) {
  auto in = open_in(path);
  lexctx::ParseResult r = lexctx::parse_lexicon(in);
  if (report) {
    for (const auto& rej : r.rejections) std::cerr << path << ":" << rej.line << ": rejected: " << rej.reason << "\n";
  }
  return std::move(r.dataset);
}

void write_lexicon_file(const std::string& path, const lexctx::LexiconDataset& ds) {
  auto out = open_out(path);
  lexctx::write_lexicon(out, ds);
}

std::unique_ptr<lexctx::Encoder> read_encoder(const std::string& path) { return lexctx::load_encoder(path); }

std::optional<lexctx::Projection> maybe_projection(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return lexctx::load_projection(path);
}

Json stats_json(const lexctx::DatasetStats& s) {
  return {{"lemmas", s.n_lemmas},
          {"senses", s.n_senses},
          {"examples", s.n_examples},
          {"examples_per_sense", {{"mean", s.mean_examples_per_sense}, {"std", s.std_examples_per_sense}}},
          {"senses_per_lemma", {{"mean", s.mean_senses_per_lemma}, {"std", s.std_senses_per_lemma}}},
          {"examples_per_lemma", {{"mean", s.mean_examples_per_lemma}, {"std", s.std_examples_per_lemma}}}};
}

Json accuracy_json(const lexctx::AccuracyReport& r, double threshold) {
  return {{"threshold", threshold},
          {"n", r.n},
          {"accuracy", r.accuracy},
          {"positive_accuracy", r.positive_accuracy},
          {"negative_accuracy", r.negative_accuracy},
          {"tp", r.true_positive},
          {"tn", r.true_negative},
          {"fp", r.false_positive},
          {"fn", r.false_negative}};
}

std::vector<lexctx::ScoredPair> read_scored_file(const std::string& path) {
  auto in = open_in(path);
  return lexctx::read_scored(in);
}

double read_threshold(const std::string& value) {
  if (fs::exists(value)) {
    auto in = open_in(value);
    return Json::parse(in).at("threshold").get<double>();
  }
  return std::stod(value);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lexicon-supervised contextual embedding toolkit"};
  app.require_subcommand(1);

  // synth
  lexctx::SyntheticSpec synth;
  std::string synth_lexicon, synth_instances;
  auto* c_synth = app.add_subcommand("synth", "Generate a planted-sense corpus");
  c_synth->add_option("--lemmas", synth.n_lemmas);
  c_synth->add_option("--first-lemma", synth.first_lemma);
  c_synth->add_option("--frames", synth.n_frames);
  c_synth->add_option("--examples-per-sense", synth.examples_per_sense);
  c_synth->add_option("--frame-vocabulary", synth.frame_vocabulary);
  c_synth->add_option("--context-words", synth.context_words);
  c_synth->add_option("--fillers", synth.fillers);
  c_synth->add_option("--seed", synth.seed);
  c_synth->add_option("--lexicon", synth_lexicon, "Output lexicon JSONL")->required();
  c_synth->add_option("--instances", synth_instances, "Output frame instances JSONL");

  // ingest / filter / split / stats / wic-pairs
  std::string in_path, out_path;
  auto* c_ingest = app.add_subcommand("ingest", "Validate a lexicon file and write the accepted records");
  c_ingest->add_option("--in", in_path)->required();
  c_ingest->add_option("--out", out_path)->required();

  lexctx::FilterPolicy policy;
  bool keep_single = false, keep_multiword = false;
  std::string pos_filter;
  std::vector<std::string> exclude_wic;
  auto* c_filter = app.add_subcommand("filter", "Apply the lemma filters");
  c_filter->add_option("--in", in_path)->required();
  c_filter->add_option("--out", out_path)->required();
  c_filter->add_option("--min-senses", policy.min_senses);
  c_filter->add_option("--max-senses", policy.max_senses);
  c_filter->add_flag("--keep-single", keep_single, "Keep single-sense single-example lemmas");
  c_filter->add_flag("--keep-multiword", keep_multiword);
  c_filter->add_option("--pos", pos_filter);
  c_filter->add_option("--exclude-wic", exclude_wic, "WiC data files whose sentences are removed");

  std::vector<double> ratios{0.90, 0.05, 0.05};
  std::uint64_t seed = 0;
  std::string out_dir;
  auto* c_split = app.add_subcommand("split", "Lemma-disjoint train/dev/test split");
  c_split->add_option("--in", in_path)->required();
  c_split->add_option("--out-dir", out_dir)->required();
  c_split->add_option("--ratios", ratios)->expected(3);
  c_split->add_option("--seed", seed);

  auto* c_stats = app.add_subcommand("stats", "Print lexicon statistics as JSON");
  c_stats->add_option("--in", in_path)->required();

  std::size_t n_pairs = 0;
  std::string gold_path;
  auto* c_pairs = app.add_subcommand("wic-pairs", "Build balanced WiC-format pairs from a lexicon");
  c_pairs->add_option("--in", in_path)->required();
  c_pairs->add_option("--n", n_pairs)->required();
  c_pairs->add_option("--seed", seed);
  c_pairs->add_option("--data", out_path)->required();
  c_pairs->add_option("--gold", gold_path)->required();

  // encoder
  lexctx::ToyEncoderConfig toy;
  auto* c_init = app.add_subcommand("init-encoder", "Write a freshly initialised toy encoder checkpoint");
  c_init->add_option("--layers", toy.layers);
  c_init->add_option("--hidden", toy.hidden);
  c_init->add_option("--buckets", toy.buckets);
  c_init->add_option("--seed", toy.seed);
  c_init->add_option("--out", out_path)->required();

  std::string encoder_path, proj_path;
  int layer = -1;
  bool masked = false;
  auto* c_encode = app.add_subcommand("encode", "Dump target embeddings of a lexicon");
  c_encode->add_option("--lexicon", in_path)->required();
  c_encode->add_option("--encoder", encoder_path)->required();
  c_encode->add_option("--layer", layer, "Layer index, -1 for the last");
  c_encode->add_flag("--masked", masked);
  c_encode->add_option("--out", out_path)->required();

  lexctx::TrainConfig tcfg;
  std::string similarity = "cosine";
  auto* c_train = app.add_subcommand("train", "Contrastive fine-tuning on a lexicon");
  c_train->add_option("--lexicon", in_path)->required();
  c_train->add_option("--encoder", encoder_path)->required();
  c_train->add_option("--lr", tcfg.learning_rate);
  c_train->add_option("--epochs", tcfg.epochs);
  c_train->add_option("--tau", tcfg.temperature);
  c_train->add_option("--cap", tcfg.batch_cap);
  c_train->add_option("--seed", tcfg.seed);
  c_train->add_option("--similarity", similarity);
  c_train->add_option("--out-dir", out_dir)->required();

  // postprocess
  int components = 0;
  bool whiten = false;
  auto* c_pca_fit = app.add_subcommand("pca-fit", "Fit a projection on an embedding dump");
  c_pca_fit->add_option("--in,--dump", in_path)->required();
  c_pca_fit->add_option("--components", components)->required();
  c_pca_fit->add_flag("--whiten", whiten);
  c_pca_fit->add_option("--out", out_path)->required();

  auto* c_pca_apply = app.add_subcommand("pca-apply", "Project an embedding dump");
  c_pca_apply->add_option("--in,--dump", in_path)->required();
  c_pca_apply->add_option("--proj", proj_path)->required();
  c_pca_apply->add_option("--out", out_path)->required();

  // wic
  auto* c_score = app.add_subcommand("wic-score", "Cosine similarity of every WiC pair");
  c_score->add_option("--pairs,--data", in_path)->required();
  c_score->add_option("--gold", gold_path);
  c_score->add_option("--encoder", encoder_path)->required();
  c_score->add_option("--proj", proj_path);
  c_score->add_option("--layer", layer);
  c_score->add_option("--out", out_path)->required();

  double step = 0.02;
  auto* c_tune = app.add_subcommand("wic-tune", "Pick the accuracy-maximising threshold on scored dev pairs");
  c_tune->add_option("--scored", in_path)->required();
  c_tune->add_option("--step", step);
  c_tune->add_option("--out", out_path);

  std::string threshold_arg, predictions_path;
  auto* c_eval = app.add_subcommand("wic-eval", "Accuracy of scored pairs under a threshold");
  c_eval->add_option("--scored", in_path)->required();
  c_eval->add_option("--threshold", threshold_arg, "A number or a threshold file from wic-tune")->required();
  c_eval->add_option("--predictions", predictions_path, "Write T/F predictions");

  std::string pred_a, pred_b;
  double alpha = 0.05;
  auto* c_mcnemar = app.add_subcommand("wic-mcnemar", "McNemar test between two prediction files");
  c_mcnemar->add_option("--a", pred_a)->required();
  c_mcnemar->add_option("--b", pred_b)->required();
  c_mcnemar->add_option("--gold", gold_path)->required();
  c_mcnemar->add_option("--alpha", alpha);

  // frames
  lexctx::FrameConfig fcfg;
  fcfg.layer1 = -1;
  fcfg.layer2 = -1;
  std::string step1 = "xmeans", proj2_path;
  auto* c_frames = app.add_subcommand("frame-induct", "Two-step frame induction");
  c_frames->add_option("--instances", in_path)->required();
  c_frames->add_option("--encoder", encoder_path)->required();
  c_frames->add_option("--proj", proj_path, "Projection for step 1 (and step 2 unless --proj2)");
  c_frames->add_option("--proj2", proj2_path, "Projection for step 2");
  c_frames->add_option("--layer1", fcfg.layer1);
  c_frames->add_option("--layer2", fcfg.layer2);
  c_frames->add_option("--alpha1", fcfg.alpha1);
  c_frames->add_option("--alpha2", fcfg.alpha2);
  c_frames->add_option("--step1", step1);
  c_frames->add_option("--kmin", fcfg.kmin);
  c_frames->add_option("--kmax", fcfg.kmax);
  c_frames->add_option("--step1-threshold", fcfg.step1_threshold);
  c_frames->add_option("--term-threshold", fcfg.termination_threshold);
  c_frames->add_option("--seed", fcfg.seed);
  c_frames->add_option("--out", out_path)->required();

  std::string which = "purity,bcubed", metric_step = "step2";
  auto* c_metrics = app.add_subcommand("metrics", "Purity and B-cubed scores of frame assignments");
  c_metrics->add_option("--assignments", in_path)->required();
  c_metrics->add_option("--gold", gold_path, "Frame instances JSONL")->required();
  c_metrics->add_option("--which", which, "Comma-separated: purity, bcubed");
  c_metrics->add_option("--step", metric_step)->check(CLI::IsMember({"step1", "step2"}));

  std::string store_path;
  auto* c_grid = app.add_subcommand("grid", "Resumable hyperparameter grid search");
  c_grid->add_option("--config", in_path)->required();
  c_grid->add_option("--store", store_path, "Report store (default: cache dir)");
  c_grid->add_option("--out", out_path, "Write aggregated reports as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_synth->parsed()) {
      lexctx::SyntheticCorpus corpus = lexctx::make_synthetic_corpus(synth);
      write_lexicon_file(synth_lexicon, corpus.lexicon);
      if (!synth_instances.empty()) {
        auto out = open_out(synth_instances);
        lexctx::write_frame_instances(out, corpus.instances);
      }
    } else if (c_ingest->parsed()) {
      auto ds = read_lexicon(in_path, true);
      write_lexicon_file(out_path, ds);
      std::cout << stats_json(lexctx::dataset_stats(ds)).dump() << "\n";
    } else if (c_filter->parsed()) {
      policy.drop_single_sense_single_example = !keep_single;
      policy.drop_multiword = !keep_multiword;
      if (!pos_filter.empty()) policy.pos = pos_filter;
      auto ds = lexctx::filter_dataset(read_lexicon(in_path), policy);
      std::size_t removed = 0;
      if (!exclude_wic.empty()) {
        std::set<std::string> sentences;
        for (const auto& p : exclude_wic) {
          auto in = open_in(p);
          sentences.merge(lexctx::read_wic_sentences(in));
        }
        auto ex = lexctx::exclude_sentences(ds, sentences);
        ds = std::move(ex.dataset);
        removed = ex.removed;
        // Removing sentences can leave lemmas that no longer pass.
        ds = lexctx::filter_dataset(ds, policy);
      }
      write_lexicon_file(out_path, ds);
      Json summary = stats_json(lexctx::dataset_stats(ds));
      summary["removed_wic_sentences"] = removed;
      std::cout << summary.dump() << "\n";
    } else if (c_split->parsed()) {
      auto bundle = lexctx::split_by_lemma(read_lexicon(in_path), {ratios[0], ratios[1], ratios[2]}, seed);
      write_lexicon_file((fs::path(out_dir) / "train.jsonl").string(), bundle.train);
      write_lexicon_file((fs::path(out_dir) / "dev.jsonl").string(), bundle.dev);
      write_lexicon_file((fs::path(out_dir) / "test.jsonl").string(), bundle.test);
      std::cout << Json{{"train", bundle.train.size()}, {"dev", bundle.dev.size()}, {"test", bundle.test.size()}}.dump()
                << "\n";
    } else if (c_stats->parsed()) {
      std::cout << stats_json(lexctx::dataset_stats(read_lexicon(in_path))).dump(2) << "\n";
    } else if (c_pairs->parsed()) {
      auto set = lexctx::build_wic_pairs(read_lexicon(in_path), n_pairs, seed);
      auto data = open_out(out_path);
      auto gold = open_out(gold_path);
      lexctx::write_wic_pairs(data, gold, set.pairs);
      if (set.exhausted) std::cerr << "warning: only " << set.pairs.size() << " pairs could be built\n";
      std::cout << Json{{"pairs", set.pairs.size()}, {"positives", set.positives}, {"negatives", set.negatives}}.dump()
                << "\n";
    } else if (c_init->parsed()) {
      lexctx::ToyEncoder(toy).save(out_path);
    } else if (c_encode->parsed()) {
      auto enc = read_encoder(encoder_path);
      auto ds = read_lexicon(in_path);
      auto dump = lexctx::encode_corpus(*enc, ds.examples(), layer < 0 ? enc->num_layers() : layer, masked);
      lexctx::save_dump(out_path, dump);
      if (dump.failures() > 0) std::cerr << dump.failures() << " examples failed alignment\n";
    } else if (c_train->parsed()) {
      auto enc = read_encoder(encoder_path);
      tcfg.similarity = lexctx::parse_similarity(similarity);
      fs::create_directories(out_dir);
      auto log = lexctx::train(
          *enc, read_lexicon(in_path), tcfg, [&](int epoch, const lexctx::Encoder& e, const lexctx::TrainLog& lg) {
            e.save((fs::path(out_dir) / ("epoch-" + std::to_string(epoch + 1) + ".ckpt")).string());
            std::cerr << "epoch " << epoch + 1 << " mean loss " << lg.epoch_mean_loss.back() << "\n";
          });
      enc->save((fs::path(out_dir) / "final.ckpt").string());
      auto out = open_out((fs::path(out_dir) / "train_log.jsonl").string());
      lexctx::write_train_log(out, log);
    } else if (c_pca_fit->parsed()) {
      auto dump = lexctx::load_dump(in_path);
      lexctx::save_projection(out_path, lexctx::fit_projection(dump.valid_matrix(), components, whiten));
    } else if (c_pca_apply->parsed()) {
      auto dump = lexctx::load_dump(in_path);
      auto proj = lexctx::load_projection(proj_path);
      std::vector<std::size_t> kept;
      Eigen::MatrixXd projected = lexctx::project_rows(proj, dump.valid_matrix(&kept));
      lexctx::EmbeddingDump out;
      out.rows = dump.rows;
      out.vectors =
          lexctx::FloatRows::Constant(dump.vectors.rows(), proj.output_dim(), std::numeric_limits<float>::quiet_NaN());
      for (std::size_t i = 0; i < kept.size(); ++i) {
        out.vectors.row(static_cast<Eigen::Index>(kept[i])) = projected.row(static_cast<Eigen::Index>(i)).cast<float>();
      }
      lexctx::save_dump(out_path, out);
    } else if (c_score->parsed()) {
      auto enc = read_encoder(encoder_path);
      auto proj = maybe_projection(proj_path);
      auto data = open_in(in_path);
      std::vector<lexctx::WiCPair> pairs;
      if (gold_path.empty()) {
        pairs = lexctx::read_wic_pairs(data, nullptr);
      } else {
        auto gold = open_in(gold_path);
        pairs = lexctx::read_wic_pairs(data, &gold);
      }
      auto result = lexctx::score_pairs(*enc, proj ? &*proj : nullptr, pairs, layer);
      auto out = open_out(out_path);
      lexctx::write_scored(out, result.scored);
      for (std::size_t i : result.excluded) std::cerr << "pair " << i << " excluded: alignment failed\n";
    } else if (c_tune->parsed()) {
      auto scored = read_scored_file(in_path);
      auto model = lexctx::tune_threshold(scored, step);
      Json j{{"threshold", model.threshold}, {"step", model.step}, {"dev_accuracy", model.dev_accuracy}};
      if (!out_path.empty()) {
        auto out = open_out(out_path);
        out << j.dump(2) << "\n";
      }
      std::cout << j.dump() << "\n";
    } else if (c_eval->parsed()) {
      auto scored = read_scored_file(in_path);
      lexctx::ThresholdModel model;
      model.threshold = read_threshold(threshold_arg);
      auto report = lexctx::evaluate_accuracy(scored, model);
      if (!predictions_path.empty()) {
        auto out = open_out(predictions_path);
        lexctx::write_labels(out, lexctx::predict(scored, model.threshold));
      }
      std::cout << accuracy_json(report, model.threshold).dump() << "\n";
    } else if (c_mcnemar->parsed()) {
      auto a_in = open_in(pred_a);
      auto b_in = open_in(pred_b);
      auto g_in = open_in(gold_path);
      auto r =
          lexctx::mcnemar_test(lexctx::read_labels(a_in), lexctx::read_labels(b_in), lexctx::read_labels(g_in), alpha);
      std::cout << Json{{"a_only", r.a_only},
                        {"b_only", r.b_only},
                        {"test", r.exact ? "exact" : "chi2"},
                        {"statistic", r.statistic},
                        {"p_value", r.p_value},
                        {"significant", r.significant},
                        {"no_discordance", r.no_discordance}}
                       .dump()
                << "\n";
    } else if (c_frames->parsed()) {
      auto enc = read_encoder(encoder_path);
      auto in = open_in(in_path);
      auto instances = lexctx::parse_frame_instances(in);
      if (fcfg.layer1 < 0) fcfg.layer1 = enc->num_layers();
      if (fcfg.layer2 < 0) fcfg.layer2 = enc->num_layers();
      fcfg.step1 = lexctx::parse_step1_algorithm(step1);
      fcfg.validate(*enc);
      auto proj1 = maybe_projection(proj_path);
      auto proj2 = proj2_path.empty() ? proj1 : maybe_projection(proj2_path);
      auto s1 = lexctx::induce_step1(*enc, proj1 ? &*proj1 : nullptr, instances, fcfg);
      auto s2 = lexctx::induce_step2(*enc, proj2 ? &*proj2 : nullptr, instances, s1, fcfg);
      auto out = open_out(out_path);
      lexctx::write_assignments(out, s1, s2);
      auto ev = lexctx::evaluate_frames(instances, s1, s2);
      std::cout << Json{{"plu", ev.n_units},
                        {"frames", ev.n_frames},
                        {"excluded", ev.n_excluded},
                        {"step1", {{"pif", ev.step1_purity.f1}, {"bcf", ev.step1_bcubed.f1}}},
                        {"step2", {{"pif", ev.step2_purity.f1}, {"bcf", ev.step2_bcubed.f1}}}}
                       .dump()
                << "\n";
    } else if (c_metrics->parsed()) {
      auto gin = open_in(gold_path);
      auto instances = lexctx::parse_frame_instances(gin);
      auto ain = open_in(in_path);
      lexctx::LabeledPartition part;
      std::string line;
      while (std::getline(ain, line)) {
        if (line.empty()) continue;
        Json j = Json::parse(line);
        auto id = j.at("instance_id").get<std::size_t>();
        if (id >= instances.size()) throw lexctx::ArgumentError("instance_id out of range: " + std::to_string(id));
        const auto& inst = instances[id];
        if (metric_step == "step1") {
          part.system.push_back(std::to_string(j.at("plu_id").get<long long>()));
          part.gold.push_back(inst.lemma + "\x1f" + inst.gold_lu);
        } else {
          part.system.push_back(std::to_string(j.at("frame_id").get<long long>()));
          part.gold.push_back(inst.gold_frame);
        }
      }
      Json report = Json::object();
      std::stringstream ss(which);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (item == "purity") {
          auto pu = lexctx::purity_scores(part);
          report["pu"] = pu.purity;
          report["ipu"] = pu.inverse_purity;
          report["pif"] = pu.f1;
        } else if (item == "bcubed") {
          auto bc = lexctx::bcubed_scores(part);
          report["bcp"] = bc.precision;
          report["bcr"] = bc.recall;
          report["bcf"] = bc.f1;
        } else {
          throw lexctx::ArgumentError("unknown metric family: " + item);
        }
      }
      std::cout << report.dump() << "\n";
    } else if (c_grid->parsed()) {
      auto in = open_in(in_path);
      Json config = Json::parse(in);
      const std::string pipeline = config.at("pipeline").get<std::string>();
      auto ctx = std::make_shared<lexctx::PipelineContext>(lexctx::PipelineContext::from_config(
          config.value("context", Json::object()), fs::path(in_path).parent_path().string()));
      auto registry = lexctx::builtin_pipelines(ctx);
      if (!registry.contains(pipeline)) throw lexctx::ArgumentError("unknown pipeline: " + pipeline);
      if (store_path.empty()) store_path = (fs::path(lexctx::cache_dir()) / (pipeline + ".reports.jsonl")).string();
      if (fs::path(store_path).has_parent_path()) fs::create_directories(fs::path(store_path).parent_path());
      lexctx::ReportStore store(store_path);
      auto reports = lexctx::run_grid(lexctx::GridSpec::from_json(config), registry.get(pipeline), store);

      if (pipeline == "wic-dev-macro") {
        std::vector<std::string> names;
        for (const auto& s : ctx->wic_dev) names.push_back(s.name);
        std::cout << lexctx::render_wic_grid(reports, names);
      } else {
        std::cout << lexctx::render_frame_grid(reports);
      }
      if (!out_path.empty()) {
        Json arr = Json::array();
        for (const auto& r : reports) {
          arr.push_back({{"config", r.config},
                         {"hash", r.hash},
                         {"values", r.values},
                         {"mean", r.criterion.mean},
                         {"std", r.criterion.std},
                         {"failed", r.failed},
                         {"errors", r.errors},
                         {"reused", r.reused}});
        }
        auto out = open_out(out_path);
        out << arr.dump(2) << "\n";
      }
      for (const auto& r : reports) {
        for (const auto& e : r.errors) std::cerr << "run " << r.hash << " failed: " << e << "\n";
      }
    }
  } catch (const lexctx::ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
