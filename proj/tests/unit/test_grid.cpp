#include <cmath>
#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "lexctx/errors.h"
#include "lexctx/grid.h"
#include "lexctx/pipelines.h"
#include "lexctx/report_tables.h"
#include "lexctx/synthetic.h"
#include "lexctx/toy_encoder.h"

using namespace lexctx;

namespace {

GridSpec two_by_two(int runs) {
  return GridSpec::from_json(Json{{"params", {{"a", {1, 2}}, {"b", {"x", "y"}}}}, {"n_runs", runs}, {"base_seed", 7}});
}

std::string temp_path(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("lexctx_test_" + name);
  std::filesystem::remove(p);
  return p.string();
}

}  // namespace

TEST_CASE("grid expansion") {
  auto spec = two_by_two(1);
  auto configs = expand_grid(spec);
  REQUIRE(configs.size() == 4);
  CHECK(configs[0] == Json{{"a", 1}, {"b", "x"}});
  CHECK(configs[1] == Json{{"a", 1}, {"b", "y"}});
  CHECK(configs[3] == Json{{"a", 2}, {"b", "y"}});

  auto scalar = GridSpec::from_json(Json{{"grid", {{"lr", 0.1}}}});
  CHECK(expand_grid(scalar).size() == 1);
  CHECK(scalar.n_runs == 5);
  CHECK_THROWS_AS(GridSpec::from_json(Json{{"params", {{"a", Json::array()}}}}), ArgumentError);
  CHECK_THROWS_AS(GridSpec::from_json(Json{{"params", {{"a", {1}}}}, {"n_runs", 0}}), ArgumentError);
}

TEST_CASE("config hash") {
  Json a{{"x", 1}, {"y", 0.5}};
  Json b = Json::parse(R"({"y": 0.5, "x": 1})");
  CHECK(config_hash(a) == config_hash(b));
  CHECK(config_hash(a).size() == 16);
  CHECK(config_hash(a) != config_hash(Json{{"x", 2}, {"y", 0.5}}));
}

TEST_CASE("aggregate runs") {
  std::vector<double> five{1, 2, 3, 4, 5};
  auto m = aggregate_runs(five);
  CHECK(m.mean == 3.0);
  CHECK(m.std == doctest::Approx(std::sqrt(2.0)));
  std::vector<double> one{7};
  CHECK(aggregate_runs(one).mean == 7.0);
  CHECK(aggregate_runs(one).std == 0.0);
  CHECK_THROWS_AS(aggregate_runs(std::vector<double>{}), ArgumentError);
}

TEST_CASE("run_grid sorts, resumes and records failures") {
  const std::string path = temp_path("store.jsonl");
  int calls = 0;
  Pipeline p = [&](const Json& c, std::uint64_t seed) {
    ++calls;
    if (c["b"] == "y" && c["a"] == 2) throw std::runtime_error("boom");
    PipelineOutcome o;
    o.criterion = c["a"].get<int>() * 10 + (c["b"] == "x" ? 1 : 0) + 0.001 * static_cast<double>(seed);
    o.metrics["seed"] = static_cast<double>(seed);
    return o;
  };
  {
    ReportStore store(path);
    auto reports = run_grid(two_by_two(2), p, store);
    CHECK(calls == 8);
    REQUIRE(reports.size() == 4);
    CHECK(reports[0].config == Json{{"a", 2}, {"b", "x"}});
    CHECK(reports[1].config == Json{{"a", 1}, {"b", "x"}});
    CHECK(reports[2].config == Json{{"a", 1}, {"b", "y"}});
    CHECK(reports[3].failed);
    CHECK(reports[3].errors.size() == 2);
    CHECK(reports[0].values == std::vector<double>{21.007, 21.008});
    CHECK(reports[0].metrics["seed"] == std::vector<double>{7, 8});
    CHECK(reports[0].criterion.mean == doctest::Approx(21.0075));
    CHECK(store.size() == 8);
  }
  {
    ReportStore store(path);
    CHECK(store.size() == 8);
    auto rec = store.find(config_hash(Json{{"a", 1}, {"b", "x"}}), 8);
    REQUIRE(rec);
    CHECK(rec->criterion == 11.008);
    CHECK_FALSE(store.find(config_hash(Json{{"a", 2}, {"b", "y"}}), 7)->ok);
    calls = 0;
    auto reports = run_grid(two_by_two(2), p, store);
    CHECK(calls == 2);
    CHECK(reports[0].reused == 2);
    CHECK(reports[3].failed);
  }
  std::filesystem::remove(path);
}

TEST_CASE("in-memory store and registry") {
  ReportStore store;
  int calls = 0;
  Pipeline p = [&](const Json&, std::uint64_t) {
    ++calls;
    return PipelineOutcome{0.5, {}};
  };
  run_grid(two_by_two(1), p, store);
  run_grid(two_by_two(1), p, store);
  CHECK(calls == 4);

  PipelineRegistry reg;
  reg.add("demo", p);
  CHECK(reg.contains("demo"));
  CHECK(reg.names() == std::vector<std::string>{"demo"});
  CHECK_THROWS_AS(reg.get("missing"), ArgumentError);
}

TEST_CASE("layer pair prescreen") {
  auto best = prescreen_layer_pairs({1, 2, 3}, [](int a, int b) { return -std::abs(a - 2) - std::abs(b - 3); }, 3);
  REQUIRE(best.size() == 3);
  CHECK(best[0] == std::pair{2, 3});
  CHECK(best[1] == std::pair{1, 3});
  CHECK(best[2] == std::pair{2, 2});
  CHECK(prescreen_layer_pairs({0, 1}, [](int, int) { return 0.0; }).size() == 4);
}

TEST_CASE("report tables") {
  CHECK(format_mean_std({0.714, 0.002}) == "71.4(±0.2)");
  auto t = render_table({"a", "long"}, {{"x±", "1"}, {"yy", "22"}});
  CHECK(t == "a   long\n--------\nx±  1\nyy  22\n");

  WicResultRow row{true, true, "synth", {MeanStd{0.654, 0.0}, std::nullopt}};
  auto wic = render_wic_results({row}, {"Orig", "Other"});
  CHECK(wic.find("65.4(±0.0)") != std::string::npos);
  CHECK(wic.find("yes") != std::string::npos);

  RunReport rep;
  rep.config = Json{{"learning_rate", 1e-6}, {"epochs", 2}, {"whiten", true}};
  rep.criterion = {0.7, 0.01};
  rep.metrics["acc:Orig"] = {0.7, 0.72};
  auto grid = render_wic_grid({rep}, {"Orig"});
  CHECK(grid.find("1e-06") != std::string::npos);
  CHECK(grid.find("71.0(±1.0)") != std::string::npos);

  FrameResultRow fr;
  fr.model = "B";
  fr.layer1 = 11;
  fr.layer2 = 2;
  fr.alpha2 = 0.2;
  fr.step2_bcubed.f1 = 0.5;
  auto dev = render_frame_dev({fr});
  CHECK(dev.find("B      11  2   0.2") != std::string::npos);
  CHECK(dev.find("50.0") != std::string::npos);
  CHECK(render_frame_results({fr}).find("#pLU") != std::string::npos);
}

TEST_CASE("pipeline parameters") {
  auto cfg = frame_config_from(Json{{"alpha2", 0.2}, {"step1", "group-average"}, {"term_threshold", 0.1}}, 4, 3);
  CHECK(cfg.layer1 == 4);
  CHECK(cfg.layer2 == 4);
  CHECK(cfg.alpha2 == 0.2);
  CHECK(cfg.step1 == Step1Algorithm::kGroupAverage);
  CHECK(cfg.termination_threshold == 0.1);
  CHECK(cfg.seed == 3);
  auto tc = train_config_from(Json{{"learning_rate", 0.01}, {"epochs", 2}}, 9);
  CHECK(tc.learning_rate == 0.01);
  CHECK(tc.epochs == 2);
  CHECK(tc.seed == 9);
}

TEST_CASE("builtin pipelines run on a small synthetic corpus") {
  SyntheticSpec spec;
  spec.n_lemmas = 6;
  spec.frame_vocabulary = 6;
  spec.context_words = 6;
  spec.fillers = 0;
  auto corpus = make_synthetic_corpus(spec);
  auto ctx = std::make_shared<PipelineContext>();
  ctx->base_encoder =
      std::make_shared<ToyEncoder>(ToyEncoderConfig{.layers = 2, .hidden = 16, .buckets = 512, .seed = 1});
  ctx->train_lexicon = corpus.lexicon;
  ctx->frame_dev = corpus.instances;
  auto pairs = build_wic_pairs(corpus.lexicon, 20, 4);
  ctx->wic_dev.push_back({"synth", pairs.pairs});
  auto reg = builtin_pipelines(ctx);
  REQUIRE(reg.contains("wic-dev-macro"));
  REQUIRE(reg.contains("frame-dev-bcf"));

  auto w = reg.get("wic-dev-macro")(Json{{"pca_components", 4}}, 0);
  CHECK(w.criterion >= 0.5);
  CHECK(w.criterion <= 1.0);
  CHECK(w.metrics.at("acc:synth") == w.criterion);
  CHECK(w.metrics.contains("threshold:synth"));

  auto f = reg.get("frame-dev-bcf")(Json{{"alpha2", 1.0}, {"term_threshold", 0.05}}, 0);
  CHECK(f.criterion == f.metrics.at("bcf"));
  CHECK(f.metrics.at("n_plu") >= 6);
}
