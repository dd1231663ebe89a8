#include <set>
#include <sstream>

#include "doctest.h"
#include "fake_encoder.h"
#include "json.hpp"
#include "lexctx/errors.h"
#include "lexctx/synthetic.h"
#include "lexctx/toy_encoder.h"
#include "lexctx/trainer.h"

using namespace lexctx;

namespace {

void add(std::vector<SenseExample>& v, const std::string& lemma, const std::string& sense, int n) {
  for (int i = 0; i < n; ++i) {
    v.push_back({lemma, "verb", sense, lemma + " " + sense + " " + std::to_string(i), {0, lemma.size()}});
  }
}

}  // namespace

TEST_CASE("batch construction") {
  std::vector<SenseExample> v;
  for (int s = 0; s < 4; ++s) add(v, "big", "big" + std::to_string(s), 25);
  add(v, "pair", "p1", 2);
  add(v, "split", "s1", 1);
  add(v, "split", "s2", 1);
  LexiconDataset ds(v);
  auto plan = build_batches(ds, 64, 1);
  REQUIRE(plan.batches.size() == 2);
  CHECK(plan.dropped == 1);
  CHECK(plan.batches[0].lemma == "big");
  CHECK(plan.batches[0].examples.size() == 64);
  std::set<std::string> distinct;
  for (auto& e : plan.batches[0].examples) distinct.insert(e.sentence);
  CHECK(distinct.size() == 64);
  CHECK(plan.batches[1].examples.size() == 2);

  auto again = build_batches(ds, 64, 1);
  CHECK(again.batches[0].examples == plan.batches[0].examples);
  auto other = build_batches(ds, 64, 2);
  CHECK(other.batches[0].examples != plan.batches[0].examples);
  CHECK_THROWS_AS(build_batches(ds, 1, 1), ArgumentError);
}

TEST_CASE("epoch order is a seeded permutation") {
  auto a = epoch_order(10, 3, 0);
  auto b = epoch_order(10, 3, 1);
  CHECK(std::set<std::size_t>(a.begin(), a.end()).size() == 10);
  CHECK(a == epoch_order(10, 3, 0));
  CHECK(a != b);
  CHECK(class_labels({"x", "y", "x", "z"}) == std::vector<int>{0, 1, 0, 2});
}

TEST_CASE("training errors") {
  std::vector<SenseExample> v;
  add(v, "split", "s1", 1);
  add(v, "split", "s2", 1);
  ToyEncoder enc({2, 8, 128, 1});
  TrainConfig cfg;
  CHECK_THROWS_AS(train(enc, LexiconDataset(v), cfg), EmptyTrainingError);
  cfg.epochs = 0;
  CHECK_THROWS_AS(train(enc, LexiconDataset(v), cfg), ArgumentError);

  std::map<std::string, Eigen::VectorXd> table{{"a", Eigen::VectorXd::Ones(2)}};
  FakeEncoder frozen(table);
  std::vector<SenseExample> ok;
  add(ok, "a", "a1", 2);
  CHECK_THROWS_AS(train(frozen, LexiconDataset(ok), TrainConfig{}), ArgumentError);
}

TEST_CASE("toy training lowers the loss and writes a log") {
  SyntheticSpec spec;
  spec.n_lemmas = 8;
  spec.min_senses = 2;
  spec.max_senses = 2;
  spec.seed = 4;
  auto corpus = make_synthetic_corpus(spec);
  ToyEncoder enc({2, 16, 1024, 2});
  TrainConfig cfg;
  cfg.learning_rate = 2e-3;
  cfg.epochs = 5;
  cfg.seed = 8;
  int calls = 0;
  auto log = train(enc, corpus.lexicon, cfg, [&](int epoch, const Encoder&, const TrainLog& l) {
    CHECK(epoch == calls++);
    CHECK(l.epoch_mean_loss.size() == static_cast<std::size_t>(epoch + 1));
  });
  CHECK(calls == 5);
  REQUIRE(log.epoch_mean_loss.size() == 5);
  for (int e = 1; e < 5; ++e) CHECK(log.epoch_mean_loss[e] < log.epoch_mean_loss[e - 1]);
  CHECK(log.batches.size() == 40);

  std::stringstream out;
  write_train_log(out, log);
  std::string line;
  std::getline(out, line);
  auto first = nlohmann::json::parse(line);
  CHECK(first["type"] == "config");
  CHECK(first["optimizer"] == "adam");
  CHECK(first["similarity"] == "cosine");
  int lines = 1;
  while (std::getline(out, line)) ++lines;
  CHECK(lines == 1 + 40 + 5 + 1);
}

TEST_CASE("training is deterministic for a seed") {
  SyntheticSpec spec;
  spec.n_lemmas = 4;
  auto corpus = make_synthetic_corpus(spec);
  TrainConfig cfg;
  cfg.learning_rate = 1e-3;
  cfg.epochs = 2;
  ToyEncoder a({2, 8, 256, 1}), b({2, 8, 256, 1});
  auto la = train(a, corpus.lexicon, cfg);
  auto lb = train(b, corpus.lexicon, cfg);
  CHECK(la.epoch_mean_loss == lb.epoch_mean_loss);
  CHECK(a.parameters()[1] == b.parameters()[1]);
}
