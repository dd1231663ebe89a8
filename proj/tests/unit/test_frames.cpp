#include <sstream>

#include "doctest.h"
#include "fake_encoder.h"
#include "json.hpp"
#include "lexctx/embedding.h"
#include "lexctx/errors.h"
#include "lexctx/frame_induction.h"
#include "lexctx/rng.h"

using namespace lexctx;

namespace {

// Targets are written "lemma+piece"; the piece decides which group an
// occurrence falls in.
struct Fixture {
  std::map<std::string, Eigen::VectorXd> table;
  std::vector<FrameInstance> instances;

  Fixture() {
    Rng rng(31);
    auto axis = [](int k, double len) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(16);
      v[k] = len;
      return v;
    };
    auto noise = [&] {
      Eigen::VectorXd v(16);
      for (int j = 0; j < 16; ++j) v[j] = 0.1 * rng.normal();
      return v;
    };
    table["bank"] = axis(0, 1);
    table["river"] = axis(0, 1);
    table["solo"] = axis(3, 1);
    for (int i = 0; i < 10; ++i) {
      table["a" + std::to_string(i)] = axis(1, 8) + noise();
      table["b" + std::to_string(i)] = axis(2, 8) + noise();
    }
    for (int i = 0; i < 10; ++i) {
      add("bank", "a" + std::to_string(i), "bank.shore", "Shore");
      add("bank", "b" + std::to_string(i), "bank.money", "Money");
      add("river", "a" + std::to_string(9 - i), "river.n", "Shore");
    }
    add("solo", "z", "solo.n", "Alone");
  }

  void add(const std::string& lemma, const std::string& piece, const std::string& lu, const std::string& frame) {
    const std::string word = lemma + "+" + piece;
    instances.push_back({lemma, "the " + word + " here", {4, 4 + word.size()}, lu, frame});
  }
};

FrameConfig config() {
  FrameConfig cfg;
  cfg.layer1 = 0;
  cfg.layer2 = 0;
  cfg.alpha2 = 0.0;
  cfg.termination_threshold = 0.05;
  cfg.seed = 3;
  return cfg;
}

}  // namespace

TEST_CASE("step 1 splits planted groups within each lemma only") {
  Fixture f;
  FakeEncoder enc(f.table);
  auto s1 = induce_step1(enc, nullptr, f.instances, config());
  REQUIRE(s1.units.size() == 4);
  CHECK(s1.excluded.empty());
  std::map<std::string, int> per_lemma;
  for (const auto& u : s1.units) {
    ++per_lemma[u.lemma];
    for (std::size_t m : u.members) CHECK(f.instances[m].lemma == u.lemma);
  }
  CHECK(per_lemma["bank"] == 2);
  CHECK(per_lemma["river"] == 1);
  CHECK(per_lemma["solo"] == 1);
  for (std::size_t i = 0; i < f.instances.size(); ++i) {
    REQUIRE(s1.unit_of[i] >= 0);
    CHECK(s1.units[s1.unit_of[i]].lemma == f.instances[i].lemma);
  }

  auto cfg = config();
  cfg.step1 = Step1Algorithm::kGroupAverage;
  cfg.step1_threshold = 0.2;
  CHECK(induce_step1(enc, nullptr, f.instances, cfg).units.size() == 4);
}

TEST_CASE("step 2 groups units into frames") {
  Fixture f;
  FakeEncoder enc(f.table);
  auto cfg = config();
  auto s1 = induce_step1(enc, nullptr, f.instances, cfg);
  auto s2 = induce_step2(enc, nullptr, f.instances, s1, cfg);
  CHECK(s2.frames.n_clusters() == 3);
  auto ev = evaluate_frames(f.instances, s1, s2);
  CHECK(ev.n_units == 4);
  CHECK(ev.n_frames == 3);
  CHECK(ev.n_excluded == 0);
  CHECK(ev.step1_bcubed.f1 == doctest::Approx(1.0));
  CHECK(ev.step2_bcubed.f1 == doctest::Approx(1.0));
  CHECK(ev.step2_purity.f1 == doctest::Approx(1.0));

  cfg.alpha2 = 0.4;
  auto s2b = induce_step2(enc, nullptr, f.instances, s1, cfg);
  for (std::size_t u = 0; u < s1.units.size(); ++u) {
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(16);
    for (std::size_t m : s1.units[u].members)
      mean += blended_embedding(enc, f.instances[m].sentence, f.instances[m].target, 0, 0.4);
    mean /= static_cast<double>(s1.units[u].members.size());
    CHECK((s2b.unit_centroids.row(static_cast<Eigen::Index>(u)).transpose() - mean).norm() < 1e-6);
  }
}

TEST_CASE("trivial floors") {
  Fixture f;
  FakeEncoder enc(f.table);
  std::vector<FrameInstance> one{f.instances.back()};
  auto s1 = induce_step1(enc, nullptr, one, config());
  CHECK(s1.units.size() == 1);
  auto s2 = induce_step2(enc, nullptr, one, s1, config());
  CHECK(s2.frames.n_clusters() == 1);
  CHECK(s2.frame_of == std::vector<int>{0});

  Step1Result empty;
  CHECK_THROWS_AS(induce_step2(enc, nullptr, one, empty, config()), ArgumentError);
}

TEST_CASE("unaligned instances are excluded") {
  Fixture f;
  f.instances.push_back({"bank", "the  bank", {3, 4}, "bank.shore", "Shore"});
  FakeEncoder enc(f.table);
  auto s1 = induce_step1(enc, nullptr, f.instances, config());
  auto s2 = induce_step2(enc, nullptr, f.instances, s1, config());
  const std::size_t last = f.instances.size() - 1;
  CHECK(s1.excluded == std::vector<std::size_t>{last});
  CHECK(s1.unit_of[last] == -1);
  CHECK(s2.frame_of[last] == -1);
  auto ev = evaluate_frames(f.instances, s1, s2);
  CHECK(ev.n_excluded == 1);

  std::stringstream out;
  write_assignments(out, s1, s2);
  std::string line;
  std::size_t n = 0;
  nlohmann::json rec;
  while (std::getline(out, line)) {
    rec = nlohmann::json::parse(line);
    CHECK(rec["instance_id"] == n);
    ++n;
  }
  CHECK(n == f.instances.size());
  CHECK(rec["plu_id"].is_null());
  CHECK(rec["frame_id"].is_null());
}

TEST_CASE("config validation") {
  Fixture f;
  FakeEncoder enc(f.table);
  auto cfg = config();
  cfg.layer2 = 3;
  CHECK_THROWS_AS(cfg.validate(enc), ArgumentError);
  cfg = config();
  cfg.alpha1 = 1.5;
  CHECK_THROWS_AS(cfg.validate(enc), ArgumentError);
  cfg = config();
  cfg.kmin = 4;
  cfg.kmax = 2;
  CHECK_THROWS_AS(cfg.validate(enc), ArgumentError);
  CHECK(parse_step1_algorithm("group-average") == Step1Algorithm::kGroupAverage);
  CHECK(to_string(parse_step1_algorithm("xmeans")) == "xmeans");
  CHECK_THROWS_AS(parse_step1_algorithm("dbscan"), ArgumentError);
}

TEST_CASE("instance file round trip") {
  Fixture f;
  std::stringstream buf;
  write_frame_instances(buf, f.instances);
  auto back = parse_frame_instances(buf);
  CHECK(back == f.instances);

  std::stringstream bad(
      R"({"lemma":"x","sentence":"ab","target_start":1,"target_end":5,"gold_lu":"x.n","gold_frame":"F"})");
  CHECK_THROWS_AS(parse_frame_instances(bad), ParseError);

  auto lex = frames_as_lexicon(f.instances);
  CHECK(lex.examples().size() == f.instances.size());
}
