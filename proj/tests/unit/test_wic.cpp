#include <cmath>
#include <sstream>

#include "doctest.h"
#include "fake_encoder.h"
#include "lexctx/errors.h"
#include "lexctx/rng.h"
#include "lexctx/wic.h"
#include "oracles.h"

using namespace lexctx;

namespace {

std::vector<ScoredPair> scored_from(const std::vector<double>& pos, const std::vector<double>& neg) {
  std::vector<ScoredPair> out;
  for (double s : pos) out.push_back({WiCPair{.lemma = "x", .label = true}, s});
  for (double s : neg) out.push_back({WiCPair{.lemma = "x", .label = false}, s});
  return out;
}

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

}  // namespace

TEST_CASE("threshold grid") {
  auto g = threshold_grid(0.02);
  REQUIRE(g.size() == 101);
  CHECK(g.front() == -1.0);
  CHECK(g.back() == 1.0);
  CHECK(g[61] == 0.22);
  CHECK(threshold_grid(0.5).size() == 5);
  CHECK_THROWS_AS(threshold_grid(0.0), ArgumentError);
  CHECK_THROWS_AS(threshold_grid(1.0), ArgumentError);
}

TEST_CASE("separable and inverted tuning") {
  auto s = scored_from({0.9, 0.8}, {0.2, 0.1});
  auto m = tune_threshold(s);
  CHECK(m.dev_accuracy == 1.0);
  CHECK(m.threshold == doctest::Approx(0.22).epsilon(1e-12));
  CHECK(evaluate_accuracy(s, m).accuracy == 1.0);

  auto inv = scored_from({0.9}, {0.95});
  auto mi = tune_threshold(inv);
  CHECK(mi.dev_accuracy == 0.5);
  CHECK(mi.threshold == -1.0);

  auto coarse = tune_threshold(s, 0.5);
  CHECK(coarse.dev_accuracy <= m.dev_accuracy);
  CHECK(tune_threshold(s).threshold == m.threshold);
}

TEST_CASE("single class tuning is degenerate") {
  auto s = scored_from({0.3, 0.4}, {});
  CHECK_THROWS_AS(tune_threshold(s), DegenerateTuningError);
  CHECK_THROWS_AS(tune_threshold(scored_from({}, {0.1})), DegenerateTuningError);
}

TEST_CASE("tuner agrees with exhaustive search") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(40));
    std::vector<double> sims;
    std::vector<bool> labels;
    for (int i = 0; i < n; ++i) {
      labels.push_back(i == 0 ? true : i == 1 ? false : rng.uniform() < 0.5);
      sims.push_back(std::clamp(rng.normal() * 0.4 + (labels.back() ? 0.3 : 0.0), -1.0, 1.0));
    }
    std::vector<ScoredPair> s;
    for (int i = 0; i < n; ++i) s.push_back({WiCPair{.label = labels[i]}, sims[i]});
    auto got = tune_threshold(s);
    auto want = oracle::best_threshold(sims, labels, 0.02);
    CHECK(got.dev_accuracy == doctest::Approx(want.accuracy).epsilon(1e-12));
    CHECK(got.threshold == doctest::Approx(want.threshold).epsilon(1e-9));
  }
}

TEST_CASE("accuracy report and monotone transforms") {
  auto s = scored_from({0.9, 0.4, -0.2}, {0.5, 0.1, -0.5, -0.6});
  ThresholdModel m{.threshold = 0.3};
  auto r = evaluate_accuracy(s, m);
  CHECK(r.n == 7);
  CHECK(r.true_positive == 2);
  CHECK(r.false_negative == 1);
  CHECK(r.false_positive == 1);
  CHECK(r.true_negative == 3);
  CHECK(r.accuracy == doctest::Approx(5.0 / 7));
  CHECK(r.positive_accuracy == doctest::Approx(2.0 / 3));
  CHECK(r.negative_accuracy == doctest::Approx(0.75));

  auto f = [](double x) { return std::tanh(3 * x) * 0.5 + 0.1; };
  auto t = s;
  for (auto& p : t) p.similarity = f(p.similarity);
  CHECK(evaluate_accuracy(t, ThresholdModel{.threshold = f(0.3)}).accuracy == r.accuracy);
  CHECK(predict(s, 0.4) == std::vector<bool>{true, true, false, true, false, false, false});
}

TEST_CASE("mcnemar") {
  auto build = [](int b, int c, int both) {
    std::vector<bool> a, bb, gold;
    for (int i = 0; i < b; ++i) a.push_back(true), bb.push_back(false), gold.push_back(true);
    for (int i = 0; i < c; ++i) a.push_back(false), bb.push_back(true), gold.push_back(true);
    for (int i = 0; i < both; ++i) a.push_back(true), bb.push_back(true), gold.push_back(true);
    return std::tuple{a, bb, gold};
  };
  auto [a, b, g] = build(10, 2, 5);
  auto r = mcnemar_test(a, b, g);
  CHECK(r.exact);
  CHECK(r.a_only == 10);
  CHECK(r.b_only == 2);
  CHECK(r.p_value == doctest::Approx(oracle::mcnemar_exact(10, 2)).epsilon(1e-12));
  CHECK(std::abs(r.p_value - 0.0386) < 1e-4);
  CHECK(r.significant);
  CHECK(mcnemar_test(b, a, g).p_value == r.p_value);

  auto [a6, b6, g6] = build(6, 6, 0);
  CHECK(mcnemar_test(a6, b6, g6).p_value == doctest::Approx(1.0));
  CHECK_FALSE(mcnemar_test(a6, b6, g6).significant);

  auto same = mcnemar_test(a, a, g);
  CHECK(same.no_discordance);
  CHECK(same.p_value == 1.0);

  auto [al, bl, gl] = build(30, 10, 0);
  auto big = mcnemar_test(al, bl, gl);
  CHECK_FALSE(big.exact);
  CHECK(big.statistic == doctest::Approx(361.0 / 40));
  CHECK(big.significant);

  CHECK_THROWS_AS(mcnemar_test({}, {}, {}), ArgumentError);
  CHECK_THROWS_AS(mcnemar_test({true}, {true, false}, {true}), ArgumentError);
}

TEST_CASE("score_pairs") {
  FakeEncoder enc(
      {{"bank", vec({1, 0, 0})}, {"river", vec({0, 2, 0})}, {"money", vec({0, 0, 3})}, {"the", vec({1, 1, 1})}});
  WiCPair same{"bank", "N", "the bank", "the bank", {4, 8}, {4, 8}, true};
  WiCPair other{"bank", "N", "river bank", "money ba+nk", {6, 10}, {6, 11}, false};
  WiCPair broken{"bank", "N", "the bank", "the bank", {3, 4}, {4, 8}, true};
  std::vector<WiCPair> pairs{same, broken, other};
  auto r = score_pairs(enc, nullptr, pairs);
  REQUIRE(r.scored.size() == 2);
  CHECK(r.excluded == std::vector<std::size_t>{1});
  CHECK(r.scored[0].similarity == doctest::Approx(1.0));
  // "ba" and "nk" are unknown pieces (zero) so the target is 0 + layer
  Eigen::VectorXd u = vec({3, 2, 2}), v = vec({2, 2, 2});
  CHECK(r.scored[1].similarity == doctest::Approx(u.dot(v) / (u.norm() * v.norm())).epsilon(1e-12));
  CHECK(r.scored[1].pair == other);

  CHECK_THROWS_AS(score_pairs(enc, nullptr, pairs, 3), ArgumentError);
}

TEST_CASE("score_pairs with a full-rank projection recentres") {
  Rng rng(12);
  std::map<std::string, Eigen::VectorXd> table;
  std::vector<std::string> words;
  for (int i = 0; i < 12; ++i) {
    words.push_back("w" + std::to_string(i));
    table[words.back()] = Eigen::VectorXd::Random(4);
  }
  FakeEncoder enc(table);
  Eigen::MatrixXd fit(12, 4);
  for (int i = 0; i < 12; ++i) fit.row(i) = (table[words[i]].array() + 2).matrix().transpose();
  auto proj = fit_projection(fit, 4, false);
  WiCPair p{"w", "N", "w1 w2", "w3 w4", {0, 2}, {3, 5}, true};
  auto r = score_pairs(enc, &proj, std::vector<WiCPair>{p});
  Eigen::VectorXd a = fit.row(1).transpose() - proj.mean, b = fit.row(4).transpose() - proj.mean;
  CHECK(r.scored[0].similarity == doctest::Approx(a.dot(b) / (a.norm() * b.norm())).epsilon(1e-9));
}

TEST_CASE("scored file round trip") {
  auto s = scored_from({0.123456789012345}, {-0.5});
  s[0].pair.lemma = "bank";
  std::stringstream buf;
  write_scored(buf, s);
  auto back = read_scored(buf);
  REQUIRE(back.size() == 2);
  CHECK(back[0].similarity == s[0].similarity);
  CHECK(back[0].pair.lemma == "bank");
  CHECK(back[0].pair.label);
  CHECK_FALSE(back[1].pair.label);
}
