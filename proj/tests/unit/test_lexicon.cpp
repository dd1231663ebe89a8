#include <set>
#include <sstream>

#include "doctest.h"
#include "lexctx/errors.h"
#include "lexctx/lexicon.h"
#include "lexctx/rng.h"

using namespace lexctx;

namespace {

std::string record(const std::string& lemma, const std::string& sense, const std::string& sentence, int s, int e,
                   const std::string& pos = "verb") {
  std::ostringstream os;
  os << R"({"lemma":")" << lemma << R"(","pos":")" << pos << R"(","sense_id":")" << sense << R"(","sentence":")"
     << sentence << R"(","target_start":)" << s << R"(,"target_end":)" << e << "}";
  return os.str();
}

SenseExample ex(const std::string& lemma, const std::string& sense, const std::string& sentence) {
  return {lemma, "verb", sense, sentence, {0, lemma.size()}};
}

// `senses[k]` examples for sense k of `lemma`.
void add_lemma(std::vector<SenseExample>& out, const std::string& lemma, const std::vector<int>& senses) {
  for (std::size_t k = 0; k < senses.size(); ++k) {
    for (int i = 0; i < senses[k]; ++i) {
      out.push_back(
          ex(lemma, lemma + "_" + std::to_string(k), lemma + " s" + std::to_string(k) + " e" + std::to_string(i)));
    }
  }
}

LexiconDataset random_dataset(Rng& rng, int max_lemmas) {
  std::vector<SenseExample> out;
  const int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_lemmas)));
  for (int l = 0; l < n; ++l) {
    std::vector<int> senses(1 + rng.below(4));
    for (int& s : senses) s = 1 + static_cast<int>(rng.below(4));
    add_lemma(out, "lemma" + std::to_string(l), senses);
  }
  return LexiconDataset(std::move(out));
}

}  // namespace

TEST_CASE("minimal record parses") {
  std::istringstream in(
      R"({"lemma":"run","pos":"verb","sense_id":"run_1","sentence":"I run fast.","target_start":2,"target_end":5})");
  auto r = parse_lexicon(in);
  CHECK(r.dataset.size() == 1);
  CHECK(r.dataset.lemmas().size() == 1);
  CHECK(r.dataset.num_senses() == 1);
  CHECK(r.rejections.empty());
}

TEST_CASE("span out of bounds is rejected with its line") {
  std::istringstream in(record("run", "run_1", "I run fast.", 2, 5) + "\n" +
                        record("run", "run_1", "I run fast.", 2, 50));
  auto r = parse_lexicon(in);
  CHECK(r.dataset.size() == 1);
  REQUIRE(r.rejections.size() == 1);
  CHECK(r.rejections[0].line == 2);
}

TEST_CASE("index matches a rescan of the examples") {
  std::istringstream in(record("run", "run_1", "I run fast.", 2, 5) + "\n" +
                        record("run", "run_2", "They run it.", 5, 8) + "\n" +
                        record("run", "run_1", "We run home.", 3, 6));
  auto ds = parse_lexicon(in).dataset;
  std::map<std::string, std::map<std::string, std::vector<std::size_t>>> rescan;
  for (std::size_t i = 0; i < ds.size(); ++i) rescan[ds.examples()[i].lemma][ds.examples()[i].sense_id].push_back(i);
  CHECK(ds.index() == rescan);
  CHECK(ds.index().at("run").at("run_1") == std::vector<std::size_t>{0, 2});
}

TEST_CASE("parse errors") {
  std::istringstream bad(record("a", "a_1", "a b", 0, 1) + "\n{not json\n");
  try {
    parse_lexicon(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  std::istringstream empty("\n  \n");
  CHECK_THROWS_AS(parse_lexicon(empty), EmptyDatasetError);
  std::istringstream missing(R"({"lemma":"x","sentence":"x y","target_start":0,"target_end":1})");
  CHECK_THROWS_AS(parse_lexicon(missing), ParseError);
}

TEST_CASE("duplicates are rejected and non-ASCII offsets are code points") {
  std::istringstream in(record("nager", "n1", "Il a nagé vite.", 5, 9) + "\n" +
                        record("nager", "n1", "Il a nagé vite.", 5, 9));
  auto r = parse_lexicon(in);
  CHECK(r.dataset.size() == 1);
  CHECK(r.rejections.size() == 1);
}

TEST_CASE("parse, write, parse round trip") {
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    auto ds = random_dataset(rng, 6);
    std::stringstream buf;
    write_lexicon(buf, ds);
    CHECK(parse_lexicon(buf).dataset == ds);
  }
}

TEST_CASE("filter rules") {
  std::vector<SenseExample> v;
  add_lemma(v, "many", std::vector<int>(11, 1));
  add_lemma(v, "lonely", {1});
  add_lemma(v, "pair", {2});
  add_lemma(v, "ten", std::vector<int>(10, 1));
  v.push_back({"give up", "verb", "gu_1", "give up now", {0, 7}});
  v.push_back({"give up", "verb", "gu_2", "they give up", {5, 12}});
  auto out = filter_dataset(LexiconDataset(v));
  std::vector<std::string> lemmas = out.lemmas();
  CHECK(lemmas == std::vector<std::string>{"pair", "ten"});

  FilterPolicy keep_all;
  keep_all.drop_multiword = false;
  keep_all.drop_single_sense_single_example = false;
  keep_all.max_senses = 11;
  CHECK(filter_dataset(LexiconDataset(v), keep_all).lemmas().size() == 5);
  CHECK(is_multiword(" give  up "));
  CHECK_FALSE(is_multiword("  give "));
}

TEST_CASE("filter by part of speech") {
  std::vector<SenseExample> v;
  add_lemma(v, "walk", {1, 1});
  v.push_back({"table", "noun", "t1", "table one", {0, 5}});
  v.push_back({"table", "noun", "t2", "table two", {0, 5}});
  FilterPolicy p;
  p.pos = "verb";
  CHECK(filter_dataset(LexiconDataset(v), p).lemmas() == std::vector<std::string>{"walk"});
}

TEST_CASE("filter is idempotent") {
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    auto ds = random_dataset(rng, 8);
    FilterPolicy p;
    p.max_senses = 2;
    auto once = filter_dataset(ds, p);
    CHECK(filter_dataset(once, p) == once);
  }
}

TEST_CASE("WiC sentence exclusion uses normalized whitespace") {
  std::vector<SenseExample> v;
  v.push_back({"run", "verb", "r1", "I  run fast.", {3, 6}});
  v.push_back({"run", "verb", "r2", "They run.", {5, 8}});
  std::istringstream wic("run\tV\t2-3\tI run fast.\tSomething else\n");
  auto sentences = read_wic_sentences(wic);
  auto r = exclude_sentences(LexiconDataset(v), sentences);
  CHECK(r.removed == 1);
  CHECK(r.dataset.size() == 1);
}

TEST_CASE("split is lemma-disjoint and exhaustive") {
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    auto ds = random_dataset(rng, 30);
    if (ds.lemmas().size() < 3) continue;
    auto b = split_by_lemma(ds, {}, rng.next());
    std::set<std::string> tr, dv, te;
    for (auto& l : b.train.lemmas()) tr.insert(l);
    for (auto& l : b.dev.lemmas()) dv.insert(l);
    for (auto& l : b.test.lemmas()) te.insert(l);
    for (auto& l : tr) CHECK((!dv.contains(l) && !te.contains(l)));
    for (auto& l : dv) CHECK(!te.contains(l));
    CHECK(b.train.size() + b.dev.size() + b.test.size() == ds.size());
    CHECK(tr.size() + dv.size() + te.size() == ds.lemmas().size());
    CHECK(!dv.empty());
    CHECK(!te.empty());
  }
}

TEST_CASE("split of 100 equal lemmas") {
  std::vector<SenseExample> v;
  for (int l = 0; l < 100; ++l) add_lemma(v, "w" + std::to_string(l), {2});
  LexiconDataset ds(v);
  auto b = split_by_lemma(ds, {0.90, 0.05, 0.05}, 7);
  CHECK(b.train.lemmas().size() == 90);
  CHECK(b.dev.lemmas().size() == 5);
  CHECK(b.test.lemmas().size() == 5);
  auto again = split_by_lemma(ds, {0.90, 0.05, 0.05}, 7);
  CHECK(again.train == b.train);
  CHECK(again.test == b.test);

  auto all = split_by_lemma(ds, {1, 0, 0}, 7);
  CHECK(all.train.size() == ds.size());
  CHECK(all.dev.empty());
  CHECK(all.test.empty());
}

TEST_CASE("split errors") {
  std::vector<SenseExample> v;
  add_lemma(v, "a", {2});
  add_lemma(v, "b", {2});
  CHECK_THROWS_AS(split_by_lemma(LexiconDataset(v), {}, 1), SplitError);
  CHECK_THROWS_AS(split_by_lemma(LexiconDataset(v), {0, 0, 0}, 1), ArgumentError);
}

TEST_CASE("dataset statistics") {
  std::vector<SenseExample> v;
  add_lemma(v, "a", {1, 3});
  auto s = dataset_stats(LexiconDataset(v));
  CHECK(s.n_lemmas == 1);
  CHECK(s.n_senses == 2);
  CHECK(s.n_examples == 4);
  CHECK(s.mean_examples_per_sense == doctest::Approx(2.0));
  CHECK(s.std_examples_per_sense == doctest::Approx(1.0));
  CHECK(s.mean_senses_per_lemma == doctest::Approx(2.0));
  CHECK(s.mean_examples_per_lemma == doctest::Approx(4.0));
  auto e = dataset_stats(LexiconDataset());
  CHECK(e.empty);
  CHECK(e.n_examples == 0);
}
