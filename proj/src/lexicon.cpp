#include "lexctx/lexicon.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "lexctx/errors.h"
#include "lexctx/rng.h"
#include "lexctx/utf8.h"

namespace lexctx {

using nlohmann::json;

std::string validate_example(const SenseExample& ex) {
  if (ex.lemma.empty()) return "empty lemma";
  if (ex.sense_id.empty()) return "empty sense_id";
  std::u32string cps;
  try {
    cps = utf8::decode(ex.sentence);
  } catch (const ArgumentError& e) {
    return e.what();
  }
  if (ex.target.start >= ex.target.end) return "empty or inverted target span";
  if (ex.target.end > cps.size()) {
    return "target span [" + std::to_string(ex.target.start) + "," + std::to_string(ex.target.end) +
           ") exceeds sentence length " + std::to_string(cps.size());
  }
  bool all_space = true;
  for (std::size_t i = ex.target.start; i < ex.target.end; ++i) {
    if (!utf8::is_space(cps[i])) all_space = false;
  }
  if (all_space) return "target span covers only whitespace";
  return {};
}

LexiconDataset::LexiconDataset(std::vector<SenseExample> examples) : examples_(std::move(examples)) {
  std::set<std::tuple<std::string, std::string, Span>> seen;
  for (std::size_t i = 0; i < examples_.size(); ++i) {
    const SenseExample& ex = examples_[i];
    if (std::string why = validate_example(ex); !why.empty()) {
      throw ArgumentError("example " + std::to_string(i) + ": " + why);
    }
    if (!seen.emplace(ex.lemma, ex.sentence, ex.target).second) {
      throw ArgumentError("example " + std::to_string(i) + ": duplicate (lemma, sentence, span)");
    }
    index_[ex.lemma][ex.sense_id].push_back(i);
  }
}

std::vector<std::string> LexiconDataset::lemmas() const {
  std::vector<std::string> out;
  out.reserve(index_.size());
  for (const auto& [lemma, senses] : index_) out.push_back(lemma);
  return out;
}

std::size_t LexiconDataset::num_senses() const {
  std::size_t n = 0;
  for (const auto& [lemma, senses] : index_) n += senses.size();
  return n;
}

LexiconDataset LexiconDataset::subset(const std::set<std::string>& lemmas) const {
  std::vector<SenseExample> kept;
  for (const SenseExample& ex : examples_) {
    if (lemmas.contains(ex.lemma)) kept.push_back(ex);
  }
  return LexiconDataset(std::move(kept));
}

namespace {

std::string required_string(const json& rec, const char* key, std::size_t line) {
  auto it = rec.find(key);
  if (it == rec.end() || !it->is_string()) {
    throw ParseError(std::string("missing or non-string field '") + key + "'", line);
  }
  return it->get<std::string>();
}

std::size_t required_offset(const json& rec, const char* key, std::size_t line) {
  auto it = rec.find(key);
  if (it == rec.end() || !it->is_number_integer()) {
    throw ParseError(std::string("missing or non-integer field '") + key + "'", line);
  }
  auto v = it->get<std::int64_t>();
  // Negative offsets are a span problem, not a structural one.
  return v < 0 ? static_cast<std::size_t>(-1) : static_cast<std::size_t>(v);
}

bool is_blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

ParseResult parse_lexicon(std::istream& in) {
  ParseResult result;
  std::vector<SenseExample> examples;
  std::set<std::tuple<std::string, std::string, Span>> seen;
  std::string line;
  std::size_t line_no = 0;
  std::size_t records = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    ++records;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("malformed JSON: ") + e.what(), line_no);
    }
    if (!rec.is_object()) throw ParseError("record is not an object", line_no);
    SenseExample ex;
    ex.lemma = required_string(rec, "lemma", line_no);
    ex.pos = rec.contains("pos") && rec["pos"].is_string() ? rec["pos"].get<std::string>() : "";
    ex.sense_id = required_string(rec, "sense_id", line_no);
    ex.sentence = required_string(rec, "sentence", line_no);
    ex.target.start = required_offset(rec, "target_start", line_no);
    ex.target.end = required_offset(rec, "target_end", line_no);
    if (std::string why = validate_example(ex); !why.empty()) {
      result.rejections.push_back({line_no, why});
      continue;
    }
    if (!seen.emplace(ex.lemma, ex.sentence, ex.target).second) {
      result.rejections.push_back({line_no, "duplicate (lemma, sentence, span)"});
      continue;
    }
    examples.push_back(std::move(ex));
  }
  if (records == 0) throw EmptyDatasetError("lexicon input contains no records");
  result.dataset = LexiconDataset(std::move(examples));
  return result;
}

void write_lexicon(std::ostream& out, const LexiconDataset& ds) {
  for (const SenseExample& ex : ds.examples()) {
    json rec = {{"lemma", ex.lemma},
                {"pos", ex.pos},
                {"sense_id", ex.sense_id},
                {"sentence", ex.sentence},
                {"target_start", ex.target.start},
                {"target_end", ex.target.end}};
    out << rec.dump() << '\n';
  }
}

bool is_multiword(const std::string& lemma) {
  const std::string trimmed = utf8::normalize_whitespace(lemma);
  return trimmed.find(' ') != std::string::npos;
}

LexiconDataset filter_dataset(const LexiconDataset& ds, const FilterPolicy& policy) {
  std::map<std::string, std::map<std::string, std::size_t>> counts;
  for (const SenseExample& ex : ds.examples()) {
    if (policy.pos && ex.pos != *policy.pos) continue;
    ++counts[ex.lemma][ex.sense_id];
  }
  std::set<std::string> keep;
  for (const auto& [lemma, senses] : counts) {
    const std::size_t n_senses = senses.size();
    if (n_senses < policy.min_senses || n_senses > policy.max_senses) continue;
    if (policy.drop_single_sense_single_example && n_senses == 1 && senses.begin()->second == 1) continue;
    if (policy.drop_multiword && is_multiword(lemma)) continue;
    keep.insert(lemma);
  }
  std::vector<SenseExample> kept;
  for (const SenseExample& ex : ds.examples()) {
    if (policy.pos && ex.pos != *policy.pos) continue;
    if (keep.contains(ex.lemma)) kept.push_back(ex);
  }
  return LexiconDataset(std::move(kept));
}

std::set<std::string> read_wic_sentences(std::istream& wic_data) {
  std::set<std::string> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(wic_data, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, '\t')) cols.push_back(col);
    if (cols.size() < 5) throw ParseError("expected at least 5 tab-separated columns", line_no);
    out.insert(utf8::normalize_whitespace(cols[3]));
    out.insert(utf8::normalize_whitespace(cols[4]));
  }
  return out;
}

ExclusionResult exclude_sentences(const LexiconDataset& ds, const std::set<std::string>& sentences) {
  ExclusionResult result;
  std::vector<SenseExample> kept;
  for (const SenseExample& ex : ds.examples()) {
    if (sentences.contains(utf8::normalize_whitespace(ex.sentence))) {
      ++result.removed;
    } else {
      kept.push_back(ex);
    }
  }
  result.dataset = LexiconDataset(std::move(kept));
  return result;
}

SplitBundle split_by_lemma(const LexiconDataset& ds, const SplitRatios& ratios, std::uint64_t seed) {
  std::array<double, 3> r = {ratios.train, ratios.dev, ratios.test};
  double total_ratio = 0;
  for (double x : r) {
    if (!(x >= 0) || !std::isfinite(x)) throw ArgumentError("split ratios must be finite and non-negative");
    total_ratio += x;
  }
  if (total_ratio <= 0) throw ArgumentError("split ratios sum to zero");
  for (double& x : r) x /= total_ratio;
  const auto nonempty_buckets =
      static_cast<std::size_t>(std::count_if(r.begin(), r.end(), [](double x) { return x > 0; }));

  std::vector<std::string> lemmas = ds.lemmas();
  if (lemmas.size() < nonempty_buckets) {
    throw SplitError("cannot split " + std::to_string(lemmas.size()) + " lemmas into " +
                     std::to_string(nonempty_buckets) + " non-empty buckets");
  }
  Rng rng(seed);
  rng.shuffle(lemmas);

  std::array<std::vector<std::string>, 3> buckets;
  std::array<double, 3> counts = {0, 0, 0};
  double assigned = 0;
  for (const std::string& lemma : lemmas) {
    std::size_t n = 0;
    for (const auto& [sense, ids] : ds.index().at(lemma)) n += ids.size();
    std::size_t best = 0;
    double best_deficit = -INFINITY;
    for (std::size_t b = 0; b < 3; ++b) {
      if (r[b] <= 0) continue;
      double deficit = r[b] * (assigned + n) - counts[b];
      if (deficit > best_deficit) {
        best_deficit = deficit;
        best = b;
      }
    }
    buckets[best].push_back(lemma);
    counts[best] += n;
    assigned += n;
  }
  // Every bucket with a positive share gets at least one lemma.
  for (std::size_t b = 0; b < 3; ++b) {
    if (r[b] <= 0 || !buckets[b].empty()) continue;
    std::size_t donor = 0;
    for (std::size_t d = 1; d < 3; ++d) {
      if (buckets[d].size() > buckets[donor].size()) donor = d;
    }
    buckets[b].push_back(buckets[donor].back());
    buckets[donor].pop_back();
  }

  SplitBundle out;
  out.seed = seed;
  out.train = ds.subset({buckets[0].begin(), buckets[0].end()});
  out.dev = ds.subset({buckets[1].begin(), buckets[1].end()});
  out.test = ds.subset({buckets[2].begin(), buckets[2].end()});
  return out;
}

namespace {

std::pair<double, double> mean_std(const std::vector<double>& xs) {
  if (xs.empty()) return {0, 0};
  double mean = 0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double var = 0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= static_cast<double>(xs.size());
  return {mean, std::sqrt(var)};
}

}  // namespace

DatasetStats dataset_stats(const LexiconDataset& ds) {
  DatasetStats s;
  if (ds.empty()) return s;
  s.empty = false;
  std::vector<double> per_sense, senses_per_lemma, per_lemma;
  for (const auto& [lemma, senses] : ds.index()) {
    senses_per_lemma.push_back(static_cast<double>(senses.size()));
    double n_lemma = 0;
    for (const auto& [sense, ids] : senses) {
      per_sense.push_back(static_cast<double>(ids.size()));
      n_lemma += static_cast<double>(ids.size());
    }
    per_lemma.push_back(n_lemma);
  }
  s.n_lemmas = ds.index().size();
  s.n_senses = per_sense.size();
  s.n_examples = ds.size();
  std::tie(s.mean_examples_per_sense, s.std_examples_per_sense) = mean_std(per_sense);
  std::tie(s.mean_senses_per_lemma, s.std_senses_per_lemma) = mean_std(senses_per_lemma);
  std::tie(s.mean_examples_per_lemma, s.std_examples_per_lemma) = mean_std(per_lemma);
  return s;
}

}  // namespace lexctx
