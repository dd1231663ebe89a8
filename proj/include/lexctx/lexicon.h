#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace lexctx {

// Character offsets count Unicode code points, half-open [start, end).
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;
  friend bool operator==(const Span&, const Span&) = default;
  friend auto operator<=>(const Span&, const Span&) = default;
};

// One lexicon example sentence whose target occurrence carries `sense_id`.
struct SenseExample {
  std::string lemma;
  std::string pos;
  std::string sense_id;
  std::string sentence;
  Span target;
  friend bool operator==(const SenseExample&, const SenseExample&) = default;
};

// Returns an empty string when `ex` is valid, otherwise the reason.
std::string validate_example(const SenseExample& ex);

// Immutable, validated collection of examples with a lemma -> sense -> example
// index. Duplicated (lemma, sentence, span) triples are rejected.
class LexiconDataset {
 public:
  using SenseIndex = std::map<std::string, std::vector<std::size_t>>;
  using Index = std::map<std::string, SenseIndex>;

  LexiconDataset() = default;
  // Throws ArgumentError on an invalid or duplicated example.
  explicit LexiconDataset(std::vector<SenseExample> examples);

  const std::vector<SenseExample>& examples() const { return examples_; }
  const Index& index() const { return index_; }
  std::size_t size() const { return examples_.size(); }
  bool empty() const { return examples_.empty(); }
  std::vector<std::string> lemmas() const;
  std::size_t num_senses() const;

  // Examples of the given lemmas, in original order.
  LexiconDataset subset(const std::set<std::string>& lemmas) const;

  friend bool operator==(const LexiconDataset& a, const LexiconDataset& b) { return a.examples_ == b.examples_; }

 private:
  std::vector<SenseExample> examples_;
  Index index_;
};

struct Rejection {
  std::size_t line = 0;
  std::string reason;
};

struct ParseResult {
  LexiconDataset dataset;
  std::vector<Rejection> rejections;
};

// Line-delimited JSON records with keys lemma, pos, sense_id, sentence,
// target_start, target_end. Blank lines are skipped. Structurally malformed
// lines throw ParseError; records with invalid spans or duplicates are
// dropped and reported. No records at all throws EmptyDatasetError.
ParseResult parse_lexicon(std::istream& in);
void write_lexicon(std::ostream& out, const LexiconDataset& ds);

struct FilterPolicy {
  std::size_t min_senses = 1;
  std::size_t max_senses = 10;
  bool drop_single_sense_single_example = true;
  bool drop_multiword = true;
  // Keep only examples with this POS tag, when set.
  std::optional<std::string> pos;
};

bool is_multiword(const std::string& lemma);
LexiconDataset filter_dataset(const LexiconDataset& ds, const FilterPolicy& policy = {});

// Sentences (whitespace-normalized) of an external WiC data file, i.e. the
// 4th and 5th tab-separated columns.
std::set<std::string> read_wic_sentences(std::istream& wic_data);

struct ExclusionResult {
  LexiconDataset dataset;
  std::size_t removed = 0;
};
// Drops every example whose whitespace-normalized sentence is in `sentences`.
ExclusionResult exclude_sentences(const LexiconDataset& ds, const std::set<std::string>& sentences);

struct SplitRatios {
  double train = 0.90;
  double dev = 0.05;
  double test = 0.05;
};

struct SplitBundle {
  LexiconDataset train;
  LexiconDataset dev;
  LexiconDataset test;
  std::uint64_t seed = 0;
};

// Lemma-disjoint split. Lemmas are shuffled by seed, then each goes to the
// bucket whose example count lags its target share the most.
SplitBundle split_by_lemma(const LexiconDataset& ds, const SplitRatios& ratios, std::uint64_t seed);

struct DatasetStats {
  std::size_t n_lemmas = 0;
  std::size_t n_senses = 0;
  std::size_t n_examples = 0;
  double mean_examples_per_sense = 0, std_examples_per_sense = 0;
  double mean_senses_per_lemma = 0, std_senses_per_lemma = 0;
  double mean_examples_per_lemma = 0, std_examples_per_lemma = 0;
  bool empty = true;
};

// Population standard deviations.
DatasetStats dataset_stats(const LexiconDataset& ds);

}  // namespace lexctx
