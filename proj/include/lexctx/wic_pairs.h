#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lexctx/lexicon.h"

namespace lexctx {

// Two occurrences of the same lemma; `label` is true when they share the
// sense (or frame).
struct WiCPair {
  std::string lemma;
  std::string pos;
  std::string sentence1;
  std::string sentence2;
  Span span1;
  Span span2;
  bool label = false;
  friend bool operator==(const WiCPair&, const WiCPair&) = default;
};

struct WiCPairSet {
  std::vector<WiCPair> pairs;
  std::size_t positives = 0;
  std::size_t negatives = 0;
  // Set when fewer than the requested number of pairs could be built.
  bool exhausted = false;
};

// Balanced pair sampling: up to n_pairs/2 same-sense pairs and n_pairs/2
// different-sense pairs, both uniform over candidate example pairs within a
// lemma. Identical or repeated sentence pairs are never emitted.
// n_pairs must be even.
WiCPairSet build_wic_pairs(const LexiconDataset& ds, std::size_t n_pairs, std::uint64_t seed);

// WiC distribution layout: data lines are
//   lemma \t pos \t s1:e1/s2:e2 \t sentence1 \t sentence2
// and gold lines are "T" or "F".
void write_wic_pairs(std::ostream& data, std::ostream& gold, const std::vector<WiCPair>& pairs);
// When `gold` is null, labels are left false.
std::vector<WiCPair> read_wic_pairs(std::istream& data, std::istream* gold);

std::vector<bool> read_labels(std::istream& in);
void write_labels(std::ostream& out, const std::vector<bool>& labels);

}  // namespace lexctx
