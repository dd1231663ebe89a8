#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lexctx/frame_induction.h"
#include "lexctx/lexicon.h"

namespace lexctx {

// Planted-structure corpus: every lemma has 2-3 senses, each sense belongs
// to a distinct frame, and a sentence of a sense draws its context words
// from that frame's vocabulary plus a few shared fillers.
struct SyntheticSpec {
  int n_lemmas = 20;
  int first_lemma = 0;  // lemma numbering offset, for disjoint corpora
  int min_senses = 2;
  int max_senses = 3;
  int n_frames = 10;
  int examples_per_sense = 8;
  int frame_vocabulary = 6;
  int context_words = 4;  // drawn from the frame vocabulary
  int filler_vocabulary = 30;
  int fillers = 2;
  std::uint64_t seed = 0;
};

struct SyntheticCorpus {
  LexiconDataset lexicon;
  std::vector<FrameInstance> instances;  // same sentences, gold LU and frame
  std::map<std::string, int> senses_per_lemma;
};

SyntheticCorpus make_synthetic_corpus(const SyntheticSpec& spec);

}  // namespace lexctx
