#include "lexctx/synthetic.h"

#include <set>

#include "lexctx/errors.h"
#include "lexctx/rng.h"

namespace lexctx {

namespace {

std::string letters(int value, int width) {
  std::string s(static_cast<std::size_t>(width), 'a');
  for (int i = width - 1; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = static_cast<char>('a' + value % 26);
    value /= 26;
  }
  return s;
}

}  // namespace

SyntheticCorpus make_synthetic_corpus(const SyntheticSpec& spec) {
  if (spec.n_lemmas < 1 || spec.min_senses < 1 || spec.max_senses < spec.min_senses ||
      spec.max_senses > spec.n_frames || spec.examples_per_sense < 1 || spec.context_words > spec.frame_vocabulary) {
    throw ArgumentError("inconsistent synthetic corpus spec");
  }
  Rng rng(spec.seed);
  SyntheticCorpus corpus;
  std::vector<SenseExample> examples;
  std::set<std::string> seen;

  for (int l = 0; l < spec.n_lemmas; ++l) {
    const int lemma_no = spec.first_lemma + l;
    const std::string lemma = "lem" + letters(lemma_no, 3) + "ize";
    const int n_senses = spec.min_senses + static_cast<int>(rng.below(spec.max_senses - spec.min_senses + 1));
    corpus.senses_per_lemma[lemma] = n_senses;

    std::vector<int> frames(static_cast<std::size_t>(spec.n_frames));
    for (int f = 0; f < spec.n_frames; ++f) frames[f] = f;
    rng.shuffle(frames);

    for (int s = 0; s < n_senses; ++s) {
      const int frame = frames[s];
      for (int e = 0; e < spec.examples_per_sense; ++e) {
        std::string sentence;
        Span span;
        do {
          std::vector<std::string> words;
          for (std::size_t k : rng.sample_indices(spec.frame_vocabulary, spec.context_words)) {
            words.push_back("c" + letters(frame * spec.frame_vocabulary + static_cast<int>(k), 3));
          }
          for (int k = 0; k < spec.fillers; ++k) {
            words.push_back("x" + letters(static_cast<int>(rng.below(spec.filler_vocabulary)), 2));
          }
          rng.shuffle(words);
          const auto target_pos = static_cast<std::size_t>(rng.below(words.size() + 1));
          words.insert(words.begin() + static_cast<std::ptrdiff_t>(target_pos), lemma);

          sentence.clear();
          for (std::size_t w = 0; w < words.size(); ++w) {
            if (w > 0) sentence += ' ';
            if (w == target_pos) span.start = sentence.size();
            sentence += words[w];
            if (w == target_pos) span.end = sentence.size();
          }
          sentence += " .";
        } while (!seen.insert(sentence).second);

        const std::string sense_id = lemma + "#" + std::to_string(s + 1);
        examples.push_back({lemma, "verb", sense_id, sentence, span});
        corpus.instances.push_back(
            {lemma, sentence, span, lemma + "." + std::to_string(frame), "F" + std::to_string(frame)});
      }
    }
  }
  corpus.lexicon = LexiconDataset(std::move(examples));
  return corpus;
}

}  // namespace lexctx
