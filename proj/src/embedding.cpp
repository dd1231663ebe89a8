#include "lexctx/embedding.h"

#include <cmath>

#include "lexctx/errors.h"

namespace lexctx {

TargetEncoding encode_target(const Encoder& enc, std::string_view sentence, Span target, bool masked) {
  std::vector<Subtoken> tokens = enc.tokenize(sentence);
  std::vector<std::size_t> hits;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Span& c = tokens[i].chars;
    if (c.start < target.end && target.start < c.end) hits.push_back(i);
  }
  if (hits.empty()) {
    throw AlignmentError("target span [" + std::to_string(target.start) + "," + std::to_string(target.end) +
                         ") covers no subtoken");
  }
  std::vector<int> ids;
  TargetEncoding result;
  if (!masked) {
    ids.reserve(tokens.size());
    for (const Subtoken& t : tokens) ids.push_back(t.id);
    result.positions = hits;
  } else {
    // Overlapping subtokens are contiguous; they collapse into one mask.
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (i == hits.front()) {
        result.positions.push_back(ids.size());
        ids.push_back(enc.mask_id());
      } else if (i < hits.front() || i > hits.back()) {
        ids.push_back(tokens[i].id);
      }
    }
  }
  result.output = enc.forward(std::move(ids));
  return result;
}

Eigen::VectorXd pool_target(const TargetEncoding& encoding, int layer) {
  if (layer < 0 || layer >= static_cast<int>(encoding.output.layers.size())) {
    throw ArgumentError("layer " + std::to_string(layer) + " out of range");
  }
  const Eigen::MatrixXd& states = encoding.output.layers[layer];
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(states.cols());
  for (std::size_t p : encoding.positions) sum += states.row(static_cast<Eigen::Index>(p)).transpose();
  return sum / static_cast<double>(encoding.positions.size());
}

TokenVector target_embedding(const Encoder& enc, const SenseExample& ex, int layer, bool masked,
                             std::size_t example_ref) {
  if (layer < 0 || layer > enc.num_layers()) {
    throw ArgumentError("layer " + std::to_string(layer) + " outside [0, " + std::to_string(enc.num_layers()) + "]");
  }
  TargetEncoding encoding = encode_target(enc, ex.sentence, ex.target, masked);
  return TokenVector{pool_target(encoding, layer), layer, masked, example_ref};
}

TokenVector combine_masked(const TokenVector& word, const TokenVector& mask, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ArgumentError("alpha must lie in [0, 1]");
  if (word.values.size() != mask.values.size()) throw ArgumentError("masked/unmasked length mismatch");
  TokenVector out;
  out.values = alpha * mask.values + (1.0 - alpha) * word.values;
  out.layer = word.layer;
  out.masked = alpha > 0.0;
  out.example_ref = word.example_ref;
  return out;
}

Eigen::VectorXd blended_embedding(const Encoder& enc, std::string_view sentence, Span target, int layer, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ArgumentError("alpha must lie in [0, 1]");
  if (layer < 0 || layer > enc.num_layers()) throw ArgumentError("layer out of range");
  if (alpha == 0.0) return pool_target(encode_target(enc, sentence, target, false), layer);
  if (alpha == 1.0) return pool_target(encode_target(enc, sentence, target, true), layer);
  Eigen::VectorXd word = pool_target(encode_target(enc, sentence, target, false), layer);
  Eigen::VectorXd mask = pool_target(encode_target(enc, sentence, target, true), layer);
  return alpha * mask + (1.0 - alpha) * word;
}

}  // namespace lexctx
