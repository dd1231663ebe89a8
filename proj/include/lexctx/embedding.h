#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <string_view>
#include <vector>

#include "lexctx/encoder.h"
#include "lexctx/lexicon.h"

namespace lexctx {

// Target-token embedding at one encoder layer. `masked` marks the vector
// taken at the mask placeholder that replaced the target.
struct TokenVector {
  Eigen::VectorXd values;
  int layer = 0;
  bool masked = false;
  std::size_t example_ref = 0;
};

// Full encoder output for a sentence plus the positions whose states pool
// into the target embedding.
struct TargetEncoding {
  EncoderOutput output;
  std::vector<std::size_t> positions;
};

// Encodes `sentence`, locating every subtoken whose characters intersect
// `target`. When masked, that run of subtokens is replaced by one mask token
// and the mask position is the only pooled position. Throws AlignmentError
// when no subtoken intersects the span.
TargetEncoding encode_target(const Encoder& enc, std::string_view sentence, Span target, bool masked);

// Mean of the layer-`layer` states at the pooled positions.
Eigen::VectorXd pool_target(const TargetEncoding& encoding, int layer);

TokenVector target_embedding(const Encoder& enc, const SenseExample& ex, int layer, bool masked,
                             std::size_t example_ref = 0);

// alpha * mask + (1 - alpha) * word.
TokenVector combine_masked(const TokenVector& word, const TokenVector& mask, double alpha);

// Embedding with weight `alpha` on the masked variant; the masked pass is
// skipped when alpha is 0 and the unmasked one when alpha is 1.
Eigen::VectorXd blended_embedding(const Encoder& enc, std::string_view sentence, Span target, int layer, double alpha);

}  // namespace lexctx
