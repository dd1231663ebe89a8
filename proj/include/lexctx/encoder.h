#pragma once

#include <Eigen/Dense>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lexctx/lexicon.h"

namespace lexctx {

struct Subtoken {
  int id = 0;
  std::string text;
  Span chars;  // code-point offsets into the tokenized text
};

// Hidden states of one encoded sequence. layers[0] is the static embedding
// output and layers[L] the final layer; each matrix is tokens x hidden.
struct EncoderOutput {
  std::vector<int> ids;
  std::vector<Eigen::MatrixXd> layers;
};

// Loss gradient with respect to the hidden states of `output` at `layer`.
struct GradientSignal {
  const EncoderOutput* output = nullptr;
  int layer = 0;
  Eigen::MatrixXd grad;
};

// Adaptive-moment update with a fixed learning rate.
struct OptimizerConfig {
  double learning_rate = 5e-6;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// A contextual encoder as seen by the trainer and the evaluators. Only
// update() mutates state; everything else is safe to call concurrently.
class Encoder {
 public:
  virtual ~Encoder() = default;

  virtual int num_layers() const = 0;
  virtual int hidden_size() const = 0;
  virtual int mask_id() const = 0;

  // Subtokens with code-point offsets into `text`.
  virtual std::vector<Subtoken> tokenize(std::string_view text) const = 0;
  virtual EncoderOutput forward(std::vector<int> ids) const = 0;

  virtual bool trainable() const = 0;
  // One optimizer step from the summed gradients of all signals.
  virtual void update(std::span<const GradientSignal> signals, const OptimizerConfig& opt) = 0;

  virtual std::unique_ptr<Encoder> clone() const = 0;
  virtual void save(const std::string& path) const = 0;
};

// Loads any checkpoint written by Encoder::save.
std::unique_ptr<Encoder> load_encoder(const std::string& path);

}  // namespace lexctx
