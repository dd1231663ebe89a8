#pragma once

#include <cstdint>
#include <iosfwd>

#include "lexctx/encoder.h"

namespace lexctx {

struct ToyEncoderConfig {
  int layers = 4;
  int hidden = 32;
  int buckets = 4096;  // hashed vocabulary size, bucket 0 is the mask
  std::uint64_t seed = 0;
};

// Small deterministic encoder for desk-scale experiments. Tokens are
// lowercased words and punctuation; words longer than six code points are
// cut into four-code-point pieces ("##" marks continuations). Token ids are
// hashed into a fixed bucket table. Each layer is a residual update
//   h'_i = h_i + tanh(W h_i + U mean_j(h_j) + b)
// so every position sees the whole sentence.
class ToyEncoder final : public Encoder {
 public:
  explicit ToyEncoder(const ToyEncoderConfig& config);

  int num_layers() const override { return config_.layers; }
  int hidden_size() const override { return config_.hidden; }
  int mask_id() const override { return 0; }

  std::vector<Subtoken> tokenize(std::string_view text) const override;
  EncoderOutput forward(std::vector<int> ids) const override;

  bool trainable() const override { return trainable_; }
  void set_trainable(bool trainable) { trainable_ = trainable; }
  void update(std::span<const GradientSignal> signals, const OptimizerConfig& opt) override;

  std::unique_ptr<Encoder> clone() const override;
  void save(const std::string& path) const override;
  void save(std::ostream& out) const;
  static std::unique_ptr<ToyEncoder> load(std::istream& in);

  const ToyEncoderConfig& config() const { return config_; }
  int token_id(std::string_view piece) const;

  // Parameter gradients accumulated from `signals` without applying them,
  // in the order embeddings, then per layer W, U, b.
  std::vector<Eigen::MatrixXd> gradients(std::span<const GradientSignal> signals) const;
  std::vector<Eigen::MatrixXd>& parameters() { return params_; }
  const std::vector<Eigen::MatrixXd>& parameters() const { return params_; }

  static constexpr char kMagic[9] = "LXTOYENC";

 private:
  Eigen::MatrixXd& weight(int layer) { return params_[1 + 3 * (layer - 1)]; }
  Eigen::MatrixXd& context_weight(int layer) { return params_[2 + 3 * (layer - 1)]; }
  Eigen::MatrixXd& bias(int layer) { return params_[3 + 3 * (layer - 1)]; }
  const Eigen::MatrixXd& weight(int layer) const { return params_[1 + 3 * (layer - 1)]; }
  const Eigen::MatrixXd& context_weight(int layer) const { return params_[2 + 3 * (layer - 1)]; }
  const Eigen::MatrixXd& bias(int layer) const { return params_[3 + 3 * (layer - 1)]; }

  ToyEncoderConfig config_;
  bool trainable_ = true;
  std::vector<Eigen::MatrixXd> params_;
  std::vector<Eigen::MatrixXd> adam_m_;
  std::vector<Eigen::MatrixXd> adam_v_;
  long adam_step_ = 0;
};

}  // namespace lexctx
