#include "lexctx/toy_encoder.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>

#include "lexctx/errors.h"
#include "lexctx/rng.h"
#include "lexctx/utf8.h"

namespace lexctx {

static_assert(std::endian::native == std::endian::little, "checkpoint I/O assumes a little-endian host");

namespace {

constexpr std::size_t kMaxWholeWord = 6;
constexpr std::size_t kPieceLength = 4;

bool is_ascii_punct(char32_t c) { return c < 0x80 && std::ispunct(static_cast<int>(c)); }

// ASCII, Latin-1, basic Greek and Cyrillic capitals.
char32_t fold_case(char32_t c) {
  if (c >= U'A' && c <= U'Z') return c + 0x20;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 0x20;
  if (c >= 0x391 && c <= 0x3A9 && c != 0x3A2) return c + 0x20;
  if (c >= 0x410 && c <= 0x42F) return c + 0x20;
  return c;
}

template <typename T>
void write_pod(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_pod(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw IoError("truncated toy encoder checkpoint");
  return value;
}

}  // namespace

ToyEncoder::ToyEncoder(const ToyEncoderConfig& config) : config_(config) {
  if (config.layers < 1 || config.hidden < 1 || config.buckets < 2) {
    throw ArgumentError("toy encoder needs layers >= 1, hidden >= 1, buckets >= 2");
  }
  const int d = config.hidden;
  Rng rng(config.seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));

  Eigen::MatrixXd table(config.buckets, d);
  for (int r = 0; r < table.rows(); ++r)
    for (int c = 0; c < d; ++c) table(r, c) = rng.normal() * scale;
  params_.push_back(std::move(table));
  for (int l = 1; l <= config.layers; ++l) {
    Eigen::MatrixXd w(d, d), u(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) w(r, c) = rng.normal() * scale;
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) u(r, c) = rng.normal() * scale;
    params_.push_back(std::move(w));
    params_.push_back(std::move(u));
    params_.push_back(Eigen::MatrixXd::Zero(d, 1));
  }
  for (const auto& p : params_) {
    adam_m_.push_back(Eigen::MatrixXd::Zero(p.rows(), p.cols()));
    adam_v_.push_back(Eigen::MatrixXd::Zero(p.rows(), p.cols()));
  }
}

int ToyEncoder::token_id(std::string_view piece) const {
  const std::uint64_t h = fnv1a(std::span<const char>(piece.data(), piece.size()));
  return 1 + static_cast<int>(h % static_cast<std::uint64_t>(config_.buckets - 1));
}

std::vector<Subtoken> ToyEncoder::tokenize(std::string_view text) const {
  const std::u32string cps = utf8::decode(text);
  std::vector<Subtoken> out;
  auto emit_word = [&](std::size_t start, std::size_t end) {
    const std::size_t len = end - start;
    std::u32string word;
    for (std::size_t i = start; i < end; ++i) word.push_back(fold_case(cps[i]));
    if (len <= kMaxWholeWord) {
      std::string piece = utf8::encode(word);
      out.push_back({token_id(piece), piece, {start, end}});
      return;
    }
    for (std::size_t off = 0; off < len; off += kPieceLength) {
      const std::size_t piece_end = std::min(len, off + kPieceLength);
      std::string piece = utf8::encode(std::u32string_view(word).substr(off, piece_end - off));
      if (off > 0) piece = "##" + piece;
      out.push_back({token_id(piece), piece, {start + off, start + piece_end}});
    }
  };

  std::size_t i = 0;
  while (i < cps.size()) {
    if (utf8::is_space(cps[i])) {
      ++i;
      continue;
    }
    if (is_ascii_punct(cps[i])) {
      std::string piece = utf8::encode(std::u32string(1, cps[i]));
      out.push_back({token_id(piece), piece, {i, i + 1}});
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < cps.size() && !utf8::is_space(cps[j]) && !is_ascii_punct(cps[j])) ++j;
    emit_word(i, j);
    i = j;
  }
  return out;
}

EncoderOutput ToyEncoder::forward(std::vector<int> ids) const {
  const int d = config_.hidden;
  const auto n = static_cast<Eigen::Index>(ids.size());
  EncoderOutput out;
  out.layers.reserve(config_.layers + 1);
  Eigen::MatrixXd h(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (ids[i] < 0 || ids[i] >= config_.buckets) throw ArgumentError("token id out of range");
    h.row(i) = params_[0].row(ids[i]);
  }
  out.layers.push_back(h);
  for (int l = 1; l <= config_.layers; ++l) {
    const Eigen::MatrixXd& prev = out.layers.back();
    Eigen::RowVectorXd context = n > 0 ? Eigen::RowVectorXd(prev.colwise().mean()) : Eigen::RowVectorXd::Zero(d);
    Eigen::RowVectorXd shared = context * context_weight(l).transpose() + bias(l).transpose();
    Eigen::MatrixXd z = prev * weight(l).transpose();
    z.rowwise() += shared;
    out.layers.push_back(prev + z.array().tanh().matrix());
  }
  out.ids = std::move(ids);
  return out;
}

std::vector<Eigen::MatrixXd> ToyEncoder::gradients(std::span<const GradientSignal> signals) const {
  std::vector<Eigen::MatrixXd> grads;
  for (const auto& p : params_) grads.push_back(Eigen::MatrixXd::Zero(p.rows(), p.cols()));

  for (const GradientSignal& sig : signals) {
    const EncoderOutput& fwd = *sig.output;
    if (sig.layer < 0 || sig.layer > config_.layers) throw ArgumentError("gradient layer out of range");
    const auto n = static_cast<Eigen::Index>(fwd.ids.size());
    if (n == 0) continue;
    if (sig.grad.rows() != n || sig.grad.cols() != config_.hidden) throw ArgumentError("gradient shape mismatch");
    Eigen::MatrixXd g = sig.grad;
    for (int l = sig.layer; l >= 1; --l) {
      const Eigen::MatrixXd& prev = fwd.layers[l - 1];
      Eigen::RowVectorXd context = prev.colwise().mean();
      Eigen::MatrixXd z = prev * weight(l).transpose();
      z.rowwise() += context * context_weight(l).transpose() + bias(l).transpose();
      Eigen::MatrixXd t = z.array().tanh().matrix();
      Eigen::MatrixXd dz = (g.array() * (1.0 - t.array().square())).matrix();
      Eigen::RowVectorXd dz_sum = dz.colwise().sum();
      grads[1 + 3 * (l - 1)] += dz.transpose() * prev;
      grads[2 + 3 * (l - 1)] += dz_sum.transpose() * context;
      grads[3 + 3 * (l - 1)] += dz_sum.transpose();
      Eigen::MatrixXd dprev = g + dz * weight(l);
      dprev.rowwise() += (dz_sum * context_weight(l)) / static_cast<double>(n);
      g = std::move(dprev);
    }
    for (Eigen::Index i = 0; i < n; ++i) grads[0].row(fwd.ids[i]) += g.row(i);
  }
  return grads;
}

void ToyEncoder::update(std::span<const GradientSignal> signals, const OptimizerConfig& opt) {
  if (!trainable_) throw ArgumentError("encoder is frozen");
  std::vector<Eigen::MatrixXd> grads = gradients(signals);
  ++adam_step_;
  const double bc1 = 1.0 - std::pow(opt.beta1, static_cast<double>(adam_step_));
  const double bc2 = 1.0 - std::pow(opt.beta2, static_cast<double>(adam_step_));
  for (std::size_t k = 0; k < params_.size(); ++k) {
    adam_m_[k] = opt.beta1 * adam_m_[k] + (1.0 - opt.beta1) * grads[k];
    adam_v_[k] = opt.beta2 * adam_v_[k] + (1.0 - opt.beta2) * grads[k].cwiseAbs2();
    params_[k].array() -=
        opt.learning_rate * (adam_m_[k].array() / bc1) / ((adam_v_[k].array() / bc2).sqrt() + opt.epsilon);
  }
}

std::unique_ptr<Encoder> ToyEncoder::clone() const { return std::make_unique<ToyEncoder>(*this); }

void ToyEncoder::save(std::ostream& out) const {
  out.write(kMagic, 8);
  write_pod<std::uint32_t>(out, 1);
  write_pod<std::int32_t>(out, config_.layers);
  write_pod<std::int32_t>(out, config_.hidden);
  write_pod<std::int32_t>(out, config_.buckets);
  write_pod<std::uint64_t>(out, config_.seed);
  for (const auto& p : params_) {
    out.write(reinterpret_cast<const char*>(p.data()), static_cast<std::streamsize>(p.size() * sizeof(double)));
  }
  if (!out) throw IoError("failed to write toy encoder checkpoint");
}

void ToyEncoder::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  save(out);
}

std::unique_ptr<ToyEncoder> ToyEncoder::load(std::istream& in) {
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kMagic, 8) != 0) throw IoError("not a toy encoder checkpoint");
  if (read_pod<std::uint32_t>(in) != 1) throw IoError("unsupported toy encoder checkpoint version");
  ToyEncoderConfig cfg;
  cfg.layers = read_pod<std::int32_t>(in);
  cfg.hidden = read_pod<std::int32_t>(in);
  cfg.buckets = read_pod<std::int32_t>(in);
  cfg.seed = read_pod<std::uint64_t>(in);
  auto enc = std::make_unique<ToyEncoder>(cfg);
  for (auto& p : enc->params_) {
    in.read(reinterpret_cast<char*>(p.data()), static_cast<std::streamsize>(p.size() * sizeof(double)));
    if (!in) throw IoError("truncated toy encoder checkpoint");
  }
  return enc;
}

}  // namespace lexctx
