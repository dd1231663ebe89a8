#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lexctx/encoder.h"
#include "lexctx/lexicon.h"

namespace lexctx {

using FloatRows = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Sidecar line for one dump row.
struct DumpRow {
  std::size_t row = 0;
  std::string example_id;
  int layer = 0;
  bool masked = false;
  bool ok = true;
  std::string error;
};

// Row-major float32 vectors plus per-row metadata. Rows that failed to
// encode are NaN-filled and flagged !ok.
struct EmbeddingDump {
  FloatRows vectors;
  std::vector<DumpRow> rows;

  std::size_t failures() const;
  // Indices of usable rows and the corresponding vectors in double precision.
  Eigen::MatrixXd valid_matrix(std::vector<std::size_t>* kept = nullptr) const;
};

std::string example_id(const SenseExample& ex, std::size_t index);

EmbeddingDump encode_corpus(const Encoder& enc, std::span<const SenseExample> examples, int layer, bool masked);

// Binary layout, all little-endian:
//   8 bytes magic "LXCTXEMB", u32 version (1), u32 dtype (1 = f32),
//   u64 rows, u64 dim, then rows*dim f32 values row-major.
void write_matrix(std::ostream& out, const FloatRows& m);
FloatRows read_matrix(std::istream& in);

void write_sidecar(std::ostream& out, std::span<const DumpRow> rows);
std::vector<DumpRow> read_sidecar(std::istream& in);

// Writes <path> and <path>.meta.jsonl.
void save_dump(const std::string& path, const EmbeddingDump& dump);
EmbeddingDump load_dump(const std::string& path);

}  // namespace lexctx
