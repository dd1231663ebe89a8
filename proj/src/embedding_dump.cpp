#include "lexctx/embedding_dump.h"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>

#include "json.hpp"
#include "lexctx/embedding.h"
#include "lexctx/errors.h"

namespace lexctx {

static_assert(std::endian::native == std::endian::little, "dump I/O assumes a little-endian host");

namespace {

constexpr char kDumpMagic[9] = "LXCTXEMB";

template <typename T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw IoError("truncated embedding dump header");
  return v;
}

}  // namespace

std::size_t EmbeddingDump::failures() const {
  std::size_t n = 0;
  for (const DumpRow& r : rows) n += r.ok ? 0 : 1;
  return n;
}

Eigen::MatrixXd EmbeddingDump::valid_matrix(std::vector<std::size_t>* kept) const {
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].ok) ids.push_back(i);
  }
  Eigen::MatrixXd out(static_cast<Eigen::Index>(ids.size()), vectors.cols());
  for (std::size_t k = 0; k < ids.size(); ++k) {
    out.row(static_cast<Eigen::Index>(k)) = vectors.row(static_cast<Eigen::Index>(ids[k])).cast<double>();
  }
  if (kept) *kept = std::move(ids);
  return out;
}

std::string example_id(const SenseExample& ex, std::size_t index) {
  return std::to_string(index) + ":" + ex.lemma + ":" + ex.sense_id;
}

EmbeddingDump encode_corpus(const Encoder& enc, std::span<const SenseExample> examples, int layer, bool masked) {
  if (layer < 0 || layer > enc.num_layers()) throw ArgumentError("layer out of range");
  EmbeddingDump dump;
  dump.vectors.resize(static_cast<Eigen::Index>(examples.size()), enc.hidden_size());
  for (std::size_t i = 0; i < examples.size(); ++i) {
    DumpRow row{i, example_id(examples[i], i), layer, masked, true, {}};
    const auto r = static_cast<Eigen::Index>(i);
    try {
      TokenVector v = target_embedding(enc, examples[i], layer, masked, i);
      dump.vectors.row(r) = v.values.transpose().cast<float>();
    } catch (const AlignmentError& e) {
      row.ok = false;
      row.error = e.what();
      dump.vectors.row(r).setConstant(std::numeric_limits<float>::quiet_NaN());
    }
    dump.rows.push_back(std::move(row));
  }
  return dump;
}

void write_matrix(std::ostream& out, const FloatRows& m) {
  out.write(kDumpMagic, 8);
  put<std::uint32_t>(out, 1);
  put<std::uint32_t>(out, 1);
  put<std::uint64_t>(out, static_cast<std::uint64_t>(m.rows()));
  put<std::uint64_t>(out, static_cast<std::uint64_t>(m.cols()));
  out.write(reinterpret_cast<const char*>(m.data()), static_cast<std::streamsize>(m.size() * sizeof(float)));
  if (!out) throw IoError("failed to write embedding dump");
}

FloatRows read_matrix(std::istream& in) {
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kDumpMagic, 8) != 0) throw IoError("not an embedding dump (bad magic)");
  if (get<std::uint32_t>(in) != 1) throw IoError("unsupported embedding dump version");
  if (get<std::uint32_t>(in) != 1) throw IoError("unsupported embedding dump dtype");
  const auto rows = get<std::uint64_t>(in);
  const auto dim = get<std::uint64_t>(in);
  FloatRows m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(dim));
  in.read(reinterpret_cast<char*>(m.data()), static_cast<std::streamsize>(m.size() * sizeof(float)));
  if (!in && m.size() > 0) throw IoError("truncated embedding dump body");
  return m;
}

void write_sidecar(std::ostream& out, std::span<const DumpRow> rows) {
  for (const DumpRow& r : rows) {
    nlohmann::json rec = {
        {"row", r.row}, {"example_id", r.example_id}, {"layer", r.layer}, {"masked", r.masked}, {"ok", r.ok}};
    if (!r.ok) rec["error"] = r.error;
    out << rec.dump() << '\n';
  }
}

std::vector<DumpRow> read_sidecar(std::istream& in) {
  std::vector<DumpRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      auto rec = nlohmann::json::parse(line);
      DumpRow r;
      r.row = rec.at("row").get<std::size_t>();
      r.example_id = rec.at("example_id").get<std::string>();
      r.layer = rec.at("layer").get<int>();
      r.masked = rec.at("masked").get<bool>();
      r.ok = rec.value("ok", true);
      r.error = rec.value("error", std::string());
      rows.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return rows;
}

void save_dump(const std::string& path, const EmbeddingDump& dump) {
  std::ofstream bin(path, std::ios::binary);
  if (!bin) throw IoError("cannot open " + path);
  write_matrix(bin, dump.vectors);
  std::ofstream meta(path + ".meta.jsonl");
  if (!meta) throw IoError("cannot open " + path + ".meta.jsonl");
  write_sidecar(meta, dump.rows);
}

EmbeddingDump load_dump(const std::string& path) {
  std::ifstream bin(path, std::ios::binary);
  if (!bin) throw IoError("cannot open " + path);
  EmbeddingDump dump;
  dump.vectors = read_matrix(bin);
  std::ifstream meta(path + ".meta.jsonl");
  if (meta) {
    dump.rows = read_sidecar(meta);
  } else {
    for (Eigen::Index i = 0; i < dump.vectors.rows(); ++i) {
      DumpRow r;
      r.row = static_cast<std::size_t>(i);
      r.example_id = std::to_string(i);
      r.ok = dump.vectors.row(i).allFinite();
      dump.rows.push_back(std::move(r));
    }
  }
  if (dump.rows.size() != static_cast<std::size_t>(dump.vectors.rows())) {
    throw IoError(path + ": sidecar row count does not match the dump");
  }
  return dump;
}

}  // namespace lexctx
