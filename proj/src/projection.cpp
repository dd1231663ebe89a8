#include "lexctx/projection.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "lexctx/errors.h"

namespace lexctx {

static_assert(std::endian::native == std::endian::little, "projection I/O assumes a little-endian host");

namespace {

constexpr char kProjectionMagic[9] = "LXCTXPRJ";
constexpr double kSingularTolerance = 1e-10;

template <typename T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw IoError("truncated projection file");
  return v;
}

void put_doubles(std::ostream& out, const double* data, Eigen::Index n) {
  out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(n * sizeof(double)));
}

void get_doubles(std::istream& in, double* data, Eigen::Index n) {
  in.read(reinterpret_cast<char*>(data), static_cast<std::streamsize>(n * sizeof(double)));
  if (!in && n > 0) throw IoError("truncated projection file");
}

}  // namespace

Projection fit_projection(const Eigen::MatrixXd& vectors, Eigen::Index n_components, bool whiten) {
  const Eigen::Index n = vectors.rows();
  const Eigen::Index d = vectors.cols();
  if (n_components < 1 || n_components > d) {
    throw ArgumentError("n_components must lie in [1, " + std::to_string(d) + "]");
  }
  if (n <= n_components) throw ArgumentError("PCA needs more rows than components");
  if (!vectors.allFinite()) throw ArgumentError("PCA input has non-finite values");

  Projection p;
  p.whiten = whiten;
  p.mean = vectors.colwise().mean().transpose();
  Eigen::MatrixXd centered = vectors.rowwise() - p.mean.transpose();

  Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  p.components = svd.matrixV().leftCols(n_components).transpose();
  for (Eigen::Index k = 0; k < n_components; ++k) {
    Eigen::Index arg = 0;
    p.components.row(k).cwiseAbs().maxCoeff(&arg);
    if (p.components(k, arg) < 0) p.components.row(k) *= -1.0;
  }
  p.scales = sv.head(n_components) / std::sqrt(static_cast<double>(n - 1));
  if (whiten) {
    const double top = sv.size() > 0 ? sv(0) : 0.0;
    for (Eigen::Index k = 0; k < n_components; ++k) {
      if (!(sv(k) > kSingularTolerance * top) || sv(k) == 0.0)
        throw SingularComponentError(static_cast<std::size_t>(k));
    }
  }
  return p;
}

Eigen::VectorXd project(const Projection& p, const Eigen::VectorXd& v) {
  if (v.size() != p.input_dim()) {
    throw ArgumentError("projection expects length " + std::to_string(p.input_dim()) + ", got " +
                        std::to_string(v.size()));
  }
  Eigen::VectorXd out = p.components * (v - p.mean);
  if (p.whiten) out = out.cwiseQuotient(p.scales);
  return out;
}

Eigen::MatrixXd project_rows(const Projection& p, const Eigen::MatrixXd& rows) {
  Eigen::MatrixXd out(rows.rows(), p.output_dim());
  for (Eigen::Index i = 0; i < rows.rows(); ++i) out.row(i) = project(p, rows.row(i).transpose()).transpose();
  return out;
}

double cosine(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  if (u.size() != v.size()) throw ArgumentError("cosine of vectors with different lengths");
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu == 0.0 || nv == 0.0) throw UndefinedSimilarityError("cosine similarity of a zero vector");
  return std::clamp(u.dot(v) / (nu * nv), -1.0, 1.0);
}

void write_projection(std::ostream& out, const Projection& p) {
  out.write(kProjectionMagic, 8);
  put<std::uint32_t>(out, 1);
  put<std::uint32_t>(out, 2);
  put<std::uint64_t>(out, static_cast<std::uint64_t>(p.input_dim()));
  put<std::uint64_t>(out, static_cast<std::uint64_t>(p.output_dim()));
  put<std::uint64_t>(out, p.whiten ? 1 : 0);
  put_doubles(out, p.mean.data(), p.mean.size());
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows = p.components;
  put_doubles(out, rows.data(), rows.size());
  put_doubles(out, p.scales.data(), p.scales.size());
  if (!out) throw IoError("failed to write projection");
}

Projection read_projection(std::istream& in) {
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kProjectionMagic, 8) != 0) throw IoError("not a projection file (bad magic)");
  if (get<std::uint32_t>(in) != 1) throw IoError("unsupported projection version");
  if (get<std::uint32_t>(in) != 2) throw IoError("unsupported projection dtype");
  const auto d = static_cast<Eigen::Index>(get<std::uint64_t>(in));
  const auto k = static_cast<Eigen::Index>(get<std::uint64_t>(in));
  Projection p;
  p.whiten = get<std::uint64_t>(in) != 0;
  p.mean.resize(d);
  get_doubles(in, p.mean.data(), d);
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows(k, d);
  get_doubles(in, rows.data(), rows.size());
  p.components = rows;
  p.scales.resize(k);
  get_doubles(in, p.scales.data(), k);
  return p;
}

void save_projection(const std::string& path, const Projection& p) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path);
  write_projection(out, p);
}

Projection load_projection(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return read_projection(in);
}

}  // namespace lexctx
