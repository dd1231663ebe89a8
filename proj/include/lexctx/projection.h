#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <iosfwd>
#include <string>

namespace lexctx {

// Fitted PCA transform. Rows of `components` are orthonormal principal
// axes, strongest first. `scales` holds the per-component standard
// deviation of the fit data (N - 1 convention) and divides the projected
// coordinates only when `whiten` is set.
struct Projection {
  Eigen::VectorXd mean;
  Eigen::MatrixXd components;
  Eigen::VectorXd scales;
  bool whiten = false;

  Eigen::Index input_dim() const { return components.cols(); }
  Eigen::Index output_dim() const { return components.rows(); }
};

// SVD-based PCA on the mean-centred rows of `vectors`. Each axis is signed so
// that its largest-magnitude entry is positive. Throws ArgumentError unless
// N > n_components >= 1 and n_components <= D; throws
// SingularComponentError when whitening a component with ~zero variance.
Projection fit_projection(const Eigen::MatrixXd& vectors, Eigen::Index n_components, bool whiten);

Eigen::VectorXd project(const Projection& p, const Eigen::VectorXd& v);
Eigen::MatrixXd project_rows(const Projection& p, const Eigen::MatrixXd& rows);

// Cosine similarity clamped to [-1, 1]. Throws UndefinedSimilarityError on a
// zero vector and ArgumentError on a length mismatch.
double cosine(const Eigen::VectorXd& u, const Eigen::VectorXd& v);

// Same header layout as embedding dumps with magic "LXCTXPRJ" and dtype 2
// (f64): u64 input dim, u64 components, u64 whiten flag, then the mean,
// the components row-major and the scales.
void write_projection(std::ostream& out, const Projection& p);
Projection read_projection(std::istream& in);
void save_projection(const std::string& path, const Projection& p);
Projection load_projection(const std::string& path);

}  // namespace lexctx
