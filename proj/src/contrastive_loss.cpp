#include "lexctx/contrastive_loss.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "lexctx/errors.h"

namespace lexctx {

Similarity parse_similarity(const std::string& name) {
  if (name == "cosine") return Similarity::kCosine;
  if (name == "dot") return Similarity::kDot;
  if (name == "neg-euclidean") return Similarity::kNegEuclidean;
  throw ArgumentError("unknown similarity '" + name + "' (cosine, dot, neg-euclidean)");
}

std::string to_string(Similarity s) {
  switch (s) {
    case Similarity::kCosine:
      return "cosine";
    case Similarity::kDot:
      return "dot";
    case Similarity::kNegEuclidean:
      return "neg-euclidean";
  }
  return "?";
}

namespace {

Eigen::VectorXd row_norms(const Eigen::MatrixXd& e) {
  Eigen::VectorXd norms = e.rowwise().norm();
  for (Eigen::Index i = 0; i < norms.size(); ++i) {
    if (norms(i) == 0.0) throw UndefinedSimilarityError("cosine similarity of a zero vector");
  }
  return norms;
}

}  // namespace

Eigen::MatrixXd similarity_matrix(const Eigen::MatrixXd& e, Similarity sim) {
  const Eigen::Index n = e.rows();
  switch (sim) {
    case Similarity::kDot:
      return e * e.transpose();
    case Similarity::kCosine: {
      Eigen::VectorXd norms = row_norms(e);
      Eigen::MatrixXd unit = norms.cwiseInverse().asDiagonal() * e;
      return unit * unit.transpose();
    }
    case Similarity::kNegEuclidean: {
      Eigen::MatrixXd s(n, n);
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) s(i, j) = -(e.row(i) - e.row(j)).norm();
      return s;
    }
  }
  throw ArgumentError("unknown similarity");
}

LossWithGradient batch_loss_with_gradient(const Eigen::MatrixXd& e, std::span<const int> labels, double tau,
                                          Similarity sim) {
  const Eigen::Index n = e.rows();
  if (n < 2) throw ArgumentError("a contrastive batch needs at least 2 embeddings");
  if (static_cast<std::size_t>(n) != labels.size()) throw ArgumentError("label count does not match embeddings");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ArgumentError("temperature must be positive");
  if (!e.allFinite()) throw ArgumentError("non-finite embedding");

  const Eigen::MatrixXd s = similarity_matrix(e, sim);
  // d loss / d s(j, k), filled row by row (row = anchor).
  Eigen::MatrixXd ds = Eigen::MatrixXd::Zero(n, n);
  LossWithGradient out;

  std::vector<double> logits(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    int positives = 0;
    for (Eigen::Index k = 0; k < n; ++k) {
      if (k != j && labels[k] == labels[j]) ++positives;
    }
    if (positives == 0) continue;
    ++out.anchors;

    double max_logit = -INFINITY;
    for (Eigen::Index k = 0; k < n; ++k) {
      if (k == j) continue;
      logits[k] = s(j, k) / tau;
      max_logit = std::max(max_logit, logits[k]);
    }
    double denom = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      if (k != j) denom += std::exp(logits[k] - max_logit);
    }
    const double log_denom = max_logit + std::log(denom);

    double positive_logits = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      if (k != j && labels[k] == labels[j]) positive_logits += logits[k];
    }
    out.loss += log_denom - positive_logits / positives;

    for (Eigen::Index k = 0; k < n; ++k) {
      if (k == j) continue;
      double g = std::exp(logits[k] - log_denom);
      if (labels[k] == labels[j]) g -= 1.0 / positives;
      ds(j, k) = g / tau;
    }
  }

  // Each s(j, k) is symmetric in its arguments, so both orientations feed
  // both embeddings.
  const Eigen::MatrixXd sym = ds + ds.transpose();
  switch (sim) {
    case Similarity::kDot:
      out.grad = sym * e;
      break;
    case Similarity::kCosine: {
      Eigen::VectorXd norms = row_norms(e);
      Eigen::MatrixXd unit = norms.cwiseInverse().asDiagonal() * e;
      Eigen::MatrixXd dunit = sym * unit;
      out.grad.resize(n, e.cols());
      for (Eigen::Index i = 0; i < n; ++i) {
        const double radial = dunit.row(i).dot(unit.row(i));
        out.grad.row(i) = (dunit.row(i) - radial * unit.row(i)) / norms(i);
      }
      break;
    }
    case Similarity::kNegEuclidean: {
      out.grad = Eigen::MatrixXd::Zero(n, e.cols());
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
          if (i == j || sym(i, j) == 0.0) continue;
          Eigen::RowVectorXd diff = e.row(i) - e.row(j);
          const double dist = diff.norm();
          if (dist == 0.0) continue;
          out.grad.row(i) -= sym(i, j) * diff / dist;
        }
      }
      break;
    }
  }
  return out;
}

double batch_loss(const Eigen::MatrixXd& embeddings, std::span<const int> labels, double tau, Similarity sim) {
  return batch_loss_with_gradient(embeddings, labels, tau, sim).loss;
}

}  // namespace lexctx
