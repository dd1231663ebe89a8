#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>

namespace lexctx {

enum class Similarity { kCosine, kDot, kNegEuclidean };

Similarity parse_similarity(const std::string& name);
std::string to_string(Similarity s);

// Pairwise similarity matrix of the rows of `embeddings`.
Eigen::MatrixXd similarity_matrix(const Eigen::MatrixXd& embeddings, Similarity sim);

struct LossWithGradient {
  double loss = 0.0;
  // d loss / d embeddings, same shape as the input.
  Eigen::MatrixXd grad;
  // Anchors with at least one same-label partner.
  int anchors = 0;
};

// Multiple-positive contrastive loss over one lemma batch. Rows of
// `embeddings` are the target embeddings, `labels` their sense classes.
// For every anchor j with positives P(j) (same label, j excluded):
//   term_j = -1/|P(j)| * sum_{p in P(j)} log softmax_{k != j}(s(j,k)/tau)[p]
// and the loss is the sum of the terms. Anchors without positives add 0.
// Throws ArgumentError on fewer than 2 rows, a label count mismatch,
// non-finite values or tau <= 0; UndefinedSimilarityError on a zero vector
// under cosine.
LossWithGradient batch_loss_with_gradient(const Eigen::MatrixXd& embeddings, std::span<const int> labels, double tau,
                                          Similarity sim = Similarity::kCosine);

double batch_loss(const Eigen::MatrixXd& embeddings, std::span<const int> labels, double tau,
                  Similarity sim = Similarity::kCosine);

}  // namespace lexctx
