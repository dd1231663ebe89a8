#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace lexctx {

// assignment[i] is the cluster of row i. Cluster ids are dense and numbered
// by first appearance in row order. centroids.row(c) is the arithmetic mean
// of the input rows assigned to c.
struct ClusteringResult {
  std::vector<int> assignment;
  Eigen::MatrixXd centroids;

  int n_clusters() const { return static_cast<int>(centroids.rows()); }
};

// Renumbers `assignment` by first appearance and recomputes centroids from
// `points`.
ClusteringResult make_clustering(const Eigen::MatrixXd& points, const std::vector<int>& assignment);

struct KMeansOptions {
  int max_iterations = 300;
  double tolerance = 1e-6;  // relative centroid movement
};

// Lloyd's algorithm from k-means++ seeds. k is clamped to the point count.
ClusteringResult kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed, const KMeansOptions& options = {});

// Lloyd's algorithm from the given initial centroids.
ClusteringResult kmeans_from(const Eigen::MatrixXd& points, const Eigen::MatrixXd& initial,
                             const KMeansOptions& options = {});

// Bayesian information criterion of a hard clustering under a mixture of
// identity-covariance Gaussians sharing one variance SSE / (R - K), with
// the per-cluster log-likelihood
//   R_n log(R_n / R) - R_n/2 log(2 pi) - R_n M/2 log(var) - (R_n - K)/2
// and K - 1 + K M + 1 free parameters. Returns -inf when there are no more
// points than clusters.
double spherical_bic(const Eigen::MatrixXd& points, const std::vector<int>& assignment,
                     const Eigen::MatrixXd& centroids);

// X-means: starts from kmin k-means++ clusters and keeps splitting every
// cluster whose local 2-means split improves the BIC, refining all centroids
// after each round, until nothing improves or kmax is reached. Rows are
// L2-normalized first, so the geometry is that of cosine distance; returned
// centroids are means of the original rows.
ClusteringResult xmeans_cluster(const Eigen::MatrixXd& points, int kmin, int kmax, std::uint64_t seed);

// Group-average agglomerative clustering on cosine distance (1 - cosine).
// Merges the closest pair while its linkage distance does not exceed
// `termination_threshold`; equal distances merge the lowest index pair
// first.
ClusteringResult agglomerative_cluster(const Eigen::MatrixXd& points, double termination_threshold);

}  // namespace lexctx
