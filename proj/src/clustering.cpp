#include "lexctx/clustering.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "lexctx/errors.h"
#include "lexctx/projection.h"
#include "lexctx/rng.h"

namespace lexctx {

ClusteringResult make_clustering(const Eigen::MatrixXd& points, const std::vector<int>& assignment) {
  if (static_cast<Eigen::Index>(assignment.size()) != points.rows()) {
    throw ArgumentError("assignment size does not match point count");
  }
  ClusteringResult out;
  std::map<int, int> relabel;
  out.assignment.reserve(assignment.size());
  for (int a : assignment) {
    auto [it, inserted] = relabel.emplace(a, static_cast<int>(relabel.size()));
    out.assignment.push_back(it->second);
  }
  const auto k = static_cast<Eigen::Index>(relabel.size());
  out.centroids = Eigen::MatrixXd::Zero(k, points.cols());
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(k);
  for (std::size_t i = 0; i < out.assignment.size(); ++i) {
    out.centroids.row(out.assignment[i]) += points.row(static_cast<Eigen::Index>(i));
    counts(out.assignment[i]) += 1.0;
  }
  for (Eigen::Index c = 0; c < k; ++c) out.centroids.row(c) /= counts(c);
  return out;
}

namespace {

int nearest(const Eigen::MatrixXd& centroids, const Eigen::RowVectorXd& x, double* dist = nullptr) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (Eigen::Index c = 0; c < centroids.rows(); ++c) {
    const double d = (centroids.row(c) - x).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  if (dist) *dist = best_d;
  return best;
}

Eigen::MatrixXd plus_plus_seeds(const Eigen::MatrixXd& points, int k, Rng& rng) {
  const Eigen::Index n = points.rows();
  Eigen::MatrixXd centers(k, points.cols());
  centers.row(0) = points.row(static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n))));
  Eigen::VectorXd d2(n);
  for (Eigen::Index i = 0; i < n; ++i) d2(i) = (points.row(i) - centers.row(0)).squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = d2.sum();
    Eigen::Index pick = 0;
    if (total <= 0.0) {
      pick = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n)));
    } else {
      double r = rng.uniform() * total;
      pick = n - 1;
      for (Eigen::Index i = 0; i < n; ++i) {
        r -= d2(i);
        if (r < 0.0 && d2(i) > 0.0) {
          pick = i;
          break;
        }
      }
    }
    centers.row(c) = points.row(pick);
    for (Eigen::Index i = 0; i < n; ++i) d2(i) = std::min(d2(i), (points.row(i) - centers.row(c)).squaredNorm());
  }
  return centers;
}

}  // namespace

ClusteringResult kmeans_from(const Eigen::MatrixXd& points, const Eigen::MatrixXd& initial,
                             const KMeansOptions& options) {
  const Eigen::Index n = points.rows();
  if (n == 0) throw ArgumentError("k-means on an empty point set");
  Eigen::MatrixXd centers = initial;
  const Eigen::Index k = centers.rows();
  std::vector<int> assign(static_cast<std::size_t>(n), -1);

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    bool changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      const int c = nearest(centers, points.row(i));
      if (c != assign[i]) {
        assign[i] = c;
        changed = true;
      }
    }
    Eigen::MatrixXd updated = Eigen::MatrixXd::Zero(k, points.cols());
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(k);
    for (Eigen::Index i = 0; i < n; ++i) {
      updated.row(assign[i]) += points.row(i);
      counts(assign[i]) += 1.0;
    }
    for (Eigen::Index c = 0; c < k; ++c) {
      if (counts(c) > 0) {
        updated.row(c) /= counts(c);
        continue;
      }
      // Empty cluster: move it onto the point worst served by its centroid.
      Eigen::Index worst = 0;
      double worst_d = -1.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        const double d = (points.row(i) - centers.row(assign[i])).squaredNorm();
        if (d > worst_d) {
          worst_d = d;
          worst = i;
        }
      }
      updated.row(c) = points.row(worst);
      changed = true;
    }
    double max_shift = 0.0;
    for (Eigen::Index c = 0; c < k; ++c) {
      const double scale = std::max(centers.row(c).norm(), 1e-12);
      max_shift = std::max(max_shift, (updated.row(c) - centers.row(c)).norm() / scale);
    }
    centers = std::move(updated);
    if (!changed || max_shift <= options.tolerance) break;
  }
  for (Eigen::Index i = 0; i < n; ++i) assign[i] = nearest(centers, points.row(i));
  return make_clustering(points, assign);
}

ClusteringResult kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed, const KMeansOptions& options) {
  if (points.rows() == 0) throw ArgumentError("k-means on an empty point set");
  if (k < 1) throw ArgumentError("k must be >= 1");
  k = static_cast<int>(std::min<Eigen::Index>(k, points.rows()));
  Rng rng(seed);
  return kmeans_from(points, plus_plus_seeds(points, k, rng), options);
}

double spherical_bic(const Eigen::MatrixXd& points, const std::vector<int>& assignment,
                     const Eigen::MatrixXd& centroids) {
  const double r = static_cast<double>(points.rows());
  const double m = static_cast<double>(points.cols());
  const Eigen::Index k = centroids.rows();
  if (points.rows() <= k) return -std::numeric_limits<double>::infinity();
  std::vector<double> sizes(static_cast<std::size_t>(k), 0.0);
  double sse = 0.0;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    sse += (points.row(i) - centroids.row(assignment[i])).squaredNorm();
    sizes[assignment[i]] += 1.0;
  }
  const double kd = static_cast<double>(k);
  const double variance = std::max(sse / (r - kd), 1e-12);
  double log_likelihood = 0.0;
  for (double rn : sizes) {
    if (rn <= 0) continue;
    log_likelihood += rn * std::log(rn / r) - 0.5 * rn * std::log(2.0 * std::numbers::pi) -
                      0.5 * rn * m * std::log(variance) - 0.5 * (rn - kd);
  }
  const double params = static_cast<double>(k - 1) + static_cast<double>(k) * m + 1.0;
  return log_likelihood - 0.5 * params * std::log(r);
}

ClusteringResult xmeans_cluster(const Eigen::MatrixXd& points, int kmin, int kmax, std::uint64_t seed) {
  if (points.rows() == 0) throw ArgumentError("X-means on an empty point set");
  if (kmin < 1 || kmax < kmin) throw ArgumentError("X-means needs 1 <= kmin <= kmax");
  const Eigen::Index n = points.rows();

  Eigen::MatrixXd unit(n, points.cols());
  for (Eigen::Index i = 0; i < n; ++i) {
    const double norm = points.row(i).norm();
    if (norm == 0.0) throw UndefinedSimilarityError("X-means on cosine geometry got a zero vector");
    unit.row(i) = points.row(i) / norm;
  }

  ClusteringResult current = kmeans(unit, kmin, derive_seed(seed, 0));
  for (int round = 1; current.n_clusters() < kmax; ++round) {
    struct Split {
      double gain;
      int cluster;
      Eigen::MatrixXd children;
    };
    std::vector<Split> splits;
    for (int c = 0; c < current.n_clusters(); ++c) {
      std::vector<Eigen::Index> members;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (current.assignment[i] == c) members.push_back(i);
      }
      if (members.size() < 3) continue;
      Eigen::MatrixXd local(static_cast<Eigen::Index>(members.size()), unit.cols());
      for (std::size_t m = 0; m < members.size(); ++m) local.row(static_cast<Eigen::Index>(m)) = unit.row(members[m]);
      ClusteringResult child = kmeans(local, 2, derive_seed(seed, static_cast<std::uint64_t>(round) * 1000003 + c));
      if (child.n_clusters() < 2) continue;
      const std::vector<int> parent_assign(members.size(), 0);
      const Eigen::MatrixXd parent_center = local.colwise().mean();
      const double before = spherical_bic(local, parent_assign, parent_center);
      const double after = spherical_bic(local, child.assignment, child.centroids);
      if (after > before) splits.push_back({after - before, c, child.centroids});
    }
    if (splits.empty()) break;
    std::stable_sort(splits.begin(), splits.end(), [](const Split& a, const Split& b) { return a.gain > b.gain; });
    const auto budget = static_cast<std::size_t>(kmax - current.n_clusters());
    if (splits.size() > budget) splits.resize(budget);

    std::vector<Eigen::RowVectorXd> centers;
    for (int c = 0; c < current.n_clusters(); ++c) {
      auto it = std::find_if(splits.begin(), splits.end(), [c](const Split& s) { return s.cluster == c; });
      if (it == splits.end()) {
        centers.push_back(current.centroids.row(c));
      } else {
        centers.push_back(it->children.row(0));
        centers.push_back(it->children.row(1));
      }
    }
    Eigen::MatrixXd init(static_cast<Eigen::Index>(centers.size()), unit.cols());
    for (std::size_t c = 0; c < centers.size(); ++c) init.row(static_cast<Eigen::Index>(c)) = centers[c];
    ClusteringResult refined = kmeans_from(unit, init);
    if (refined.n_clusters() <= current.n_clusters()) break;
    current = std::move(refined);
  }
  return make_clustering(points, current.assignment);
}

ClusteringResult agglomerative_cluster(const Eigen::MatrixXd& points, double termination_threshold) {
  const Eigen::Index n = points.rows();
  if (n == 0) throw ArgumentError("agglomerative clustering on an empty point set");

  Eigen::MatrixXd dist(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    dist(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double d = 1.0 - cosine(points.row(i).transpose(), points.row(j).transpose());
      dist(i, j) = d;
      dist(j, i) = d;
    }
  }

  std::vector<char> active(static_cast<std::size_t>(n), 1);
  std::vector<double> size(static_cast<std::size_t>(n), 1.0);
  std::vector<Eigen::Index> nn(static_cast<std::size_t>(n), -1);
  std::vector<double> nn_dist(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
  std::vector<int> owner(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) owner[i] = static_cast<int>(i);

  // Nearest active slot with a larger index; ties keep the smaller index.
  auto refresh = [&](Eigen::Index i) {
    nn[i] = -1;
    nn_dist[i] = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (active[j] && dist(i, j) < nn_dist[i]) {
        nn_dist[i] = dist(i, j);
        nn[i] = j;
      }
    }
  };
  for (Eigen::Index i = 0; i < n; ++i) refresh(i);

  for (Eigen::Index merges = 0; merges + 1 < n; ++merges) {
    Eigen::Index a = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (active[i] && nn[i] >= 0 && nn_dist[i] < best) {
        best = nn_dist[i];
        a = i;
      }
    }
    if (a < 0 || best > termination_threshold) break;
    const Eigen::Index b = nn[a];

    for (Eigen::Index k = 0; k < n; ++k) {
      if (!active[k] || k == a || k == b) continue;
      const double merged = (size[a] * dist(a, k) + size[b] * dist(b, k)) / (size[a] + size[b]);
      dist(a, k) = merged;
      dist(k, a) = merged;
    }
    size[a] += size[b];
    active[b] = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (owner[i] == static_cast<int>(b)) owner[i] = static_cast<int>(a);
    }

    refresh(a);
    for (Eigen::Index k = 0; k < a; ++k) {
      if (!active[k]) continue;
      if (nn[k] == a || nn[k] == b) {
        refresh(k);
      } else if (dist(k, a) < nn_dist[k] || (dist(k, a) == nn_dist[k] && a < nn[k])) {
        nn[k] = a;
        nn_dist[k] = dist(k, a);
      }
    }
    for (Eigen::Index k = a + 1; k < n; ++k) {
      if (active[k] && nn[k] == b) refresh(k);
    }
  }
  return make_clustering(points, owner);
}

}  // namespace lexctx
