#include "fieldkpi/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_set>

#include "fieldkpi/error.hpp"

namespace fieldkpi {

namespace {

/// Static median-split kd-tree over 3D points. Nodes are stored as index
/// ranges into a permutation array; queries support excluding one index
/// (self-queries) and stop early on an exact hit.
class KdTree {
 public:
  explicit KdTree(const PointCloud& points) : pts_(points), order_(points.size()) {
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    if (!order_.empty()) root_ = build(0, order_.size());
  }

  /// Squared distance from `q` to the nearest stored point with index != skip.
  double nearest_sq(const Eigen::Vector3d& q, std::size_t skip = kNoSkip) const {
    double best = std::numeric_limits<double>::infinity();
    search(root_, q, skip, best);
    return best;
  }

  static constexpr std::size_t kNoSkip = static_cast<std::size_t>(-1);

 private:
  struct Node {
    std::size_t point = 0;
    int axis = 0;
    int left = -1;
    int right = -1;
  };

  int build(std::size_t lo, std::size_t hi) {
    if (lo >= hi) return -1;
    // Split on the widest axis of this subset's bounding box.
    Eigen::Vector3d mn = pts_[order_[lo]], mx = pts_[order_[lo]];
    for (std::size_t i = lo + 1; i < hi; ++i) {
      mn = mn.cwiseMin(pts_[order_[i]]);
      mx = mx.cwiseMax(pts_[order_[i]]);
    }
    int axis = 0;
    (mx - mn).maxCoeff(&axis);
    const std::size_t mid = lo + (hi - lo) / 2;
    std::nth_element(order_.begin() + lo, order_.begin() + mid, order_.begin() + hi,
                     [&](std::size_t a, std::size_t b) { return pts_[a][axis] < pts_[b][axis]; });
    Node node;
    node.point = order_[mid];
    node.axis = axis;
    const int self = static_cast<int>(nodes_.size());
    nodes_.push_back(node);
    const int left = build(lo, mid);
    const int right = build(mid + 1, hi);
    nodes_[self].left = left;
    nodes_[self].right = right;
    return self;
  }

  void search(int idx, const Eigen::Vector3d& q, std::size_t skip, double& best) const {
    if (idx < 0 || best == 0.0) return;
    const Node& node = nodes_[idx];
    if (node.point != skip) {
      best = std::min(best, (pts_[node.point] - q).squaredNorm());
    }
    const double delta = q[node.axis] - pts_[node.point][node.axis];
    const int near = delta < 0.0 ? node.left : node.right;
    const int far = delta < 0.0 ? node.right : node.left;
    search(near, q, skip, best);
    if (delta * delta < best) search(far, q, skip, best);
  }

  const PointCloud& pts_;
  std::vector<std::size_t> order_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

std::vector<double> nn_distances_impl(const PointCloud& pts) {
  const std::size_t n = pts.size();
  if (n < 2) throw Error("nn_distances: insufficient points (need at least 2)");
  std::vector<double> out(n);
  if (n <= kBruteForceLimit) {
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        best = std::min(best, (pts[i] - pts[j]).squaredNorm());
      }
      out[i] = std::sqrt(best);
    }
    return out;
  }
  const KdTree tree(pts);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::sqrt(tree.nearest_sq(pts[i], i));
  return out;
}

double directed_mean_nn(const PointCloud& from, const KdTree& to_tree) {
  double sum = 0.0;
  for (const auto& p : from) sum += std::sqrt(to_tree.nearest_sq(p));
  return sum / static_cast<double>(from.size());
}

}  // namespace

CoverageResult mapped_area(const PointCloud& cloud, double cell_size) {
  if (!(cell_size > 0.0)) throw Error("mapped_area: cell_size must be positive");
  std::unordered_set<std::uint64_t> cells;
  cells.reserve(cloud.size());
  for (const auto& p : cloud) {
    const auto cx = static_cast<std::int64_t>(std::floor(p.x() / cell_size));
    const auto cy = static_cast<std::int64_t>(std::floor(p.y() / cell_size));
    // Pack the two 32-bit cell coordinates into one key.
    const std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(cx)) << 32) |
                              static_cast<std::uint64_t>(static_cast<std::uint32_t>(cy));
    cells.insert(key);
  }
  CoverageResult result;
  result.cell_size = cell_size;
  result.occupied_cells = static_cast<std::int64_t>(cells.size());
  result.area = static_cast<double>(result.occupied_cells) * cell_size * cell_size;
  return result;
}

double traveled_distance(const Trajectory& traj) {
  double total = 0.0;
  for (std::size_t i = 1; i < traj.samples.size(); ++i) {
    total += (traj.samples[i].p - traj.samples[i - 1].p).norm();
  }
  return total;
}

std::vector<double> nn_distances(const std::vector<Eigen::Vector2d>& points) {
  PointCloud lifted;
  lifted.reserve(points.size());
  for (const auto& p : points) lifted.emplace_back(p.x(), p.y(), 0.0);
  return nn_distances_impl(lifted);
}

std::vector<double> nn_distances(const PointCloud& points) { return nn_distances_impl(points); }

double chamfer_distance(const PointCloud& m, const PointCloud& gt) {
  if (m.empty() || gt.empty()) throw Error("chamfer_distance: empty point cloud");
  const KdTree m_tree(m);
  const KdTree gt_tree(gt);
  return 0.5 * (directed_mean_nn(m, gt_tree) + directed_mean_nn(gt, m_tree));
}

PoseMatches associate_poses(const Trajectory& est, const Trajectory& gt, double max_dt) {
  if (!(max_dt > 0.0)) throw Error("associate_poses: max_dt must be positive");
  PoseMatches out;
  if (gt.samples.empty()) throw Error("associate_poses: disjoint time ranges (empty ground truth)");
  // gt is time-sorted; advance a cursor to the sample nearest in time.
  std::size_t j = 0;
  for (const auto& s : est.samples) {
    while (j + 1 < gt.samples.size() &&
           std::abs(gt.samples[j + 1].t - s.t) <= std::abs(gt.samples[j].t - s.t)) {
      ++j;
    }
    if (std::abs(gt.samples[j].t - s.t) <= max_dt) {
      out.pairs.emplace_back(s.p, gt.samples[j].p);
    } else {
      ++out.dropped;
    }
  }
  out.matched = out.pairs.size();
  if (out.matched == 0) throw Error("associate_poses: disjoint time ranges (zero matches)");
  return out;
}

const char* to_string(AlignMode mode) {
  switch (mode) {
    case AlignMode::none: return "none";
    case AlignMode::translation: return "translation";
    case AlignMode::rigid: return "rigid";
  }
  return "?";
}

std::optional<AlignMode> align_mode_from_string(std::string_view name) {
  if (name == "none") return AlignMode::none;
  if (name == "translation") return AlignMode::translation;
  if (name == "rigid") return AlignMode::rigid;
  return std::nullopt;
}

AlignResult rigid_align(const std::vector<std::pair<Eigen::Vector3d, Eigen::Vector3d>>& pairs,
                        AlignMode mode) {
  if (pairs.empty()) throw Error("rigid_align: no matched pairs");
  const auto n = static_cast<double>(pairs.size());

  AlignResult result;
  if (mode != AlignMode::none) {
    Eigen::Vector3d est_centroid = Eigen::Vector3d::Zero();
    Eigen::Vector3d gt_centroid = Eigen::Vector3d::Zero();
    for (const auto& [e, g] : pairs) {
      est_centroid += e;
      gt_centroid += g;
    }
    est_centroid /= n;
    gt_centroid /= n;

    if (mode == AlignMode::rigid) {
      if (pairs.size() < 3) {
        throw Error("rigid_align: rigid mode needs at least 3 pairs; try mode=translation");
      }
      Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
      for (const auto& [e, g] : pairs) {
        cov += (g - gt_centroid) * (e - est_centroid).transpose();
      }
      cov /= n;
      Eigen::JacobiSVD<Eigen::Matrix3d> svd(cov, Eigen::ComputeFullU | Eigen::ComputeFullV);
      const Eigen::Vector3d sv = svd.singularValues();
      // Rotation about a line of points is unconstrained; refuse instead of
      // returning an arbitrary member of the solution family.
      if (sv(1) <= 1e-12 * std::max(sv(0), 1e-300)) {
        throw Error("rigid_align: degenerate (collinear) geometry; try mode=translation");
      }
      Eigen::Matrix3d d = Eigen::Matrix3d::Identity();
      if ((svd.matrixU() * svd.matrixV().transpose()).determinant() < 0.0) d(2, 2) = -1.0;
      result.rotation = svd.matrixU() * d * svd.matrixV().transpose();
    }
    result.translation = gt_centroid - result.rotation * est_centroid;
  }

  result.transformed.reserve(pairs.size());
  double sq_sum = 0.0;
  for (const auto& [e, g] : pairs) {
    const Eigen::Vector3d mapped = result.rotation * e + result.translation;
    result.transformed.push_back(mapped);
    sq_sum += (mapped - g).squaredNorm();
  }
  result.rmse = std::sqrt(sq_sum / n);
  return result;
}

double convex_hull_area(const std::vector<Eigen::Vector2d>& points) {
  if (points.size() < 3) return 0.0;
  std::vector<Eigen::Vector2d> pts = points;
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const auto& a, const auto& b) { return a == b; }),
            pts.end());
  if (pts.size() < 3) return 0.0;

  const auto cross = [](const Eigen::Vector2d& o, const Eigen::Vector2d& a,
                        const Eigen::Vector2d& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
  };
  // Andrew monotone chain.
  std::vector<Eigen::Vector2d> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  const std::size_t lower_end = k + 1;
  for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
    while (k >= lower_end && cross(hull[k - 2], hull[k - 1], *it) <= 0.0) --k;
    hull[k++] = *it;
  }
  hull.resize(k > 1 ? k - 1 : 0);
  double twice_area = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const auto& a = hull[i];
    const auto& b = hull[(i + 1) % hull.size()];
    twice_area += a.x() * b.y() - b.x() * a.y();
  }
  return std::abs(twice_area) / 2.0;
}

double rmse_of(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  double sq = 0.0;
  for (double v : values) sq += v * v;
  return std::sqrt(sq / static_cast<double>(values.size()));
}

double median_of(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace fieldkpi
