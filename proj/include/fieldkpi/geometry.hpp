#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace fieldkpi {

/// Unordered set of 3D points in meters.
using PointCloud = std::vector<Eigen::Vector3d>;

struct TrajectorySample {
  double t = 0.0;
  Eigen::Vector3d p = Eigen::Vector3d::Zero();
};

/// Timestamped positions, strictly increasing in t.
struct Trajectory {
  std::vector<TrajectorySample> samples;
};

/// Horizontal coverage of a point cloud on an origin-anchored grid.
struct CoverageResult {
  double area = 0.0;       // m^2, = occupied_cells * cell_size^2
  double cell_size = 0.0;  // m
  std::int64_t occupied_cells = 0;
};

/// Bins points into floor(x/cell), floor(y/cell) cells and counts distinct
/// occupied cells. Empty cloud yields zero area.
CoverageResult mapped_area(const PointCloud& cloud, double cell_size);

/// Sum of Euclidean distances between consecutive samples (0 if fewer than 2).
double traveled_distance(const Trajectory& traj);

/// Nearest-neighbor distance for every point (neighbor != self, coincident
/// points yield 0). Uses a kd-tree above kBruteForceLimit points.
/// Throws Error for fewer than 2 points.
std::vector<double> nn_distances(const std::vector<Eigen::Vector2d>& points);
std::vector<double> nn_distances(const PointCloud& points);

inline constexpr std::size_t kBruteForceLimit = 512;

/// Bidirectional Chamfer distance in meters: the two directed mean
/// nearest-point distances (unsquared), averaged. Throws on an empty cloud.
double chamfer_distance(const PointCloud& m, const PointCloud& gt);

/// Estimated/ground-truth position pairs matched by timestamp.
struct PoseMatches {
  std::vector<std::pair<Eigen::Vector3d, Eigen::Vector3d>> pairs;  // (est, gt)
  std::size_t matched = 0;
  std::size_t dropped = 0;  // estimated samples without a close-enough gt sample
};

/// Matches each estimated sample to the gt sample nearest in time when
/// |dt| <= max_dt. Throws Error when no sample matches (disjoint time ranges).
PoseMatches associate_poses(const Trajectory& est, const Trajectory& gt, double max_dt);

enum class AlignMode { none, translation, rigid };

const char* to_string(AlignMode mode);
std::optional<AlignMode> align_mode_from_string(std::string_view name);

struct AlignResult {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();
  std::vector<Eigen::Vector3d> transformed;  // rotation * est + translation
  double rmse = 0.0;                         // residual vs gt after transform
};

/// Least-squares alignment of the estimated positions onto ground truth.
/// none: identity. translation: centroid shift. rigid: closed-form
/// rotation+translation via SVD of the cross-covariance (Umeyama, no scale).
/// Throws Error on degenerate geometry for rigid mode.
AlignResult rigid_align(const std::vector<std::pair<Eigen::Vector3d, Eigen::Vector3d>>& pairs,
                        AlignMode mode);

/// Area of the planar convex hull (0 for collinear or fewer than 3 points).
double convex_hull_area(const std::vector<Eigen::Vector2d>& points);

double rmse_of(const std::vector<double>& values);
double median_of(std::vector<double> values);

}  // namespace fieldkpi
