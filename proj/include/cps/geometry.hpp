#ifndef CPS_GEOMETRY_HPP
#define CPS_GEOMETRY_HPP

#include <Eigen/Dense>
#include <utility>
#include <vector>

namespace cps {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Pinhole sensor with two-term radial distortion. Units: pixels.
struct SensorModel {
  double fx = 0, fy = 0;
  double cx = 0, cy = 0;
  double k1 = 0, k2 = 0;
  int width = 0, height = 0;

  Mat3 k_matrix() const {
    Mat3 k;
    k << fx, 0, cx, 0, fy, cy, 0, 0, 1;
    return k;
  }
  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

/// Rigid transform mapping world coordinates into the sensor frame.
struct Pose {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  /// Throws when R is not a proper rotation within 1e-9.
  void validate() const;
  Pose inverse() const;
  Vec3 apply(const Vec3& world) const { return rotation * world + translation; }
};

struct Ray {
  Vec3 origin;
  Vec3 direction;  // unit length
};

/// 3x3 projective map between planes; h33 normalized to 1 when nonzero.
struct Homography {
  Mat3 m = Mat3::Identity();

  Homography() = default;
  /// Normalizes and checks rank 3; throws numeric_error when singular.
  explicit Homography(const Mat3& raw);
  Vec2 apply(const Vec2& p) const;
  Homography inverse() const;
};

// Rotation helpers.
Mat3 rodrigues(const Vec3& axis_angle);
Vec3 rotation_to_axis_angle(const Mat3& r);
/// Nearest proper rotation in the Frobenius sense (via SVD).
Mat3 nearest_rotation(const Mat3& m);

/// Forward radial distortion on normalized coordinates.
Vec2 distort_normalized(double k1, double k2, const Vec2& undistorted);

/// Inverse of distort_normalized by fixed-point iteration.
/// Converges to 1e-12 on the normalized update or throws numeric_error after 50 iterations.
Vec2 undistort_normalized(double k1, double k2, const Vec2& distorted);

/// World point -> distorted pixel. Throws std::invalid_argument for non-positive depth.
Vec2 project(const SensorModel& model, const Pose& pose, const Vec3& point);

/// Distorted pixel -> world-frame viewing ray.
Ray pixel_to_ray(const SensorModel& model, const Pose& pose, const Vec2& pixel);

/// DLT with Hartley normalization. Pairs map source -> target.
/// Throws numeric_error for degenerate configurations.
Homography estimate_homography_dlt(const std::vector<std::pair<Vec2, Vec2>>& pairs);

struct TriangulationResult {
  Vec3 point;  // midpoint of the common perpendicular
  double gap;  // distance between the two closest points, meters
};

/// Midpoint triangulation of two skew rays; symmetric in argument order.
/// Throws numeric_error when |d1.d2| >= 1 - 1e-12 (near-parallel).
TriangulationResult triangulate_midpoint(const Ray& a, const Ray& b);

/// Transform mapping projector-frame coordinates into the camera frame.
Pose relative_pose(const Pose& pose_cam, const Pose& pose_proj);

}  // namespace cps

#endif
