#include "cps/geometry.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "cps/io.hpp"

namespace cps {

void SensorModel::validate() const {
  if (!(fx > 0) || !(fy > 0))
    throw std::invalid_argument("SensorModel: focal lengths must be positive");
  if (width < 1 || height < 1)
    throw std::invalid_argument("SensorModel: image size must be >= 1");
  if (!(cx >= 0 && cx < width) || !(cy >= 0 && cy < height))
    throw std::invalid_argument("SensorModel: principal point outside sensor");
  if (!std::isfinite(k1) || !std::isfinite(k2))
    throw std::invalid_argument("SensorModel: non-finite distortion");
}

void Pose::validate() const {
  const double ortho = (rotation.transpose() * rotation - Mat3::Identity()).cwiseAbs().maxCoeff();
  if (ortho > 1e-9) throw std::invalid_argument("Pose: rotation not orthonormal");
  if (std::abs(rotation.determinant() - 1.0) > 1e-9)
    throw std::invalid_argument("Pose: rotation determinant != +1");
}

Pose Pose::inverse() const {
  Pose inv;
  inv.rotation = rotation.transpose();
  inv.translation = -(rotation.transpose() * translation);
  return inv;
}

Homography::Homography(const Mat3& raw) : m(raw) {
  Eigen::JacobiSVD<Mat3> svd(m);
  const auto& sv = svd.singularValues();
  if (sv(2) <= sv(0) * 1e-12)
    throw numeric_error("Homography: matrix is rank-deficient");
  if (std::abs(m(2, 2)) > 1e-12) m /= m(2, 2);
}

Vec2 Homography::apply(const Vec2& p) const {
  const Vec3 q = m * Vec3(p.x(), p.y(), 1.0);
  if (q.z() == 0.0) throw numeric_error("Homography: point maps to infinity");
  return {q.x() / q.z(), q.y() / q.z()};
}

Homography Homography::inverse() const { return Homography(Mat3(m.inverse())); }

Mat3 rodrigues(const Vec3& axis_angle) {
  const double theta = axis_angle.norm();
  if (theta < 1e-12) return Mat3::Identity();
  const Vec3 u = axis_angle / theta;
  Mat3 k;
  k << 0, -u.z(), u.y(), u.z(), 0, -u.x(), -u.y(), u.x(), 0;
  return Mat3::Identity() + std::sin(theta) * k + (1.0 - std::cos(theta)) * k * k;
}

Vec3 rotation_to_axis_angle(const Mat3& r) {
  const double cos_theta = std::clamp((r.trace() - 1.0) / 2.0, -1.0, 1.0);
  const double theta = std::acos(cos_theta);
  if (theta < 1e-12) return Vec3::Zero();
  if (theta > M_PI - 1e-6) {
    // Near pi: extract the axis from the symmetric part.
    const Mat3 s = (r + Mat3::Identity()) / 2.0;
    Eigen::Index i;
    s.diagonal().maxCoeff(&i);
    const Vec3 axis = s.col(i) / std::sqrt(s(i, i));
    return axis * theta;
  }
  Vec3 axis(r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1));
  return axis * (theta / (2.0 * std::sin(theta)));
}

Mat3 nearest_rotation(const Mat3& m) {
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 r = svd.matrixU() * svd.matrixV().transpose();
  if (r.determinant() < 0) {
    Mat3 flip = Mat3::Identity();
    flip(2, 2) = -1;
    r = svd.matrixU() * flip * svd.matrixV().transpose();
  }
  return r;
}

Vec2 distort_normalized(double k1, double k2, const Vec2& p) {
  const double r2 = p.squaredNorm();
  return p * (1.0 + k1 * r2 + k2 * r2 * r2);
}

Vec2 undistort_normalized(double k1, double k2, const Vec2& distorted) {
  Vec2 p = distorted;
  for (int it = 0; it < 50; ++it) {
    const double r2 = p.squaredNorm();
    const double factor = 1.0 + k1 * r2 + k2 * r2 * r2;
    if (!(factor > 1e-8) || !std::isfinite(factor))
      throw numeric_error("undistort_normalized: iteration diverged");
    const Vec2 next = distorted / factor;
    const double step = (next - p).cwiseAbs().maxCoeff();
    p = next;
    if (step < 1e-12) return p;
  }
  throw numeric_error("undistort_normalized: no convergence after 50 iterations");
}

Vec2 project(const SensorModel& model, const Pose& pose, const Vec3& point) {
  const Vec3 s = pose.apply(point);
  if (!(s.z() > 0)) throw std::invalid_argument("project: point has non-positive depth");
  const Vec2 d = distort_normalized(model.k1, model.k2, Vec2(s.x() / s.z(), s.y() / s.z()));
  return {model.fx * d.x() + model.cx, model.fy * d.y() + model.cy};
}

Ray pixel_to_ray(const SensorModel& model, const Pose& pose, const Vec2& pixel) {
  const Vec2 distorted((pixel.x() - model.cx) / model.fx, (pixel.y() - model.cy) / model.fy);
  const Vec2 n = undistort_normalized(model.k1, model.k2, distorted);
  const Mat3 rt = pose.rotation.transpose();
  Ray ray;
  ray.origin = -(rt * pose.translation);
  ray.direction = (rt * Vec3(n.x(), n.y(), 1.0)).normalized();
  return ray;
}

Homography estimate_homography_dlt(const std::vector<std::pair<Vec2, Vec2>>& pairs) {
  const std::size_t n = pairs.size();
  if (n < 4) throw std::invalid_argument("estimate_homography_dlt: need at least 4 pairs");

  // Hartley normalization: centroid to origin, mean distance sqrt(2).
  auto normalizer = [&](bool target) {
    Vec2 centroid = Vec2::Zero();
    for (const auto& pr : pairs) centroid += target ? pr.second : pr.first;
    centroid /= static_cast<double>(n);
    double mean_dist = 0;
    for (const auto& pr : pairs) mean_dist += ((target ? pr.second : pr.first) - centroid).norm();
    mean_dist /= static_cast<double>(n);
    const double scale = mean_dist > 1e-15 ? std::sqrt(2.0) / mean_dist : 1.0;
    Mat3 t;
    t << scale, 0, -scale * centroid.x(), 0, scale, -scale * centroid.y(), 0, 0, 1;
    return t;
  };
  const Mat3 t_src = normalizer(false);
  const Mat3 t_dst = normalizer(true);

  Eigen::MatrixXd a(2 * n, 9);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 s = t_src * Vec3(pairs[i].first.x(), pairs[i].first.y(), 1.0);
    const Vec3 d = t_dst * Vec3(pairs[i].second.x(), pairs[i].second.y(), 1.0);
    const auto r0 = static_cast<Eigen::Index>(2 * i);
    a.row(r0) << 0, 0, 0, -s.x(), -s.y(), -1, d.y() * s.x(), d.y() * s.y(), d.y();
    a.row(r0 + 1) << s.x(), s.y(), 1, 0, 0, 0, -d.x() * s.x(), -d.x() * s.y(), -d.x();
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  // Rank 8 is required for a unique solution; collinear sources collapse it further.
  if (sv(7) <= sv(0) * 1e-10)
    throw numeric_error("estimate_homography_dlt: degenerate configuration");
  const Eigen::VectorXd h = svd.matrixV().col(8);
  Mat3 hn;
  hn << h(0), h(1), h(2), h(3), h(4), h(5), h(6), h(7), h(8);
  return Homography(Mat3(t_dst.inverse() * hn * t_src));
}

TriangulationResult triangulate_midpoint(const Ray& a, const Ray& b) {
  const double d12 = a.direction.dot(b.direction);
  if (std::abs(d12) >= 1.0 - 1e-12)
    throw numeric_error("triangulate_midpoint: rays are near-parallel");
  const Vec3 w = a.origin - b.origin;
  const double wa = w.dot(a.direction);
  const double wb = w.dot(b.direction);
  const double denom = 1.0 - d12 * d12;
  // Normal equations of the common perpendicular, written so that swapping
  // the arguments produces bit-identical results.
  const double ta = (-wa + d12 * wb) / denom;
  const double tb = (wb + d12 * (-wa)) / denom;
  const Vec3 pa = a.origin + ta * a.direction;
  const Vec3 pb = b.origin + tb * b.direction;
  TriangulationResult res;
  res.point = Vec3(0.5 * (pa.x() + pb.x()), 0.5 * (pa.y() + pb.y()), 0.5 * (pa.z() + pb.z()));
  res.gap = (pa - pb).norm();
  return res;
}

Pose relative_pose(const Pose& pose_cam, const Pose& pose_proj) {
  Pose rel;
  rel.rotation = pose_cam.rotation * pose_proj.rotation.transpose();
  rel.translation = pose_cam.translation - rel.rotation * pose_proj.translation;
  return rel;
}

}  // namespace cps
