#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include <Eigen/Dense>

namespace zeus {

constexpr double kPi = 3.14159265358979323846;

/// Wrap an angle to (-pi, pi].
inline double normalize_angle(double theta) {
  if (!std::isfinite(theta)) {
    throw std::invalid_argument("normalize_angle: non-finite angle");
  }
  double r = std::remainder(theta, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

/// Shortest signed difference a - b, wrapped to (-pi, pi].
inline double angle_diff(double a, double b) { return normalize_angle(a - b); }

struct Pose2D {
  double x{0.0};      // m
  double y{0.0};      // m
  double theta{0.0};  // rad, (-pi, pi]

  Pose2D() = default;
  Pose2D(double x_, double y_, double theta_) : x(x_), y(y_), theta(normalize_angle(theta_)) {}

  bool operator==(const Pose2D&) const = default;
};

/// Planar kinematic state: position, speed, heading.
struct VehicleState {
  double x{0.0};      // m
  double y{0.0};      // m
  double v{0.0};      // m/s
  double theta{0.0};  // rad

  Eigen::Vector4d as_vector() const { return {x, y, v, theta}; }
  static VehicleState from_vector(const Eigen::Vector4d& z) {
    return VehicleState{z(0), z(1), z(2), normalize_angle(z(3))};
  }
};

/// Longitudinal acceleration and steering angle.
struct ControlInput {
  double a{0.0};      // m/s^2
  double delta{0.0};  // rad
};

struct Point3 {
  double x{0.0};
  double y{0.0};
  double z{0.0};

  Eigen::Vector3d as_vector() const { return {x, y, z}; }
  static Point3 from_vector(const Eigen::Vector3d& v) { return {v.x(), v.y(), v.z()}; }

  bool operator==(const Point3&) const = default;
};

inline double distance(const Point3& a, const Point3& b) {
  return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) +
                   (a.z - b.z) * (a.z - b.z));
}

/// Proper rigid transform (rotation + translation), mapping points between frames.
struct RigidTransform {
  Eigen::Matrix3d rotation{Eigen::Matrix3d::Identity()};
  Eigen::Vector3d translation{Eigen::Vector3d::Zero()};

  /// True when rotation is orthonormal with determinant +1.
  bool is_valid(double tol = 1e-9) const {
    const Eigen::Matrix3d err = rotation * rotation.transpose() - Eigen::Matrix3d::Identity();
    return err.cwiseAbs().maxCoeff() <= tol && std::abs(rotation.determinant() - 1.0) <= tol;
  }

  Point3 apply(const Point3& p) const {
    return Point3::from_vector(rotation * p.as_vector() + translation);
  }

  RigidTransform inverse() const {
    RigidTransform inv;
    inv.rotation = rotation.transpose();
    inv.translation = -inv.rotation * translation;
    return inv;
  }

  /// Composition: (this * other).apply(p) == this->apply(other.apply(p)).
  RigidTransform operator*(const RigidTransform& other) const {
    RigidTransform out;
    out.rotation = rotation * other.rotation;
    out.translation = rotation * other.translation + translation;
    return out;
  }
};

inline Point3 transform_point(const RigidTransform& t, const Point3& p) { return t.apply(p); }

struct Pixel {
  double u{0.0};
  double v{0.0};
};

/// Pinhole camera: intrinsic matrix K plus the extrinsic transform that
/// maps vehicle-frame points into the camera frame (z forward).
struct CameraModel {
  Eigen::Matrix3d intrinsic{Eigen::Matrix3d::Identity()};
  RigidTransform extrinsic;  // vehicle frame -> camera frame
  int width{1280};
  int height{720};

  bool is_valid() const {
    const Eigen::Matrix3d& K = intrinsic;
    return K(0, 0) > 0.0 && K(1, 1) > 0.0 && K(2, 2) == 1.0 && K(1, 0) == 0.0 &&
           K(2, 0) == 0.0 && K(2, 1) == 0.0 && extrinsic.is_valid(1e-9);
  }

  double focal() const { return intrinsic(0, 0); }

  bool in_image(const Pixel& px) const {
    return px.u >= 0.0 && px.u < width && px.v >= 0.0 && px.v < height;
  }
};

/// Perspective projection of a camera-frame point. Empty when at or behind
/// the image plane (z <= 0).
inline std::optional<Pixel> project_to_image(const Point3& p, const CameraModel& cam) {
  if (p.z <= 0.0) return std::nullopt;
  const Eigen::Vector3d uvw = cam.intrinsic * p.as_vector();
  return Pixel{uvw.x() / p.z, uvw.y() / p.z};
}

enum class ObjectClass : std::uint8_t { Pedestrian, Car, Cyclist, Sign, Unknown };

inline const char* to_string(ObjectClass c) {
  switch (c) {
    case ObjectClass::Pedestrian: return "pedestrian";
    case ObjectClass::Car: return "car";
    case ObjectClass::Cyclist: return "cyclist";
    case ObjectClass::Sign: return "sign";
    case ObjectClass::Unknown: return "unknown";
  }
  return "unknown";
}

/// Axis-aligned 2D detection in pixel coordinates.
struct BoundingBox2D {
  double cx{0.0};
  double cy{0.0};
  double w{0.0};
  double h{0.0};
  ObjectClass label{ObjectClass::Unknown};
  double confidence{0.0};
  int id{-1};  // detector-assigned, used to match detections to outputs

  bool contains(const Pixel& px) const {
    return px.u >= cx - 0.5 * w && px.u <= cx + 0.5 * w && px.v >= cy - 0.5 * h &&
           px.v <= cy + 0.5 * h;
  }

  bool is_valid() const { return w > 0.0 && h > 0.0 && confidence >= 0.0 && confidence <= 1.0; }
};

}  // namespace zeus
