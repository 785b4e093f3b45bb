#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zeus/core/types.hpp"

namespace zeus::map {

enum class Maneuver : std::uint8_t { Straight, Left, Right, LaneChangeLeft, LaneChangeRight };

const char* to_string(Maneuver m);
std::optional<Maneuver> maneuver_from_string(const std::string& s);

inline bool is_lane_change(Maneuver m) {
  return m == Maneuver::LaneChangeLeft || m == Maneuver::LaneChangeRight;
}

struct Successor {
  std::string id;
  Maneuver maneuver{Maneuver::Straight};

  bool operator==(const Successor&) const = default;
};

/// One directed road segment. The centerline is stored as poses with
/// cumulative arc length, resampled on load to at most `kMaxSpacing`.
struct RoadSegment {
  std::string id;
  std::vector<Pose2D> centerline;
  std::vector<double> s;  // cumulative arc length, s[0] == 0, strictly increasing
  double lane_width{3.5};
  std::vector<Successor> successors;
  bool bike_lane{false};

  static constexpr double kMaxSpacing = 0.5;

  double length() const { return s.empty() ? 0.0 : s.back(); }

  /// Pose at arc length `at_s`, linearly interpolated and clamped to the ends.
  Pose2D pose_at(double at_s) const;

  /// Total absolute heading change along the centerline.
  double accumulated_heading_change() const;

  bool operator==(const RoadSegment&) const = default;
};

struct Intersection {
  std::string id;
  Pose2D waypoint;
  std::vector<std::string> entering;  // segment ids that end at this intersection
  std::vector<std::string> exiting;   // segment ids that start at this intersection

  bool operator==(const Intersection&) const = default;
};

struct TrafficLightSite {
  std::string id;
  Point3 position;     // map frame
  std::string segment;  // approach segment this light governs

  bool operator==(const TrafficLightSite&) const = default;
};

struct Crosswalk {
  std::string id;
  std::vector<Eigen::Vector2d> polygon;
  std::string segment;
  double stop_line_s{0.0};

  bool contains(const Eigen::Vector2d& p) const;

  bool operator==(const Crosswalk&) const = default;
};

struct StopLine {
  std::string id;
  std::string segment;
  double s{0.0};
  std::string intersection;  // optional; empty when not tied to one

  bool operator==(const StopLine&) const = default;
};

struct ParkingSpot {
  std::string id;
  std::vector<Eigen::Vector2d> polygon;
  Pose2D entry_pose;

  Eigen::Vector2d centroid() const;
  bool contains(const Eigen::Vector2d& p) const;

  bool operator==(const ParkingSpot&) const = default;
};

struct RailroadCrossing {
  std::string segment;
  double s{0.0};

  bool operator==(const RailroadCrossing&) const = default;
};

struct MapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LocateResult {
  std::string segment;
  double s{0.0};
  double lateral{0.0};  // signed, positive left of travel direction
  double distance{0.0};
};

class SemanticMap {
 public:
  static constexpr int kFormatVersion = 1;

  /// Validates cross references and centerline monotonicity; resamples
  /// centerlines. Throws MapError on any violation.
  static SemanticMap build(std::vector<RoadSegment> segments,
                           std::vector<Intersection> intersections,
                           std::vector<TrafficLightSite> lights,
                           std::vector<Crosswalk> crosswalks,
                           std::vector<StopLine> stop_lines,
                           std::vector<ParkingSpot> parking,
                           std::vector<RailroadCrossing> railroads);

  const std::vector<RoadSegment>& segments() const { return segments_; }
  const std::vector<Intersection>& intersections() const { return intersections_; }
  const std::vector<TrafficLightSite>& lights() const { return lights_; }
  const std::vector<Crosswalk>& crosswalks() const { return crosswalks_; }
  const std::vector<StopLine>& stop_lines() const { return stop_lines_; }
  const std::vector<ParkingSpot>& parking() const { return parking_; }
  const std::vector<RailroadCrossing>& railroads() const { return railroads_; }

  bool has_segment(const std::string& id) const { return segment_index_.count(id) > 0; }
  const RoadSegment& segment(const std::string& id) const;
  const Intersection& intersection(const std::string& id) const;
  bool has_intersection(const std::string& id) const { return intersection_index_.count(id) > 0; }

  /// Nearest segment to a planar point. Empty when the point is farther than
  /// `max_distance` from every centerline.
  std::optional<LocateResult> locate(const Eigen::Vector2d& p, double max_distance = 10.0) const;

  /// Copy of `segment_id` with the centerline displaced laterally by `offset`
  /// (positive = left) over [s_begin, s_end], blended linearly over 2 m at
  /// both ends of the range. Throws MapError when |offset| >= lane width.
  RoadSegment shift_centerline(const std::string& segment_id, double offset, double s_begin,
                               double s_end) const;

  /// Replace a segment (e.g. with a shifted centerline). Re-validates.
  void replace_segment(const RoadSegment& seg);

  bool operator==(const SemanticMap&) const = default;

 private:
  SemanticMap() = default;
  void reindex();
  void validate() const;

  std::vector<RoadSegment> segments_;
  std::vector<Intersection> intersections_;
  std::vector<TrafficLightSite> lights_;
  std::vector<Crosswalk> crosswalks_;
  std::vector<StopLine> stop_lines_;
  std::vector<ParkingSpot> parking_;
  std::vector<RailroadCrossing> railroads_;
  std::map<std::string, std::size_t> segment_index_;
  std::map<std::string, std::size_t> intersection_index_;
};

/// Recompute cumulative arc length from the centerline coordinates.
std::vector<double> cumulative_arc_length(const std::vector<Pose2D>& pts);

/// Subdivide edges longer than `max_spacing` into equal parts. Idempotent.
std::vector<Pose2D> resample_centerline(const std::vector<Pose2D>& pts, double max_spacing);

/// Parse a JSON map document. Throws MapError with the offending field path.
SemanticMap load_map(const std::string& json_text);
SemanticMap load_map_file(const std::string& path);

/// Serialize to the versioned JSON schema. load_map(save_map(m)) == m.
std::string save_map(const SemanticMap& m);

}  // namespace zeus::map
