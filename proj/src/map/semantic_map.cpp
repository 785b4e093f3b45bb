#include "zeus/map/semantic_map.hpp"

#include <algorithm>
#include <cmath>

namespace zeus::map {

const char* to_string(Maneuver m) {
  switch (m) {
    case Maneuver::Straight: return "straight";
    case Maneuver::Left: return "left";
    case Maneuver::Right: return "right";
    case Maneuver::LaneChangeLeft: return "lane_change_left";
    case Maneuver::LaneChangeRight: return "lane_change_right";
  }
  return "straight";
}

std::optional<Maneuver> maneuver_from_string(const std::string& s) {
  if (s == "straight") return Maneuver::Straight;
  if (s == "left") return Maneuver::Left;
  if (s == "right") return Maneuver::Right;
  if (s == "lane_change_left") return Maneuver::LaneChangeLeft;
  if (s == "lane_change_right") return Maneuver::LaneChangeRight;
  return std::nullopt;
}

std::vector<double> cumulative_arc_length(const std::vector<Pose2D>& pts) {
  std::vector<double> s(pts.size(), 0.0);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    s[i] = s[i - 1] + std::hypot(pts[i].x - pts[i - 1].x, pts[i].y - pts[i - 1].y);
  }
  return s;
}

std::vector<Pose2D> resample_centerline(const std::vector<Pose2D>& pts, double max_spacing) {
  if (pts.size() < 2) return pts;
  std::vector<Pose2D> out;
  out.reserve(pts.size());
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Pose2D& a = pts[i];
    const Pose2D& b = pts[i + 1];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    const int parts = std::max(1, static_cast<int>(std::ceil(len / max_spacing - 1e-12)));
    for (int k = 0; k < parts; ++k) {
      const double t = static_cast<double>(k) / parts;
      const double heading = std::atan2(b.y - a.y, b.x - a.x);
      out.emplace_back(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y), k == 0 ? a.theta : heading);
    }
  }
  out.push_back(pts.back());
  return out;
}

namespace {

// Heading of each point taken from the direction to the next point; the
// last point keeps the incoming direction.
void refresh_headings(std::vector<Pose2D>& pts) {
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    pts[i].theta = std::atan2(pts[i + 1].y - pts[i].y, pts[i + 1].x - pts[i].x);
  }
  if (pts.size() >= 2) pts.back().theta = pts[pts.size() - 2].theta;
}

bool polygon_simple_enough(const std::vector<Eigen::Vector2d>& poly) {
  return poly.size() >= 3;
}

bool point_in_polygon(const std::vector<Eigen::Vector2d>& poly, const Eigen::Vector2d& p) {
  bool inside = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const bool crosses = (poly[i].y() > p.y()) != (poly[j].y() > p.y());
    if (crosses) {
      const double x_at = poly[j].x() + (poly[i].x() - poly[j].x()) * (p.y() - poly[j].y()) /
                                            (poly[i].y() - poly[j].y());
      if (p.x() < x_at) inside = !inside;
    }
  }
  return inside;
}

}  // namespace

Pose2D RoadSegment::pose_at(double at_s) const {
  if (centerline.empty()) throw MapError("pose_at on empty centerline");
  if (at_s <= s.front()) return centerline.front();
  if (at_s >= s.back()) return centerline.back();
  const auto it = std::upper_bound(s.begin(), s.end(), at_s);
  const std::size_t i = static_cast<std::size_t>(it - s.begin());
  const double t = (at_s - s[i - 1]) / (s[i] - s[i - 1]);
  const Pose2D& a = centerline[i - 1];
  const Pose2D& b = centerline[i];
  return Pose2D{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y),
                normalize_angle(a.theta + t * angle_diff(b.theta, a.theta))};
}

double RoadSegment::accumulated_heading_change() const {
  double total = 0.0;
  for (std::size_t i = 1; i < centerline.size(); ++i) {
    total += std::abs(angle_diff(centerline[i].theta, centerline[i - 1].theta));
  }
  return total;
}

bool Crosswalk::contains(const Eigen::Vector2d& p) const { return point_in_polygon(polygon, p); }

Eigen::Vector2d ParkingSpot::centroid() const {
  // Area-weighted polygon centroid; falls back to vertex mean for degenerate area.
  double area2 = 0.0;
  Eigen::Vector2d c{0.0, 0.0};
  for (std::size_t i = 0, j = polygon.size() - 1; i < polygon.size(); j = i++) {
    const double cross = polygon[j].x() * polygon[i].y() - polygon[i].x() * polygon[j].y();
    area2 += cross;
    c += (polygon[j] + polygon[i]) * cross;
  }
  if (std::abs(area2) < 1e-12) {
    c.setZero();
    for (const auto& p : polygon) c += p;
    return c / static_cast<double>(polygon.size());
  }
  return c / (3.0 * area2);
}

bool ParkingSpot::contains(const Eigen::Vector2d& p) const { return point_in_polygon(polygon, p); }

SemanticMap SemanticMap::build(std::vector<RoadSegment> segments,
                               std::vector<Intersection> intersections,
                               std::vector<TrafficLightSite> lights,
                               std::vector<Crosswalk> crosswalks,
                               std::vector<StopLine> stop_lines,
                               std::vector<ParkingSpot> parking,
                               std::vector<RailroadCrossing> railroads) {
  SemanticMap m;
  m.segments_ = std::move(segments);
  m.intersections_ = std::move(intersections);
  m.lights_ = std::move(lights);
  m.crosswalks_ = std::move(crosswalks);
  m.stop_lines_ = std::move(stop_lines);
  m.parking_ = std::move(parking);
  m.railroads_ = std::move(railroads);

  for (auto& seg : m.segments_) {
    if (seg.centerline.size() < 2) {
      throw MapError("segment '" + seg.id + "': centerline needs at least 2 points");
    }
    seg.centerline = resample_centerline(seg.centerline, RoadSegment::kMaxSpacing);
    refresh_headings(seg.centerline);
    seg.s = cumulative_arc_length(seg.centerline);
    for (std::size_t i = 1; i < seg.s.size(); ++i) {
      if (seg.s[i] <= seg.s[i - 1]) {
        throw MapError("segment '" + seg.id + "': non-monotonic centerline at point " +
                       std::to_string(i));
      }
    }
  }
  m.reindex();
  m.validate();
  return m;
}

void SemanticMap::reindex() {
  segment_index_.clear();
  intersection_index_.clear();
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    if (!segment_index_.emplace(segments_[i].id, i).second) {
      throw MapError("duplicate segment id '" + segments_[i].id + "'");
    }
  }
  for (std::size_t i = 0; i < intersections_.size(); ++i) {
    if (!intersection_index_.emplace(intersections_[i].id, i).second) {
      throw MapError("duplicate intersection id '" + intersections_[i].id + "'");
    }
  }
}

void SemanticMap::validate() const {
  if (segments_.empty()) throw MapError("map has no segments");
  for (const auto& seg : segments_) {
    for (const auto& succ : seg.successors) {
      if (!has_segment(succ.id)) {
        throw MapError("segment '" + seg.id + "': dangling successor '" + succ.id + "'");
      }
    }
  }
  for (const auto& in : intersections_) {
    if (in.entering.empty() || in.exiting.empty()) {
      throw MapError("intersection '" + in.id + "': entering/exiting must be non-empty");
    }
    for (const auto& id : in.entering) {
      if (!has_segment(id)) {
        throw MapError("intersection '" + in.id + "': dangling entering segment '" + id + "'");
      }
    }
    for (const auto& id : in.exiting) {
      if (!has_segment(id)) {
        throw MapError("intersection '" + in.id + "': dangling exiting segment '" + id + "'");
      }
    }
  }
  for (const auto& l : lights_) {
    if (!has_segment(l.segment)) {
      throw MapError("light '" + l.id + "': dangling segment '" + l.segment + "'");
    }
    if (!std::isfinite(l.position.x) || !std::isfinite(l.position.y) ||
        !std::isfinite(l.position.z)) {
      throw MapError("light '" + l.id + "': non-finite position");
    }
  }
  for (const auto& c : crosswalks_) {
    if (!polygon_simple_enough(c.polygon)) {
      throw MapError("crosswalk '" + c.id + "': polygon needs at least 3 vertices");
    }
    if (!has_segment(c.segment)) {
      throw MapError("crosswalk '" + c.id + "': dangling segment '" + c.segment + "'");
    }
  }
  for (const auto& sl : stop_lines_) {
    if (!has_segment(sl.segment)) {
      throw MapError("stop line '" + sl.id + "': dangling segment '" + sl.segment + "'");
    }
    if (!sl.intersection.empty() && !has_intersection(sl.intersection)) {
      throw MapError("stop line '" + sl.id + "': dangling intersection '" + sl.intersection + "'");
    }
  }
  for (const auto& p : parking_) {
    if (!polygon_simple_enough(p.polygon)) {
      throw MapError("parking spot '" + p.id + "': polygon needs at least 3 vertices");
    }
  }
  for (const auto& r : railroads_) {
    if (!has_segment(r.segment)) {
      throw MapError("railroad crossing: dangling segment '" + r.segment + "'");
    }
  }
}

const RoadSegment& SemanticMap::segment(const std::string& id) const {
  const auto it = segment_index_.find(id);
  if (it == segment_index_.end()) throw MapError("unknown segment '" + id + "'");
  return segments_[it->second];
}

const Intersection& SemanticMap::intersection(const std::string& id) const {
  const auto it = intersection_index_.find(id);
  if (it == intersection_index_.end()) throw MapError("unknown intersection '" + id + "'");
  return intersections_[it->second];
}

std::optional<LocateResult> SemanticMap::locate(const Eigen::Vector2d& p,
                                                double max_distance) const {
  std::optional<LocateResult> best;
  for (const auto& seg : segments_) {
    for (std::size_t i = 0; i + 1 < seg.centerline.size(); ++i) {
      const Eigen::Vector2d a{seg.centerline[i].x, seg.centerline[i].y};
      const Eigen::Vector2d b{seg.centerline[i + 1].x, seg.centerline[i + 1].y};
      const Eigen::Vector2d ab = b - a;
      const double len2 = ab.squaredNorm();
      double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
      t = std::clamp(t, 0.0, 1.0);
      const Eigen::Vector2d q = a + t * ab;
      const double d = (p - q).norm();
      if (!best || d < best->distance) {
        // Signed offset: positive on the left of the travel direction.
        const double cross = ab.x() * (p.y() - a.y()) - ab.y() * (p.x() - a.x());
        LocateResult r;
        r.segment = seg.id;
        r.s = seg.s[i] + t * (seg.s[i + 1] - seg.s[i]);
        r.distance = d;
        r.lateral = cross >= 0.0 ? d : -d;
        best = r;
      }
    }
  }
  if (!best || best->distance > max_distance) return std::nullopt;
  return best;
}

RoadSegment SemanticMap::shift_centerline(const std::string& segment_id, double offset,
                                          double s_begin, double s_end) const {
  const RoadSegment& src = segment(segment_id);
  if (std::abs(offset) >= src.lane_width) {
    throw MapError("shift_centerline: offset exceeds lane width");
  }
  constexpr double kBlend = 2.0;
  RoadSegment out = src;
  for (std::size_t i = 0; i < out.centerline.size(); ++i) {
    const double si = src.s[i];
    if (si < s_begin || si > s_end) continue;
    // Blend only at range ends that splice into an unshifted stretch; a range
    // end at the segment boundary keeps full displacement.
    double w = 1.0;
    if (s_begin > src.s.front() + 1e-9) w = std::min(w, (si - s_begin) / kBlend);
    if (s_end < src.s.back() - 1e-9) w = std::min(w, (s_end - si) / kBlend);
    w = std::clamp(w, 0.0, 1.0);
    const double th = src.centerline[i].theta;
    out.centerline[i].x += -std::sin(th) * offset * w;
    out.centerline[i].y += std::cos(th) * offset * w;
  }
  refresh_headings(out.centerline);
  out.s = cumulative_arc_length(out.centerline);
  for (std::size_t i = 1; i < out.s.size(); ++i) {
    if (out.s[i] <= out.s[i - 1]) {
      throw MapError("shift_centerline: produced non-monotonic centerline");
    }
  }
  return out;
}

void SemanticMap::replace_segment(const RoadSegment& seg) {
  const auto it = segment_index_.find(seg.id);
  if (it == segment_index_.end()) throw MapError("replace_segment: unknown '" + seg.id + "'");
  segments_[it->second] = seg;
  validate();
}

}  // namespace zeus::map
