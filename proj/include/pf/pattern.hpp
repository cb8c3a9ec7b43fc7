#pragma once

#include <optional>
#include <vector>

#include "pf/configuration.hpp"

namespace pf {

class Pattern {
 public:
  explicit Pattern(const std::vector<Point>& pts, const Tolerance& tol = default_tolerance());

  const std::vector<Point>& points() const { return points_; }
  size_t size() const { return points_.size(); }
  const Configuration& config() const { return config_; }
  const Circle& sec() const { return config_.sec(); }
  const Point& center() const { return config_.center(); }
  int rho() const { return rho_; }
  bool degenerate() const { return config_.radius() <= 0.0; }

  // pattern scaled to unit SEC about the origin
  const std::vector<Point>& unit() const { return unit_; }
  // distinct normalized radii, increasing; 0 present iff c(F) is in F
  const std::vector<double>& level_radii() const { return radii_; }
  int center_multiplicity() const { return config_.center_multiplicity(); }
  int max_multiplicity() const { return max_mult_; }
  bool has_interior() const;
  // clockwise gaps between consecutive distinct angles of the boundary points
  const std::vector<double>& boundary_gaps() const { return gaps_; }
  // unit-frame polar angle of a boundary point of minimum view
  double min_view_boundary_angle() const { return min_view_angle_; }

 private:
  std::vector<Point> points_;
  Configuration config_;
  int rho_ = 1;
  std::vector<Point> unit_;
  std::vector<double> radii_;
  int max_mult_ = 1;
  std::vector<double> gaps_;
  double min_view_angle_ = 0.0;
};

// radii are normalized by δ(C(R))
struct ParkingGeometry {
  Circle c_r;
  Circle c_top;
  Circle c_bottom;
  double top = 0.5;
  double bottom = 0.25;

  bool in_ann(double rn, const Tolerance& tol = default_tolerance()) const;
  bool on_top(double rn, const Tolerance& tol = default_tolerance()) const;
};

ParkingGeometry parking_circles(const Configuration& R, const Pattern& F);

struct ForbiddenSet {
  Point center;
  double radius = 0.0;
  std::vector<double> angles;
  Tolerance tol;

  bool forbidden(double theta) const;
  bool forbidden(const Point& q) const;
  // smallest clockwise offset in (eps, 2pi) to a forbidden angle; infinity when none
  double next_cw(double theta) const;
  std::vector<double> sorted() const;
};

ForbiddenSet forbidden_points(const Circle& circle, const std::vector<Point>& occupied, int n,
                              const Tolerance& tol = default_tolerance());

struct Embedding {
  Point center;
  double rotation = 0.0;
  double scale = 1.0;
  // (robot index in R, pattern index in F)
  std::vector<std::pair<size_t, size_t>> matched;
  std::vector<Point> placed;  // F in the frame of R, index-aligned with F.points()

  Point place(const Point& unit_point) const;
};

Embedding embed_pattern(const Configuration& R, const Pattern& F);

struct ModifiedPattern {
  std::vector<Point> points;
  std::vector<bool> projected;
};

ModifiedPattern modified_pattern(const Configuration& R, const Pattern& F, const Embedding& e);

struct Sector {
  Point center;
  double leading = 0.0;  // polar angle of the leading robot-ray
  double span = kTwoPi;  // clockwise extent to the trailing ray
  double radius = 0.0;   // δ(C^T)

  bool contains(const Point& p, const Tolerance& tol = default_tolerance()) const;
  double trailing() const { return normalize_angle(leading - span); }
};

// one sector per robot-ray on C(R), in clockwise order
std::vector<Sector> sectors(const Configuration& R, const ParkingGeometry& park);

std::optional<Trajectory> safe_trajectory(const Point& from, const Point& to, const Point& center,
                                          const std::vector<Point>& obstacles,
                                          const Tolerance& tol = default_tolerance());

struct SectorBook {
  Sector sector;
  std::vector<size_t> robots;
  std::vector<size_t> matched_robots;
  std::vector<size_t> unmatched_robots;
  std::vector<Point> targets;
  std::vector<Point> matched_targets;
  std::vector<Point> unmatched_targets;
  std::vector<size_t> safe_robots;
  std::optional<size_t> elected;
  std::optional<Point> elected_target;
  Trajectory elected_path;
  bool blocked = false;  // elected without a safe trajectory
};

SectorBook sector_bookkeeping(const Sector& S, const Configuration& R, const ModifiedPattern& Fp);

struct CrossSector {
  std::vector<size_t> free_robots;  // R^safe(S,S')
  std::optional<size_t> elected;    // r*(S,S')
  double offset = 0.0;              // clockwise angle to the trailing ray
};

CrossSector cross_sector(const SectorBook& book, const Configuration& R);

}  // namespace pf
