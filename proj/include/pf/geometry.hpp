#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace pf {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Tolerance {
  double length = 1e-9;
  double angle = 1e-9;

  Tolerance() = default;
  Tolerance(double l, double a);
};

const Tolerance& default_tolerance();

struct Point {
  double x = 0.0;
  double y = 0.0;

  Point() = default;
  Point(double px, double py) : x(px), y(py) {}

  Point operator+(const Point& o) const { return {x + o.x, y + o.y}; }
  Point operator-(const Point& o) const { return {x - o.x, y - o.y}; }
  Point operator*(double s) const { return {x * s, y * s}; }
  Point operator/(double s) const { return {x / s, y / s}; }
  bool operator==(const Point&) const = default;
};

double norm(const Point& p);
double dist(const Point& a, const Point& b);
bool same_point(const Point& a, const Point& b, const Tolerance& tol = default_tolerance());
// counterclockwise polar angle of p about c, in [0, 2pi)
double polar_angle(const Point& p, const Point& c = {});
Point from_polar(const Point& c, double radius, double theta);
Point rotate_about(const Point& p, const Point& c, double theta);

struct Angle {
  double radians = 0.0;

  Angle() = default;
  explicit Angle(double r);
};

double normalize_angle(double a);
// clockwise rotation carrying the ray through u onto the ray through v
Angle clockwise_angle(const Point& u, const Point& c, const Point& v,
                      const Tolerance& tol = default_tolerance());
// clockwise offset from polar angle a to polar angle b, snapped to 0 near 2pi
double cw_offset(double a, double b, const Tolerance& tol = default_tolerance());
bool angle_eq(double a, double b, const Tolerance& tol = default_tolerance());

struct Circle {
  Point center;
  double radius = 0.0;

  bool contains(const Point& p, const Tolerance& tol = default_tolerance()) const;
  bool on_boundary(const Point& p, const Tolerance& tol = default_tolerance()) const;
};

Circle circle_from(const Point& a, const Point& b);
Circle circle_from(const Point& a, const Point& b, const Point& c);
Circle smallest_enclosing_circle(const std::vector<Point>& points,
                                 const Tolerance& tol = default_tolerance());
bool same_circle(const Circle& a, const Circle& b, const Tolerance& tol = default_tolerance());
bool is_critical(const Point& p, const std::vector<Point>& points,
                 const Tolerance& tol = default_tolerance());

double sectorial_distance(const Point& p, const Point& q, const Point& center, double enclosing_radius,
                          const Tolerance& tol = default_tolerance());

struct AnnulusSector {
  Point center;
  double inner_radius = 0.0;
  double outer_radius = 0.0;
  Angle start_angle;
  Angle end_angle;
  double span = 0.0;  // clockwise from start_angle to end_angle

  bool degenerate(const Tolerance& tol = default_tolerance()) const;
  bool contains(const Point& s, const Tolerance& tol = default_tolerance()) const;
};

AnnulusSector annulus_sector(const Point& p, const Point& q, const Point& center,
                             const Tolerance& tol = default_tolerance());

struct Segment {
  Point from;
  Point to;
};

struct Arc {
  Point center;
  double radius = 0.0;
  double from_angle = 0.0;  // polar
  double span = 0.0;        // >= 0
  bool clockwise = true;

  double to_angle() const;
  Point start() const;
  Point end() const;
  Point at(double s) const;
};

struct Leg {
  enum class Kind { Segment, Arc } kind = Kind::Segment;
  Segment seg;
  Arc arc;

  static Leg segment(const Point& a, const Point& b);
  static Leg arc_leg(const Point& center, double radius, double from_angle, double span, bool clockwise);

  double length() const;
  Point start() const;
  Point end() const;
  Point at(double s) const;
  bool radial_about(const Point& c, const Tolerance& tol = default_tolerance()) const;
};

struct Similarity;

struct Trajectory {
  Point start;
  std::vector<Leg> legs;

  Trajectory() = default;
  explicit Trajectory(const Point& s) : start(s) {}

  bool nil() const { return legs.empty(); }
  double length() const;
  Point end() const;
  Point point_at(double s) const;
  // the part of the trajectory between arc-lengths a and b
  Trajectory slice(double a, double b) const;
  bool contiguous(const Tolerance& tol = default_tolerance()) const;

  Trajectory& line_to(const Point& p);
  Trajectory& arc_to(const Point& center, double span, bool clockwise);
};

double distance_to_trajectory(const Point& p, const Trajectory& t);

// z -> scale * R(rotation) * (z - origin)
struct Similarity {
  Point origin;
  double rotation = 0.0;
  double scale = 1.0;

  Point apply(const Point& p) const;
  Point invert(const Point& p) const;
  Similarity inverse() const;
};

Trajectory transform(const Trajectory& t, const Similarity& s);
Trajectory transform_inverse(const Trajectory& t, const Similarity& s);

// merges points closer than tol.length into the first representative
std::vector<Point> snap_points(const std::vector<Point>& pts, const Tolerance& tol = default_tolerance());

}  // namespace pf
