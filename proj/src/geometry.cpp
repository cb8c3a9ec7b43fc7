#include "pf/geometry.hpp"

#include <algorithm>
#include <limits>

namespace pf {

Tolerance::Tolerance(double l, double a) : length(l), angle(a) {
  if (!(l > 0.0) || !(a > 0.0)) throw GeometryError("tolerance must be strictly positive");
}

const Tolerance& default_tolerance() {
  static const Tolerance tol;
  return tol;
}

double norm(const Point& p) { return std::hypot(p.x, p.y); }
double dist(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

bool same_point(const Point& a, const Point& b, const Tolerance& tol) {
  return dist(a, b) <= tol.length;
}

double normalize_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

Angle::Angle(double r) : radians(normalize_angle(r)) {}

double polar_angle(const Point& p, const Point& c) {
  return normalize_angle(std::atan2(p.y - c.y, p.x - c.x));
}

Point from_polar(const Point& c, double radius, double theta) {
  return {c.x + radius * std::cos(theta), c.y + radius * std::sin(theta)};
}

Point rotate_about(const Point& p, const Point& c, double theta) {
  double cs = std::cos(theta), sn = std::sin(theta);
  double dx = p.x - c.x, dy = p.y - c.y;
  return {c.x + cs * dx - sn * dy, c.y + sn * dx + cs * dy};
}

double cw_offset(double a, double b, const Tolerance& tol) {
  double r = normalize_angle(a - b);
  if (r > kTwoPi - tol.angle) r = 0.0;
  return r;
}

bool angle_eq(double a, double b, const Tolerance& tol) {
  double d = normalize_angle(a - b);
  return d <= tol.angle || d >= kTwoPi - tol.angle;
}

Angle clockwise_angle(const Point& u, const Point& c, const Point& v, const Tolerance& tol) {
  if (same_point(u, c, tol) || same_point(v, c, tol))
    throw GeometryError("degenerate-input: point coincides with center");
  Angle a;
  a.radians = cw_offset(polar_angle(u, c), polar_angle(v, c), tol);
  return a;
}

bool Circle::contains(const Point& p, const Tolerance& tol) const {
  return dist(p, center) <= radius + tol.length * std::max(1.0, radius);
}

bool Circle::on_boundary(const Point& p, const Tolerance& tol) const {
  return std::abs(dist(p, center) - radius) <= tol.length * std::max(1.0, radius);
}

Circle circle_from(const Point& a, const Point& b) {
  return {(a + b) / 2.0, dist(a, b) / 2.0};
}

Circle circle_from(const Point& a, const Point& b, const Point& c) {
  double bx = b.x - a.x, by = b.y - a.y;
  double cx = c.x - a.x, cy = c.y - a.y;
  double d = 2.0 * (bx * cy - by * cx);
  double scale = std::max({std::abs(bx), std::abs(by), std::abs(cx), std::abs(cy), 1e-300});
  if (std::abs(d) <= 1e-14 * scale * scale) {
    // collinear: diameter of the farthest pair
    Circle best = circle_from(a, b);
    for (const Circle& cand : {circle_from(a, c), circle_from(b, c)})
      if (cand.radius > best.radius) best = cand;
    return best;
  }
  double b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
  Point u{(cy * b2 - by * c2) / d, (bx * c2 - cx * b2) / d};
  return {a + u, norm(u)};
}

Circle smallest_enclosing_circle(const std::vector<Point>& pts, const Tolerance& tol) {
  if (pts.empty()) throw GeometryError("empty-input: smallest enclosing circle of nothing");
  // incremental construction, index-order pivots
  auto inside = [&](const Circle& c, const Point& p) {
    return dist(p, c.center) <= c.radius + 1e-12 * std::max(1.0, c.radius);
  };
  (void)tol;
  Circle c{pts[0], 0.0};
  for (size_t i = 1; i < pts.size(); ++i) {
    if (inside(c, pts[i])) continue;
    c = {pts[i], 0.0};
    for (size_t j = 0; j < i; ++j) {
      if (inside(c, pts[j])) continue;
      c = circle_from(pts[i], pts[j]);
      for (size_t k = 0; k < j; ++k) {
        if (inside(c, pts[k])) continue;
        c = circle_from(pts[i], pts[j], pts[k]);
      }
    }
  }
  return c;
}

bool same_circle(const Circle& a, const Circle& b, const Tolerance& tol) {
  double s = std::max({1.0, a.radius, b.radius});
  return dist(a.center, b.center) <= tol.length * s && std::abs(a.radius - b.radius) <= tol.length * s;
}

bool is_critical(const Point& p, const std::vector<Point>& pts, const Tolerance& tol) {
  auto it = std::find_if(pts.begin(), pts.end(), [&](const Point& q) { return same_point(p, q, tol); });
  if (it == pts.end()) throw GeometryError("not-a-member: point absent from multiset");
  if (pts.size() == 1) return true;
  std::vector<Point> rest;
  rest.reserve(pts.size() - 1);
  for (auto jt = pts.begin(); jt != pts.end(); ++jt)
    if (jt != it) rest.push_back(*jt);
  return !same_circle(smallest_enclosing_circle(pts, tol), smallest_enclosing_circle(rest, tol), tol);
}

double sectorial_distance(const Point& p, const Point& q, const Point& center, double delta,
                          const Tolerance& tol) {
  if (delta <= 0.0) return 0.0;
  double radial = std::abs(dist(p, center) - dist(q, center)) / delta;
  double angular = 0.0;
  if (!same_point(p, center, tol) && !same_point(q, center, tol)) {
    double a = cw_offset(polar_angle(p, center), polar_angle(q, center), tol);
    angular = std::min(a, a == 0.0 ? 0.0 : kTwoPi - a) / kPi;
  }
  return radial + angular;
}

bool AnnulusSector::degenerate(const Tolerance& tol) const {
  return span <= tol.angle || outer_radius - inner_radius <= tol.length;
}

bool AnnulusSector::contains(const Point& s, const Tolerance& tol) const {
  double r = dist(s, center);
  if (r < inner_radius - tol.length || r > outer_radius + tol.length) return false;
  if (r <= tol.length) return inner_radius <= tol.length;
  double off = cw_offset(start_angle.radians, polar_angle(s, center), tol);
  return off <= span + tol.angle;
}

AnnulusSector annulus_sector(const Point& p, const Point& q, const Point& center, const Tolerance& tol) {
  if (same_point(p, center, tol) || same_point(q, center, tol))
    throw GeometryError("degenerate-center: annulus sector endpoint at center");
  AnnulusSector as;
  as.center = center;
  double rp = dist(p, center), rq = dist(q, center);
  as.inner_radius = std::min(rp, rq);
  as.outer_radius = std::max(rp, rq);
  double tp = polar_angle(p, center), tq = polar_angle(q, center);
  double pq = cw_offset(tp, tq, tol);
  double qp = pq == 0.0 ? 0.0 : kTwoPi - pq;
  if (pq <= qp + tol.angle) {
    as.start_angle = Angle(tp);
    as.end_angle = Angle(tq);
    as.span = pq;
  } else {
    as.start_angle = Angle(tq);
    as.end_angle = Angle(tp);
    as.span = qp;
  }
  return as;
}

double Arc::to_angle() const { return normalize_angle(clockwise ? from_angle - span : from_angle + span); }
Point Arc::start() const { return from_polar(center, radius, from_angle); }
Point Arc::end() const { return from_polar(center, radius, to_angle()); }

Point Arc::at(double s) const {
  if (radius <= 0.0) return center;
  double a = std::clamp(s / radius, 0.0, span);
  return from_polar(center, radius, clockwise ? from_angle - a : from_angle + a);
}

Leg Leg::segment(const Point& a, const Point& b) {
  Leg l;
  l.kind = Kind::Segment;
  l.seg = {a, b};
  return l;
}

Leg Leg::arc_leg(const Point& center, double radius, double from_angle, double span, bool clockwise) {
  Leg l;
  l.kind = Kind::Arc;
  l.arc = {center, radius, normalize_angle(from_angle), span, clockwise};
  return l;
}

double Leg::length() const {
  return kind == Kind::Segment ? dist(seg.from, seg.to) : arc.radius * arc.span;
}

Point Leg::start() const { return kind == Kind::Segment ? seg.from : arc.start(); }
Point Leg::end() const { return kind == Kind::Segment ? seg.to : arc.end(); }

Point Leg::at(double s) const {
  if (kind == Kind::Arc) return arc.at(s);
  double len = length();
  if (len <= 0.0) return seg.from;
  double f = std::clamp(s / len, 0.0, 1.0);
  return seg.from + (seg.to - seg.from) * f;
}

bool Leg::radial_about(const Point& c, const Tolerance& tol) const {
  if (kind != Kind::Segment) return false;
  Point a = seg.from - c, b = seg.to - c;
  double cross = a.x * b.y - a.y * b.x;
  return std::abs(cross) <= tol.length * std::max(1.0, norm(a) + norm(b));
}

double Trajectory::length() const {
  double s = 0.0;
  for (const Leg& l : legs) s += l.length();
  return s;
}

Point Trajectory::end() const { return legs.empty() ? start : legs.back().end(); }

Point Trajectory::point_at(double s) const {
  if (legs.empty()) return start;
  if (s <= 0.0) return start;
  for (const Leg& l : legs) {
    double len = l.length();
    if (s <= len) return l.at(s);
    s -= len;
  }
  return legs.back().end();
}

Trajectory Trajectory::slice(double a, double b) const {
  Trajectory out(point_at(a));
  double pos = 0.0;
  for (const Leg& l : legs) {
    double len = l.length();
    double lo = std::max(a, pos), hi = std::min(b, pos + len);
    if (hi > lo) {
      if (l.kind == Leg::Kind::Segment) {
        out.legs.push_back(Leg::segment(l.at(lo - pos), l.at(hi - pos)));
      } else {
        const Arc& arc = l.arc;
        double d0 = (lo - pos) / arc.radius;
        double start = arc.clockwise ? arc.from_angle - d0 : arc.from_angle + d0;
        out.legs.push_back(Leg::arc_leg(arc.center, arc.radius, start, (hi - lo) / arc.radius, arc.clockwise));
      }
    }
    pos += len;
  }
  return out;
}

bool Trajectory::contiguous(const Tolerance& tol) const {
  Point cur = start;
  for (const Leg& l : legs) {
    if (dist(cur, l.start()) > tol.length * 10) return false;
    cur = l.end();
  }
  return true;
}

Trajectory& Trajectory::line_to(const Point& p) {
  legs.push_back(Leg::segment(end(), p));
  return *this;
}

Trajectory& Trajectory::arc_to(const Point& center, double span, bool clockwise) {
  Point cur = end();
  legs.push_back(Leg::arc_leg(center, dist(cur, center), polar_angle(cur, center), span, clockwise));
  return *this;
}

double distance_to_trajectory(const Point& p, const Trajectory& t) {
  if (t.legs.empty()) return dist(p, t.start);
  double best = std::numeric_limits<double>::infinity();
  for (const Leg& l : t.legs) {
    if (l.kind == Leg::Kind::Segment) {
      Point d = l.seg.to - l.seg.from;
      double len2 = d.x * d.x + d.y * d.y;
      double f = len2 > 0 ? std::clamp(((p.x - l.seg.from.x) * d.x + (p.y - l.seg.from.y) * d.y) / len2, 0.0, 1.0) : 0.0;
      best = std::min(best, dist(p, l.seg.from + d * f));
    } else {
      const Arc& a = l.arc;
      best = std::min({best, dist(p, a.start()), dist(p, a.end())});
      if (dist(p, a.center) > 0.0) {
        double th = polar_angle(p, a.center);
        double off = a.clockwise ? normalize_angle(a.from_angle - th) : normalize_angle(th - a.from_angle);
        if (off <= a.span) best = std::min(best, std::abs(dist(p, a.center) - a.radius));
      }
    }
  }
  return best;
}

Point Similarity::apply(const Point& p) const {
  return rotate_about(p - origin, {}, rotation) * scale;
}

Point Similarity::invert(const Point& p) const {
  return rotate_about(p / scale, {}, -rotation) + origin;
}

Similarity Similarity::inverse() const {
  Similarity s;
  s.rotation = -rotation;
  s.scale = 1.0 / scale;
  s.origin = rotate_about(origin, {}, rotation) * (-scale);
  return s;
}

namespace {
template <class Map>
Trajectory map_trajectory(const Trajectory& t, Map map, double rot, double scale) {
  Trajectory out(map(t.start));
  for (const Leg& l : t.legs) {
    if (l.kind == Leg::Kind::Segment) {
      out.legs.push_back(Leg::segment(map(l.seg.from), map(l.seg.to)));
    } else {
      const Arc& a = l.arc;
      out.legs.push_back(Leg::arc_leg(map(a.center), a.radius * scale, a.from_angle + rot, a.span, a.clockwise));
    }
  }
  return out;
}
}  // namespace

Trajectory transform(const Trajectory& t, const Similarity& s) {
  return map_trajectory(t, [&](const Point& p) { return s.apply(p); }, s.rotation, s.scale);
}

Trajectory transform_inverse(const Trajectory& t, const Similarity& s) {
  return map_trajectory(t, [&](const Point& p) { return s.invert(p); }, -s.rotation, 1.0 / s.scale);
}

std::vector<Point> snap_points(const std::vector<Point>& pts, const Tolerance& tol) {
  std::vector<Point> out = pts;
  for (size_t i = 0; i < out.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      if (same_point(out[i], out[j], tol)) {
        out[i] = out[j];
        break;
      }
  return out;
}

}  // namespace pf
