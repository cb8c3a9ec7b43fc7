#include "pf/pattern.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace pf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double scale_of(const Configuration& R) { return R.radius() > 0 ? R.radius() : 1.0; }

}  // namespace

Pattern::Pattern(const std::vector<Point>& pts, const Tolerance& tol) : points_(pts), config_(pts, tol) {
  rho_ = symmetricity(config_);
  unit_ = normalized_points(config_);
  max_mult_ = config_.max_multiplicity();
  if (degenerate()) {
    radii_ = {0.0};
    return;
  }
  ConcentricLevels lv = levels(config_);
  for (const Level& l : lv.circles) radii_.push_back(l.radius);
  const Level& outer = lv.circles.back();
  std::vector<double> angles;
  for (size_t i : outer.members) angles.push_back(config_.theta(i));
  std::sort(angles.begin(), angles.end());
  std::vector<double> distinct;
  for (double a : angles)
    if (distinct.empty() || a - distinct.back() > tol.angle) distinct.push_back(a);
  if (distinct.size() > 1 && distinct.front() + kTwoPi - distinct.back() <= tol.angle) distinct.pop_back();
  for (size_t k = 0; k < distinct.size(); ++k) {
    double next = k + 1 < distinct.size() ? distinct[k + 1] : distinct[0] + kTwoPi;
    gaps_.push_back(next - distinct[k]);
  }
  std::vector<size_t> mv = min_view_indices(outer.members, config_);
  min_view_angle_ = config_.theta(mv.front());
}

bool Pattern::has_interior() const { return radii_.size() > 1; }

bool ParkingGeometry::in_ann(double rn, const Tolerance& tol) const {
  return rn > top + tol.length && rn < 1.0 - tol.length;
}

bool ParkingGeometry::on_top(double rn, const Tolerance& tol) const {
  return std::abs(rn - top) <= tol.length;
}

ParkingGeometry parking_circles(const Configuration& R, const Pattern& F) {
  if (F.degenerate()) throw GeometryError("degenerate-pattern: pattern has zero radius");
  ParkingGeometry g;
  const auto& fr = F.level_radii();
  double second = fr.size() > 1 ? fr[fr.size() - 2] : 0.0;
  g.top = (1.0 + second) / 2.0;
  double f_inner = fr[0] <= F.config().tol().length ? fr[1] : fr[0];
  ConcentricLevels lv = levels(R);
  const Level* up2 = lv.up(2);
  double r_inner = up2 ? up2->radius : 1.0;
  g.bottom = std::min(r_inner, f_inner) / 2.0;
  g.c_r = R.sec();
  g.c_top = {R.center(), g.top * R.radius()};
  g.c_bottom = {R.center(), g.bottom * R.radius()};
  return g;
}

bool ForbiddenSet::forbidden(double theta) const {
  for (double a : angles)
    if (angle_eq(a, theta, tol)) return true;
  return false;
}

bool ForbiddenSet::forbidden(const Point& q) const { return forbidden(polar_angle(q, center)); }

double ForbiddenSet::next_cw(double theta) const {
  double best = kInf;
  for (double a : angles) {
    double off = cw_offset(theta, a, tol);
    if (off > tol.angle) best = std::min(best, off);
  }
  return best;
}

std::vector<double> ForbiddenSet::sorted() const {
  std::vector<double> s = angles;
  std::sort(s.begin(), s.end());
  return s;
}

ForbiddenSet forbidden_points(const Circle& circle, const std::vector<Point>& occupied, int n,
                              const Tolerance& tol) {
  ForbiddenSet fs;
  fs.center = circle.center;
  fs.radius = circle.radius;
  fs.tol = tol;
  if (n < 1) n = 1;
  for (const Point& r : occupied) {
    double th = polar_angle(r, circle.center);
    for (int k = 0; k < n; ++k) {
      double a = normalize_angle(th - kTwoPi * k / n);
      bool dup = false;
      for (double b : fs.angles)
        if (angle_eq(a, b, tol)) dup = true;
      if (!dup) fs.angles.push_back(a);
    }
  }
  return fs;
}

Point Embedding::place(const Point& u) const {
  return center + rotate_about(u, {}, rotation) * scale;
}

Embedding embed_pattern(const Configuration& R, const Pattern& F) {
  ConcentricLevels lv = levels(R);
  const Level* outer = lv.down(1);
  if (!outer || F.degenerate() || !is_regular_gon(*outer, R))
    throw GeometryError("precondition-violation: robots on C(R) do not form a regular polygon");
  std::vector<size_t> reps;
  for (size_t i : outer->members)
    if (std::none_of(reps.begin(), reps.end(), [&](size_t j) { return R[j] == R[i]; })) reps.push_back(i);
  const int m = static_cast<int>(reps.size());
  if (m < 2 || F.rho() % m != 0)
    throw GeometryError("precondition-violation: boundary polygon size does not divide the pattern symmetricity");
  Embedding e;
  e.center = R.center();
  e.scale = R.radius();
  e.rotation = R.theta(reps.front()) - F.min_view_boundary_angle();
  e.placed.reserve(F.size());
  for (const Point& u : F.unit()) e.placed.push_back(e.place(u));
  const double eps = R.tol().length * scale_of(R) * 100;
  std::vector<bool> used(F.size(), false);
  for (size_t i : outer->members) {
    size_t best = F.size();
    double bd = kInf;
    for (size_t k = 0; k < F.size(); ++k) {
      if (used[k]) continue;
      double d = dist(e.placed[k], R[i]);
      if (d < bd) {
        bd = d;
        best = k;
      }
    }
    if (best == F.size() || bd > eps) throw GeometryError("precondition-violation: boundary robot has no pattern point");
    used[best] = true;
    e.matched.emplace_back(i, best);
  }
  return e;
}

ModifiedPattern modified_pattern(const Configuration& R, const Pattern& F, const Embedding& e) {
  ParkingGeometry park = parking_circles(R, F);
  ModifiedPattern out;
  out.points = e.placed;
  out.projected.assign(F.size(), false);
  std::vector<bool> matched(F.size(), false);
  for (const auto& [ri, fk] : e.matched) matched[fk] = true;
  const double eps = F.config().tol().length;
  for (size_t k = 0; k < F.size(); ++k) {
    if (matched[k] || std::abs(norm(F.unit()[k]) - 1.0) > eps) continue;
    double th = polar_angle(e.placed[k], e.center);
    out.points[k] = from_polar(e.center, park.top * R.radius(), th);
    out.projected[k] = true;
  }
  return out;
}

bool Sector::contains(const Point& p, const Tolerance& tol) const {
  double s = radius > 0 ? radius : 1.0;
  double d = dist(p, center);
  if (d <= tol.length * s || d > radius + tol.length * s) return false;
  double off = cw_offset(leading, polar_angle(p, center), tol);
  return off < span - tol.angle;
}

std::vector<Sector> sectors(const Configuration& R, const ParkingGeometry& park) {
  ConcentricLevels lv = levels(R);
  const Level* outer = lv.down(1);
  std::vector<double> th;
  for (size_t i : outer->members) th.push_back(R.theta(i));
  std::sort(th.begin(), th.end(), std::greater<double>());
  std::vector<double> rays;
  for (double a : th)
    if (std::none_of(rays.begin(), rays.end(), [&](double b) { return angle_eq(a, b, R.tol()); })) rays.push_back(a);
  std::vector<Sector> out;
  for (size_t k = 0; k < rays.size(); ++k) {
    Sector s;
    s.center = R.center();
    s.leading = rays[k];
    s.span = rays.size() == 1 ? kTwoPi : cw_offset(rays[k], rays[(k + 1) % rays.size()], R.tol());
    s.radius = park.c_top.radius;
    out.push_back(s);
  }
  return out;
}

namespace {

bool path_blocked(const Trajectory& t, const std::vector<Point>& obstacles, double eps) {
  for (const Point& o : obstacles) {
    if (dist(o, t.start) <= eps) continue;
    if (distance_to_trajectory(o, t) <= eps) return true;
  }
  return false;
}

// midpoints of the gaps between sorted cut values inside (lo, hi), widest first
std::vector<double> gap_midpoints(double lo, double hi, std::vector<double> cuts) {
  if (lo > hi) std::swap(lo, hi);
  std::vector<double> v{lo, hi};
  for (double c : cuts)
    if (c > lo && c < hi) v.push_back(c);
  std::sort(v.begin(), v.end());
  std::vector<std::pair<double, double>> gaps;
  for (size_t k = 0; k + 1 < v.size(); ++k)
    if (v[k + 1] - v[k] > 0) gaps.emplace_back(v[k + 1] - v[k], (v[k] + v[k + 1]) / 2);
  std::stable_sort(gaps.begin(), gaps.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<double> out;
  for (auto& g : gaps) out.push_back(g.second);
  return out;
}

}  // namespace

std::optional<Trajectory> safe_trajectory(const Point& from, const Point& to, const Point& center,
                                          const std::vector<Point>& obstacles, const Tolerance& tol) {
  double rf = dist(from, center), rt = dist(to, center);
  double scale = std::max({rf, rt, 1e-12});
  double eps = tol.length * std::max(1.0, scale);
  if (dist(from, to) <= eps) return Trajectory(from);
  if (rf <= eps || rt <= eps) {
    Trajectory t(from);
    t.line_to(to);
    if (path_blocked(t, obstacles, eps)) return std::nullopt;
    return t;
  }
  double tf = polar_angle(from, center), tt = polar_angle(to, center);
  double cw = cw_offset(tf, tt, tol);
  double ccw = cw == 0.0 ? 0.0 : kTwoPi - cw;
  bool clockwise = cw <= ccw + tol.angle;
  double span = clockwise ? cw : ccw;
  bool same_ray = span <= tol.angle;
  bool same_circle = std::abs(rf - rt) <= eps;

  std::vector<Trajectory> cands;
  auto radial = [&](Trajectory& t, double theta, double r) { t.line_to(from_polar(center, r, theta)); };
  auto arc = [&](Trajectory& t, double sp) {
    if (sp > tol.angle) t.arc_to(center, sp, clockwise);
  };
  auto at_angle = [&](double off) { return normalize_angle(clockwise ? tf - off : tf + off); };

  if (same_ray) {
    Trajectory t(from);
    t.line_to(to);
    cands.push_back(t);
  } else if (same_circle) {
    Trajectory t(from);
    arc(t, span);
    cands.push_back(t);
  } else {
    Trajectory a(from);
    arc(a, span);
    a.line_to(to);
    cands.push_back(a);
    Trajectory b(from);
    radial(b, tf, rt);
    arc(b, span);
    cands.push_back(b);
  }
  for (const Trajectory& t : cands)
    if (!path_blocked(t, obstacles, eps)) return t;
  if (same_ray || same_circle) return std::nullopt;

  // obstacles inside the annulus sector determine the free radii and angles
  std::vector<double> radii, offs;
  for (const Point& o : obstacles) {
    double ro = dist(o, center);
    if (ro <= eps) continue;
    double off = clockwise ? cw_offset(tf, polar_angle(o, center), tol)
                           : cw_offset(polar_angle(o, center), tf, tol);
    if (off > span + tol.angle) continue;
    radii.push_back(ro);
    offs.push_back(off);
  }
  std::vector<double> rs = gap_midpoints(rf, rt, radii);
  std::vector<double> ps = gap_midpoints(0.0, span, offs);

  for (double s : rs) {
    Trajectory t(from);
    radial(t, tf, s);
    arc(t, span);
    t.line_to(to);
    if (!path_blocked(t, obstacles, eps)) return t;
  }
  for (double ph : ps) {
    Trajectory t(from);
    arc(t, ph);
    radial(t, at_angle(ph), rt);
    arc(t, span - ph);
    if (!path_blocked(t, obstacles, eps)) return t;
  }
  for (double s1 : rs)
    for (double ph : ps)
      for (double s2 : rs) {
        if ((rt - rf) * (s2 - s1) < 0) continue;
        Trajectory t(from);
        radial(t, tf, s1);
        arc(t, ph);
        radial(t, at_angle(ph), s2);
        arc(t, span - ph);
        t.line_to(to);
        if (!path_blocked(t, obstacles, eps)) return t;
      }
  return std::nullopt;
}

namespace {

bool tie_break_target(const Sector& S, const Point& a, const Point& b, const Tolerance& tol) {
  double oa = cw_offset(S.leading, polar_angle(a, S.center), tol);
  double ob = cw_offset(S.leading, polar_angle(b, S.center), tol);
  if (std::abs(oa - ob) > tol.angle) return oa < ob;
  return dist(a, S.center) < dist(b, S.center);
}

}  // namespace

SectorBook sector_bookkeeping(const Sector& S, const Configuration& R, const ModifiedPattern& Fp) {
  SectorBook b;
  b.sector = S;
  const Tolerance& tol = R.tol();
  const double sc = scale_of(R);
  const double eps = tol.length * sc;
  for (size_t i = 0; i < R.size(); ++i)
    if (S.contains(R[i], tol)) b.robots.push_back(i);
  for (const Point& f : Fp.points)
    if (S.contains(f, tol)) b.targets.push_back(f);

  // match by location, up to the multiplicity demanded
  std::vector<bool> robot_used(R.size(), false);
  for (const Point& f : b.targets) {
    bool hit = false;
    for (size_t i : b.robots)
      if (!robot_used[i] && dist(R[i], f) <= eps) {
        robot_used[i] = true;
        b.matched_robots.push_back(i);
        hit = true;
        break;
      }
    (hit ? b.matched_targets : b.unmatched_targets).push_back(f);
  }
  for (size_t i : b.robots)
    if (!robot_used[i]) b.unmatched_robots.push_back(i);
  if (b.unmatched_robots.empty() || b.unmatched_targets.empty()) return b;

  std::vector<Point> distinct_targets;
  for (const Point& f : b.unmatched_targets)
    if (std::none_of(distinct_targets.begin(), distinct_targets.end(), [&](const Point& g) { return dist(f, g) <= eps; }))
      distinct_targets.push_back(f);

  struct Choice {
    size_t robot;
    double d;
    Point target;
    Trajectory path;
  };
  std::vector<Choice> safe;
  for (size_t i : b.unmatched_robots) {
    std::optional<Choice> best;
    for (const Point& f : distinct_targets) {
      std::vector<Point> obstacles;
      for (size_t j = 0; j < R.size(); ++j)
        if (j != i && dist(R[j], f) > eps) obstacles.push_back(R[j]);
      auto path = safe_trajectory(R[i], f, R.center(), obstacles, tol);
      if (!path) continue;
      double d = sectorial_distance(R[i], f, R.center(), R.radius(), tol);
      if (!best || d < best->d - eps || (std::abs(d - best->d) <= eps && tie_break_target(S, f, best->target, tol)))
        best = Choice{i, d, f, *path};
    }
    if (best) {
      safe.push_back(*best);
      b.safe_robots.push_back(i);
    }
  }
  if (!safe.empty()) {
    double dmin = kInf;
    for (const Choice& c : safe) dmin = std::min(dmin, c.d);
    std::vector<size_t> tied;
    for (const Choice& c : safe)
      if (c.d <= dmin + eps) tied.push_back(c.robot);
    size_t who = min_view_indices(tied, R).front();
    for (const Choice& c : safe)
      if (c.robot == who) {
        b.elected = who;
        b.elected_target = c.target;
        b.elected_path = c.path;
      }
    return b;
  }
  size_t who = min_view_indices(b.unmatched_robots, R).front();
  std::optional<Point> tgt;
  double bd = kInf;
  for (const Point& f : distinct_targets) {
    double d = sectorial_distance(R[who], f, R.center(), R.radius(), tol);
    if (!tgt || d < bd - eps || (std::abs(d - bd) <= eps && tie_break_target(S, f, *tgt, tol))) {
      bd = d;
      tgt = f;
    }
  }
  b.elected = who;
  b.elected_target = tgt;
  b.elected_path = Trajectory(R[who]);
  b.blocked = true;
  return b;
}

CrossSector cross_sector(const SectorBook& book, const Configuration& R) {
  CrossSector out;
  const Tolerance& tol = R.tol();
  const double trailing = book.sector.trailing();
  std::vector<std::pair<size_t, double>> cand;
  for (size_t i : book.unmatched_robots) {
    if (R.at_center(i)) continue;
    double off = cw_offset(R.theta(i), trailing, tol);
    bool blocked = false;
    for (size_t j = 0; j < R.size() && !blocked; ++j) {
      if (j == i || R[j] == R[i] || R.at_center(j)) continue;
      if (std::abs(R.rn(j) - R.rn(i)) > tol.length) continue;
      double oj = cw_offset(R.theta(i), R.theta(j), tol);
      if (oj > tol.angle && oj <= off + tol.angle) blocked = true;
    }
    if (!blocked) cand.emplace_back(i, off);
  }
  for (auto& c : cand) out.free_robots.push_back(c.first);
  if (cand.empty()) return out;
  double best = kInf;
  for (auto& c : cand) best = std::min(best, c.second);
  std::vector<size_t> tied;
  for (auto& c : cand)
    if (c.second <= best + tol.angle) tied.push_back(c.first);
  out.elected = min_view_indices(tied, R).front();
  for (auto& c : cand)
    if (c.first == *out.elected) out.offset = c.second;
  return out;
}

}  // namespace pf
