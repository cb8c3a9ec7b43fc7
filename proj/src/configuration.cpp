#include "pf/configuration.hpp"

#include <algorithm>
#include <numeric>

namespace pf {

Configuration::Configuration(const std::vector<Point>& pts, const Tolerance& tol) : tol_(tol) {
  if (pts.empty()) throw GeometryError("empty configuration");
  for (const Point& p : pts)
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw GeometryError("non-finite coordinate");
  sec_ = smallest_enclosing_circle(pts, tol);
  double scale = sec_.radius > 0 ? sec_.radius : 1.0;
  // snap in normalized units so the tolerance is scale-free
  points_ = pts;
  for (size_t i = 0; i < points_.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      if (dist(points_[i], points_[j]) <= tol.length * scale) {
        points_[i] = points_[j];
        break;
      }
  rn_.resize(points_.size());
  theta_.resize(points_.size());
  for (size_t i = 0; i < points_.size(); ++i) {
    double d = dist(points_[i], sec_.center);
    rn_[i] = sec_.radius > 0 ? d / sec_.radius : 0.0;
    theta_[i] = rn_[i] <= tol.length ? 0.0 : polar_angle(points_[i], sec_.center);
  }
}

std::ptrdiff_t Configuration::index_of(const Point& p) const {
  double scale = sec_.radius > 0 ? sec_.radius : 1.0;
  for (size_t i = 0; i < points_.size(); ++i)
    if (dist(points_[i], p) <= tol_.length * scale) return static_cast<std::ptrdiff_t>(i);
  return -1;
}

int Configuration::multiplicity(const Point& p) const {
  double scale = sec_.radius > 0 ? sec_.radius : 1.0;
  int m = 0;
  for (const Point& q : points_)
    if (dist(p, q) <= tol_.length * scale) ++m;
  return m;
}

int Configuration::multiplicity_of(size_t i) const {
  int m = 0;
  for (const Point& q : points_)
    if (q == points_[i]) ++m;
  return m;
}

int Configuration::center_multiplicity() const {
  int m = 0;
  for (size_t i = 0; i < size(); ++i)
    if (at_center(i)) ++m;
  return m;
}

int Configuration::max_multiplicity() const {
  int best = 0;
  for (size_t i = 0; i < size(); ++i) best = std::max(best, multiplicity_of(i));
  return best;
}

const Level* ConcentricLevels::up(size_t i) const {
  if (i == 0 || i > circles.size()) return nullptr;
  return &circles[i - 1];
}

const Level* ConcentricLevels::down(size_t i) const {
  if (i == 0 || i > circles.size()) return nullptr;
  return &circles[circles.size() - i];
}

Circle ConcentricLevels::circle(const Configuration& R, const Level& l) const {
  return {R.center(), l.radius * R.radius()};
}

ConcentricLevels levels(const Configuration& R) {
  std::vector<size_t> idx(R.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return R.rn(a) < R.rn(b); });
  ConcentricLevels out;
  const double eps = R.tol().length;
  for (size_t i : idx) {
    double r = R.at_center(i) ? 0.0 : R.rn(i);
    if (out.circles.empty() || r - out.circles.back().radius > eps) {
      out.circles.push_back({r, {}});
    }
    out.circles.back().members.push_back(i);
  }
  // the outermost level is C(R) exactly
  if (!out.circles.empty() && out.circles.back().radius > eps) out.circles.back().radius = 1.0;
  for (auto& l : out.circles) std::sort(l.members.begin(), l.members.end());
  return out;
}

namespace {

bool same_location(const Configuration& R, double r1, double t1, double r2, double t2) {
  const Tolerance& tol = R.tol();
  if (std::abs(r1 - r2) > tol.length) return false;
  if (r1 <= tol.length) return true;
  return angle_eq(t1, t2, Tolerance{tol.length, std::max(tol.angle, tol.length / r1)});
}

bool invariant_under(const Configuration& R, double rot) {
  for (size_t i = 0; i < R.size(); ++i) {
    if (R.at_center(i)) continue;
    double target = R.theta(i) + rot;
    bool found = false;
    for (size_t j = 0; j < R.size() && !found; ++j) {
      if (R.at_center(j)) continue;
      if (same_location(R, R.rn(i), target, R.rn(j), R.theta(j)) &&
          R.multiplicity_of(i) == R.multiplicity_of(j))
        found = true;
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

int symmetricity(const Configuration& R) {
  const int n = static_cast<int>(R.size());
  const int cm = R.center_multiplicity();
  if (cm == n) return n;
  for (int m = n; m >= 2; --m) {
    if (n % m != 0 || cm % m != 0) continue;
    if (invariant_under(R, kTwoPi / m)) return m;
  }
  return 1;
}

std::vector<int> rotation_orders(const Configuration& R) {
  const int n = static_cast<int>(R.size());
  const int off = n - R.center_multiplicity();
  std::vector<int> out{1};
  if (off == 0) {
    for (int p = 2; p <= n; ++p) out.push_back(p);
    return out;
  }
  for (int p = 2; p <= off; ++p)
    if (invariant_under(R, kTwoPi / p)) out.push_back(p);
  return out;
}

ViewSequence view_of(size_t i, const Configuration& R) {
  ViewSequence v;
  if (R.at_center(i)) {
    v.center = true;
    return v;
  }
  const Tolerance& tol = R.tol();
  std::vector<std::pair<double, double>> rest;
  rest.reserve(R.size());
  for (size_t j = 0; j < R.size(); ++j) {
    if (j == i || R.at_center(j)) continue;
    rest.emplace_back(cw_offset(R.theta(i), R.theta(j), tol), R.rn(j));
  }
  std::sort(rest.begin(), rest.end());
  // merge angles within tolerance onto one ray
  for (size_t k = 1; k < rest.size(); ++k)
    if (rest[k].first - rest[k - 1].first <= tol.angle) rest[k].first = rest[k - 1].first;
  if (!rest.empty() && rest.back().first > kTwoPi - tol.angle)
    for (auto& c : rest)
      if (c.first > kTwoPi - tol.angle) c.first = 0.0;
  std::sort(rest.begin(), rest.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second > b.second;
  });
  v.couples.reserve(rest.size() + 1);
  v.couples.emplace_back(0.0, R.rn(i));
  for (auto& c : rest) v.couples.push_back(c);
  return v;
}

ViewSequence view(const Point& p, const Configuration& R) {
  std::ptrdiff_t i = R.index_of(p);
  if (i < 0) throw GeometryError("not-a-member: point absent from configuration");
  return view_of(static_cast<size_t>(i), R);
}

int compare_views(const ViewSequence& a, const ViewSequence& b, const Tolerance& tol) {
  if (a.center || b.center) return a.center == b.center ? 0 : (a.center ? -1 : 1);
  size_t n = std::min(a.couples.size(), b.couples.size());
  for (size_t k = 0; k < n; ++k) {
    double da = a.couples[k].first - b.couples[k].first;
    if (std::abs(da) > tol.angle) return da < 0 ? -1 : 1;
    double dd = a.couples[k].second - b.couples[k].second;
    if (std::abs(dd) > tol.length) return dd < 0 ? -1 : 1;
  }
  if (a.couples.size() != b.couples.size()) return a.couples.size() < b.couples.size() ? -1 : 1;
  return 0;
}

std::vector<size_t> min_view_indices(const std::vector<size_t>& S, const Configuration& R) {
  if (S.empty()) throw GeometryError("empty-selection: no candidates for minimum view");
  std::vector<size_t> centre;
  for (size_t i : S)
    if (R.at_center(i)) centre.push_back(i);
  if (!centre.empty()) return centre;
  std::vector<ViewSequence> views;
  views.reserve(S.size());
  for (size_t i : S) views.push_back(view_of(i, R));
  size_t best = 0;
  for (size_t k = 1; k < S.size(); ++k)
    if (compare_views(views[k], views[best], R.tol()) < 0) best = k;
  std::vector<size_t> out;
  for (size_t k = 0; k < S.size(); ++k)
    if (compare_views(views[k], views[best], R.tol()) == 0) out.push_back(S[k]);
  return out;
}

std::vector<Point> min_view_robots(const std::vector<Point>& S, const Configuration& R) {
  std::vector<size_t> idx;
  std::vector<bool> used(R.size(), false);
  for (const Point& p : S) {
    std::ptrdiff_t k = R.index_of(p);
    size_t i = 0;
    if (k >= 0)
      while (i < R.size() && (used[i] || !(R[i] == R[static_cast<size_t>(k)]))) ++i;
    if (k < 0 || i == R.size()) throw GeometryError("not-a-member: selection is not a subset of the configuration");
    used[i] = true;
    idx.push_back(i);
  }
  std::vector<Point> out;
  for (size_t i : min_view_indices(idx, R)) out.push_back(R[i]);
  return out;
}

bool ill_conditioned(const Configuration& R) {
  std::vector<size_t> all(R.size());
  std::iota(all.begin(), all.end(), 0);
  std::vector<ViewSequence> views;
  for (size_t i : all) views.push_back(view_of(i, R));
  std::vector<size_t> mins = min_view_indices(all, R);
  if (views[mins[0]].center) return false;
  Tolerance wide{R.tol().length * 10, R.tol().angle * 10};
  for (size_t i : all)
    if (compare_views(views[i], views[mins[0]], R.tol()) != 0 &&
        compare_views(views[i], views[mins[0]], wide) == 0)
      return true;
  return false;
}

RegularGonSet max_regular_gons(const Circle& C, const Configuration& R, int rho_F) {
  RegularGonSet out;
  const Tolerance& tol = R.tol();
  double target = R.radius() > 0 ? C.radius / R.radius() : 0.0;
  if (target <= tol.length) return out;
  // distinct locations on the circle
  std::vector<size_t> reps;
  for (size_t i = 0; i < R.size(); ++i) {
    if (std::abs(R.rn(i) - target) > tol.length) continue;
    bool dup = false;
    for (size_t j : reps)
      if (R[j] == R[i]) dup = true;
    if (!dup) reps.push_back(i);
  }
  const int k = static_cast<int>(reps.size());
  for (int s = k; s >= 2; --s) {
    if (rho_F % s != 0) continue;
    std::vector<std::vector<size_t>> found;
    for (size_t a : reps) {
      std::vector<size_t> gon{a};
      for (int j = 1; j < s; ++j) {
        double want = R.theta(a) - kTwoPi * j / s;
        bool hit = false;
        for (size_t b : reps)
          if (angle_eq(R.theta(b), want, tol)) {
            gon.push_back(b);
            hit = true;
            break;
          }
        if (!hit) {
          gon.clear();
          break;
        }
      }
      if (gon.empty()) continue;
      std::sort(gon.begin(), gon.end());
      if (std::find(found.begin(), found.end(), gon) == found.end()) found.push_back(gon);
    }
    if (!found.empty()) {
      out.gons = found;
      for (size_t i = 0; i < R.size(); ++i)
        for (const auto& g : found)
          for (size_t v : g)
            if (R[v] == R[i] && std::find(out.union_members.begin(), out.union_members.end(), i) ==
                                    out.union_members.end())
              out.union_members.push_back(i);
      std::sort(out.union_members.begin(), out.union_members.end());
      return out;
    }
  }
  return out;
}

bool is_regular_gon(const Level& l, const Configuration& R) {
  std::vector<size_t> reps;
  for (size_t i : l.members) {
    bool dup = false;
    for (size_t j : reps)
      if (R[j] == R[i]) dup = true;
    if (!dup) reps.push_back(i);
  }
  const int k = static_cast<int>(reps.size());
  if (k < 2) return false;
  int mult = R.multiplicity_of(reps[0]);
  std::vector<double> th;
  for (size_t i : reps) {
    if (R.multiplicity_of(i) != mult) return false;
    th.push_back(R.theta(i));
  }
  std::sort(th.begin(), th.end());
  double gap = kTwoPi / k;
  for (int j = 0; j < k; ++j) {
    double g = j + 1 < k ? th[j + 1] - th[j] : th[0] + kTwoPi - th[j];
    if (std::abs(g - gap) > R.tol().angle * 10) return false;
  }
  return true;
}

std::vector<Point> normalized_points(const Configuration& R) {
  std::vector<Point> out;
  out.reserve(R.size());
  double s = R.radius() > 0 ? R.radius() : 1.0;
  for (const Point& p : R.points()) out.push_back((p - R.center()) / s);
  return out;
}

namespace {

bool multiset_match(const std::vector<Point>& a, const std::vector<Point>& b, double eps) {
  std::vector<bool> used(b.size(), false);
  for (const Point& p : a) {
    bool hit = false;
    for (size_t j = 0; j < b.size(); ++j)
      if (!used[j] && dist(p, b[j]) <= eps) {
        used[j] = true;
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

}  // namespace

bool similar(const Configuration& A, const Configuration& B, bool allow_reflection) {
  if (A.size() != B.size()) return false;
  const double eps = A.tol().length * 10;
  bool za = A.radius() <= 0, zb = B.radius() <= 0;
  if (za || zb) return za && zb;
  std::vector<Point> a = normalized_points(A), b = normalized_points(B);
  size_t anchor = 0;
  for (size_t i = 0; i < a.size(); ++i)
    if (std::abs(norm(a[i]) - 1.0) <= A.tol().length) {
      anchor = i;
      break;
    }
  for (int pass = 0; pass < (allow_reflection ? 2 : 1); ++pass) {
    std::vector<Point> src = a;
    if (pass == 1)
      for (Point& p : src) p.y = -p.y;
    double ta = polar_angle(src[anchor]);
    for (size_t j = 0; j < b.size(); ++j) {
      if (std::abs(norm(b[j]) - 1.0) > B.tol().length) continue;
      double rot = polar_angle(b[j]) - ta;
      std::vector<Point> moved;
      moved.reserve(src.size());
      for (const Point& p : src) moved.push_back(rotate_about(p, {}, rot));
      if (multiset_match(moved, b, eps)) return true;
    }
  }
  return false;
}

}  // namespace pf
