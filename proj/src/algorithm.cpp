#include "pf/algorithm.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "algorithm_internal.hpp"

namespace pf {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::string task_name(TaskId t) { return "T" + std::to_string(task_index(t)); }

std::optional<TaskId> parse_task(const std::string& s) {
  if (s.size() < 2 || s[0] != 'T') return std::nullopt;
  try {
    int i = std::stoi(s.substr(1));
    if (i < 1 || i > 11) return std::nullopt;
    return task_from_index(i);
  } catch (...) {
    return std::nullopt;
  }
}

int PredicateVector::true_count() const {
  return static_cast<int>(std::count(predicate.begin(), predicate.end(), true));
}

TaskId PredicateVector::task() const {
  for (int i = 0; i < 11; ++i)
    if (predicate[i]) return task_from_index(i + 1);
  return TaskId::T1;
}

int min_prime(int n) {
  if (n < 2) return 1;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) return p;
  return n;
}

namespace detail {

Point at_polar(const Configuration& R, double rn, double theta) {
  return from_polar(R.center(), rn * R.radius(), theta);
}

std::vector<MoveDirective> to_directives(const Configuration& R, const Moves& moves) {
  std::vector<MoveDirective> out;
  out.reserve(R.size());
  for (size_t i = 0; i < R.size(); ++i) out.push_back({R[i], moves[i]});
  return out;
}

Moves nil_moves(const Configuration& R) {
  Moves m;
  m.reserve(R.size());
  for (size_t i = 0; i < R.size(); ++i) m.emplace_back(R[i]);
  return m;
}

std::vector<size_t> indices_of(const std::vector<Point>& pts, const Configuration& R) {
  std::vector<size_t> out;
  std::vector<bool> used(R.size(), false);
  for (const Point& p : pts) {
    std::ptrdiff_t k = R.index_of(p);
    if (k < 0) throw AlgorithmError("point is not a robot of the configuration");
    size_t i = 0;
    while (i < R.size() && (used[i] || !(R[i] == R[static_cast<size_t>(k)]))) ++i;
    if (i == R.size()) throw AlgorithmError("selection exceeds multiplicity");
    used[i] = true;
    out.push_back(i);
  }
  return out;
}

void go_to_ct(const std::vector<size_t>& X, const Configuration& R, const Pattern& F,
              const ParkingGeometry& park, bool ignore_forbidden, Moves& out) {
  if (X.empty()) throw AlgorithmError("empty-moving-set");
  const Tolerance& tol = R.tol();
  const double eps = tol.length;
  const int n = static_cast<int>(R.size());
  std::vector<size_t> boundary, outer;
  std::vector<Point> on_top;
  for (size_t i = 0; i < R.size(); ++i) {
    if (R.rn(i) >= 1.0 - eps) boundary.push_back(i);
    if (R.rn(i) >= 1.0 - eps || park.in_ann(R.rn(i), tol)) outer.push_back(i);
    if (park.on_top(R.rn(i), tol)) on_top.push_back(R[i]);
  }
  ForbiddenSet forb = forbidden_points(park.c_top, on_top, n, tol);
  for (size_t r : X) {
    const double th = R.theta(r);
    double beta = kInf;
    for (size_t b : boundary) beta = std::min(beta, cw_offset(R.theta(b), th, tol));
    double gamma = kTwoPi;
    for (size_t s : outer) {
      if (s == r) continue;
      double off = cw_offset(th, R.theta(s), tol);
      if (off > tol.angle) gamma = std::min(gamma, off);
    }
    double alpha = kInf;
    for (double g : F.boundary_gaps())
      if (g > beta + tol.angle) alpha = std::min(alpha, g);
    const double limit = std::min(alpha - beta, gamma);
    const Point a = at_polar(R, park.top, th);
    Trajectory t(R[r]);
    if (ignore_forbidden || !forb.forbidden(th)) {
      t.line_to(a);
    } else {
      double end = std::min(limit, forb.next_cw(th));
      Point q = at_polar(R, park.top, th - end / 2.0);
      Point d = q - R[r], f = R[r] - R.center();
      double rad = park.top * R.radius();
      double A = d.x * d.x + d.y * d.y;
      double B = 2 * (f.x * d.x + f.y * d.y);
      double C = f.x * f.x + f.y * f.y - rad * rad;
      double disc = B * B - 4 * A * C;
      Point target = q;
      if (A > 0 && disc >= 0) {
        double sq = std::sqrt(disc);
        for (double s : {(-B - sq) / (2 * A), (-B + sq) / (2 * A)})
          if (s >= -eps && s <= 1.0 + eps) {
            target = R[r] + d * std::clamp(s, 0.0, 1.0);
            break;
          }
      }
      // land exactly on the circle
      target = at_polar(R, park.top, polar_angle(target, R.center()));
      t.line_to(target);
    }
    out[r] = t;
  }
}

Moves move_m1(const Configuration& R, const Pattern& F) {
  Moves out = nil_moves(R);
  ConcentricLevels lv = levels(R);
  ParkingGeometry park = parking_circles(R, F);
  size_t r = lv.up(1)->members.front();
  if (!R.at_center(r)) {
    out[r].line_to(at_polar(R, park.bottom, R.theta(r)));
    return out;
  }
  const Level* ring = lv.up(2) ? lv.up(2) : lv.down(1);
  std::vector<size_t> members = ring->members;
  double th0 = R.theta(min_view_indices(members, R).front());
  std::vector<double> angles;
  for (size_t i : members)
    if (std::none_of(angles.begin(), angles.end(), [&](double a) { return angle_eq(a, R.theta(i), R.tol()); }))
      angles.push_back(R.theta(i));
  std::sort(angles.begin(), angles.end(),
            [&](double a, double b) { return cw_offset(th0, a, R.tol()) < cw_offset(th0, b, R.tol()); });
  std::vector<double> bisectors;
  for (size_t k = 0; k < angles.size(); ++k) {
    double gap = angles.size() == 1 ? kTwoPi : cw_offset(angles[k], angles[(k + 1) % angles.size()], R.tol());
    bisectors.push_back(angles[k] - gap / 2.0);
  }
  double chosen = bisectors.front();
  for (double b : bisectors) {
    std::vector<Point> pts = R.points();
    pts[r] = at_polar(R, park.bottom, b);
    if (symmetricity(Configuration(pts, R.tol())) == 1) {
      chosen = b;
      break;
    }
  }
  out[r].line_to(at_polar(R, park.bottom, chosen));
  return out;
}

namespace {

std::vector<size_t> gon_filtered_min_view(const Level& lvl, const Configuration& R, const Pattern& F) {
  RegularGonSet M = max_regular_gons({R.center(), lvl.radius * R.radius()}, R, F.rho());
  std::vector<size_t> cand;
  for (size_t i : lvl.members)
    if (std::find(M.union_members.begin(), M.union_members.end(), i) == M.union_members.end()) cand.push_back(i);
  if (cand.empty()) cand = lvl.members;
  return min_view_indices(cand, R);
}

}  // namespace

Moves move_m2(const Configuration& R, const Pattern& F, bool ignore_forbidden) {
  Moves out = nil_moves(R);
  ConcentricLevels lv = levels(R);
  ParkingGeometry park = parking_circles(R, F);
  const Level* inner = nullptr;
  for (const Level& l : lv.circles)
    if (park.in_ann(l.radius, R.tol())) {
      inner = &l;
      break;
    }
  if (!inner) throw AlgorithmError("m2 requires a robot in Ann");
  go_to_ct(gon_filtered_min_view(*inner, R, F), R, F, park, ignore_forbidden, out);
  return out;
}

Moves move_m3(const Configuration& R, const Pattern& F, bool ignore_forbidden) {
  Moves out = nil_moves(R);
  ConcentricLevels lv = levels(R);
  ParkingGeometry park = parking_circles(R, F);
  go_to_ct(gon_filtered_min_view(*lv.down(1), R, F), R, F, park, ignore_forbidden, out);
  return out;
}

Moves move_m4(const Configuration& R, const Pattern& F, bool ignore_forbidden) {
  Moves out = nil_moves(R);
  ConcentricLevels lv = levels(R);
  ParkingGeometry park = parking_circles(R, F);
  std::vector<size_t> cand;
  for (size_t i : lv.down(1)->members)
    if (!is_critical(R[i], R.points(), R.tol())) cand.push_back(i);
  if (cand.empty()) cand = lv.down(1)->members;
  go_to_ct(min_view_indices(cand, R), R, F, park, ignore_forbidden, out);
  return out;
}

Moves move_m5(const Configuration& R, const Pattern& /*F*/) {
  Moves out = nil_moves(R);
  ConcentricLevels lv = levels(R);
  const Level* lower = lv.down(2);
  if (!lower) throw AlgorithmError("m5 requires a second level");
  size_t r = min_view_indices(lower->members, R).front();
  std::vector<Point> occ;
  for (size_t i : lv.down(1)->members) occ.push_back(R[i]);
  ForbiddenSet forb = forbidden_points(R.sec(), occ, static_cast<int>(R.size()), R.tol());
  const double th = R.theta(r);
  bool occupied = std::any_of(lv.down(1)->members.begin(), lv.down(1)->members.end(),
                              [&](size_t i) { return angle_eq(R.theta(i), th, R.tol()); });
  if (R.at_center(r)) throw AlgorithmError("m5 mover at center");
  if (!forb.forbidden(th) && !occupied) {
    out[r].line_to(at_polar(R, 1.0, th));
    return out;
  }
  std::vector<double> fa = forb.sorted();
  double best_off = kInf, best_mid = th;
  for (size_t k = 0; k < fa.size(); ++k) {
    double next = k + 1 < fa.size() ? fa[k + 1] : fa[0] + kTwoPi;
    double mid = normalize_angle((fa[k] + next) / 2.0);
    double off = cw_offset(th, mid, R.tol());
    if (off > R.tol().angle && off < best_off) {
      best_off = off;
      best_mid = mid;
    }
  }
  double s = (R.rn(r) + 1.0) / 2.0;
  out[r].line_to(at_polar(R, s, th));
  out[r].arc_to(R.center(), best_off, true);
  out[r].line_to(at_polar(R, 1.0, best_mid));
  return out;
}

Moves move_m6(const Configuration& R) {
  Moves out = nil_moves(R);
  ConcentricLevels lv = levels(R);
  const auto& b = lv.down(1)->members;
  if (b.size() != 3) throw AlgorithmError("m6 requires exactly three robots on C(R)");
  const Tolerance& tol = R.tol();
  auto inscribed = [&](size_t i, size_t j, size_t k) {
    double arc = cw_offset(R.theta(j), R.theta(k), tol);
    bool contains = cw_offset(R.theta(j), R.theta(i), tol) < arc;
    return (contains ? kTwoPi - arc : arc) / 2.0;
  };
  std::vector<std::pair<double, size_t>> roles;
  for (int k = 0; k < 3; ++k) roles.emplace_back(inscribed(b[k], b[(k + 1) % 3], b[(k + 2) % 3]), b[k]);
  std::vector<ViewSequence> views;
  std::sort(roles.begin(), roles.end(), [&](const auto& x, const auto& y) {
    if (std::abs(x.first - y.first) > tol.angle) return x.first > y.first;
    return compare_views(view_of(x.second, R), view_of(y.second, R), tol) < 0;
  });
  size_t r2 = roles[1].second, r3 = roles[2].second;
  double target = normalize_angle(R.theta(r3) + kPi);
  double dcw = cw_offset(R.theta(r2), target, tol);
  if (dcw <= tol.angle) return out;
  // move away from r3: the arc from r2 to the antipode that avoids r3
  bool cw_hits_r3 = cw_offset(R.theta(r2), R.theta(r3), tol) < dcw;
  if (cw_hits_r3)
    out[r2].arc_to(R.center(), kTwoPi - dcw, false);
  else
    out[r2].arc_to(R.center(), dcw, true);
  return out;
}

Moves move_m9(const Configuration& R, const Pattern& F, bool tangential) {
  Moves out = nil_moves(R);
  ParkingGeometry park = parking_circles(R, F);
  const double eps = R.tol().length;
  for (size_t i = 0; i < R.size(); ++i) {
    if (R.rn(i) < park.top - eps || R.rn(i) >= 1.0 - eps) continue;
    if (tangential)
      out[i].arc_to(R.center(), kPi / static_cast<double>(R.size()), true);
    else
      out[i].line_to(at_polar(R, 1.0, R.theta(i)));
  }
  return out;
}

Moves circle_form(double alpha, const Configuration& R) {
  Moves out = nil_moves(R);
  ConcentricLevels lv = levels(R);
  std::vector<size_t> b = lv.down(1)->members;
  const Tolerance& tol = R.tol();
  std::sort(b.begin(), b.end(), [&](size_t x, size_t y) { return R.theta(x) > R.theta(y); });
  const size_t m = b.size();
  if (m < 2) return out;
  for (size_t k = 0; k < m; ++k) {
    size_t r = b[k], prev = b[(k + m - 1) % m], next = b[(k + 1) % m];
    double gap = cw_offset(R.theta(r), R.theta(next), tol);
    if (gap <= alpha + tol.angle) continue;
    double op = cw_offset(R.theta(r), R.theta(prev) + kPi, tol);
    double oq = gap - alpha;
    double off = std::min(op, oq);
    if (off <= tol.angle) continue;
    out[r].arc_to(R.center(), off, true);
  }
  return out;
}

}  // namespace detail

BasicVariables basic_variables(const Configuration& R, const Pattern& F) {
  if (R.size() != F.size()) throw AlgorithmError("cardinality-mismatch: |R| differs from |F|");
  BasicVariables v;
  v.g = F.rho() == 1 || F.degenerate();
  v.w = similar(R, F.config(), true);
  if (F.degenerate() || R.radius() <= 0) return v;
  const Tolerance& tol = R.tol();
  ConcentricLevels lv = levels(R);
  const Level& outer = *lv.down(1);
  const int B = static_cast<int>(outer.members.size());
  const int rf = F.rho();
  const int mp = min_prime(rf);
  v.d1 = rf % B != 0;
  v.d2 = B != mp;
  v.f = B < mp;
  v.t = B == 3 && rf % 2 == 0;
  v.u = is_regular_gon(outer, R);
  ParkingGeometry park = parking_circles(R, F);
  const Level& inner = *lv.up(1);
  v.c = lv.circles.size() > 1 && inner.members.size() == 1 && inner.radius < park.bottom - tol.length;
  v.a = true;
  for (size_t i = 0; i < R.size(); ++i)
    if (park.in_ann(R.rn(i), tol)) v.a = false;
  v.m = max_regular_gons(R.sec(), R, rf).empty();
  std::vector<Point> proj = R.points();
  for (size_t i = 0; i < R.size(); ++i)
    if (R.rn(i) >= park.top - tol.length && R.rn(i) < 1.0 - tol.length)
      proj[i] = detail::at_polar(R, 1.0, R.theta(i));
  v.p = similar(Configuration(proj, tol), F.config(), true);
  return v;
}

PredicateVector predicates(const BasicVariables& v, bool swap_t8_t9) {
  PredicateVector pv;
  auto& pre = pv.pre;
  pre[0] = true;
  pre[1] = !v.c;
  pre[2] = v.a && !v.c;
  pre[3] = v.a && !v.c && v.m;
  pre[4] = !v.c && v.f;
  pre[5] = v.a && !v.c && v.m && v.t;
  pre[6] = v.a && !v.d2 && !v.u;
  pre[7] = v.a && !v.d1 && v.u;
  pre[8] = !v.m && v.p;
  pre[9] = v.g;
  pre[10] = v.w;
  std::array<int, 11> order{10, 9, 8, 7, 6, 5, 4, 3, 2, 1, 0};
  if (swap_t8_t9) std::swap(order[2], order[3]);
  for (int i : order) {
    if (pre[i]) {
      pv.predicate[i] = true;
      break;
    }
  }
  return pv;
}

PredicateVector predicates(const Configuration& R, const Pattern& F) {
  return predicates(basic_variables(R, F));
}

TaskId classify(const Configuration& R, const Pattern& F, const AlgoOptions& opt) {
  return predicates(basic_variables(R, F), opt.mutations.swap_t8_t9).task();
}

namespace {

Configuration normalized(const Configuration& R) {
  return Configuration(normalized_points(R), R.tol());
}

std::vector<MoveDirective> denormalize(const Configuration& R, const detail::Moves& moves) {
  Similarity s;
  s.origin = R.center();
  s.scale = R.radius() > 0 ? 1.0 / R.radius() : 1.0;
  std::vector<MoveDirective> out;
  out.reserve(R.size());
  for (size_t i = 0; i < R.size(); ++i) {
    Trajectory t = transform_inverse(moves[i], s);
    t.start = R[i];
    if (!t.legs.empty()) {
      if (t.legs.front().kind == Leg::Kind::Segment) t.legs.front().seg.from = R[i];
    }
    out.push_back({R[i], t});
  }
  return out;
}

}  // namespace

ComputeResult compute(const Configuration& R, const Pattern& F, const AlgoOptions& opt) {
  ComputeResult res;
  Configuration Rn = normalized(R);
  res.task = classify(Rn, F, opt);
  const Mutations& mu = opt.mutations;
  detail::Moves moves;
  switch (res.task) {
    case TaskId::T1: moves = detail::move_m1(Rn, F); break;
    case TaskId::T2: moves = detail::move_m2(Rn, F, mu.gotoc_ignore_forbidden); break;
    case TaskId::T3: moves = detail::move_m3(Rn, F, mu.gotoc_ignore_forbidden); break;
    case TaskId::T4: moves = detail::move_m4(Rn, F, mu.gotoc_ignore_forbidden); break;
    case TaskId::T5: moves = detail::move_m5(Rn, F); break;
    case TaskId::T6: moves = detail::move_m6(Rn); break;
    case TaskId::T7:
      moves = detail::circle_form(kTwoPi / static_cast<double>(levels(Rn).down(1)->members.size()), Rn);
      break;
    case TaskId::T8: moves = detail::distmin(Rn, F); break;
    case TaskId::T9: moves = detail::move_m9(Rn, F, mu.m9_tangential); break;
    case TaskId::T10: {
      const DelegateSolvers* d = opt.delegates;
      if (d && F.degenerate() && d->gathering) {
        res.moves = d->gathering(R, F);
        return res;
      }
      if (d && !F.degenerate() && d->leader) {
        res.moves = d->leader(R, F);
        return res;
      }
      throw DelegatedUnsupported("delegated-unsupported: pattern requires an external solver");
    }
    case TaskId::T11: moves = detail::nil_moves(Rn); break;
  }
  res.moves = denormalize(R, moves);
  return res;
}

std::vector<MoveDirective> go_to_ct(const std::vector<Point>& Rx, const Configuration& R, const Pattern& F,
                                    const AlgoOptions& opt) {
  detail::Moves out = detail::nil_moves(R);
  detail::go_to_ct(detail::indices_of(Rx, R), R, F, parking_circles(R, F),
                   opt.mutations.gotoc_ignore_forbidden, out);
  return detail::to_directives(R, out);
}

std::vector<MoveDirective> distmin(const Configuration& R, const Pattern& F) {
  return detail::to_directives(R, detail::distmin(R, F));
}

std::vector<MoveDirective> circle_form(double alpha, const Configuration& R) {
  return detail::to_directives(R, detail::circle_form(alpha, R));
}

std::vector<MoveDirective> move_m1(const Configuration& R, const Pattern& F) {
  return detail::to_directives(R, detail::move_m1(R, F));
}
std::vector<MoveDirective> move_m2(const Configuration& R, const Pattern& F, const AlgoOptions& opt) {
  return detail::to_directives(R, detail::move_m2(R, F, opt.mutations.gotoc_ignore_forbidden));
}
std::vector<MoveDirective> move_m3(const Configuration& R, const Pattern& F, const AlgoOptions& opt) {
  return detail::to_directives(R, detail::move_m3(R, F, opt.mutations.gotoc_ignore_forbidden));
}
std::vector<MoveDirective> move_m4(const Configuration& R, const Pattern& F, const AlgoOptions& opt) {
  return detail::to_directives(R, detail::move_m4(R, F, opt.mutations.gotoc_ignore_forbidden));
}
std::vector<MoveDirective> move_m5(const Configuration& R, const Pattern& F) {
  return detail::to_directives(R, detail::move_m5(R, F));
}
std::vector<MoveDirective> move_m6(const Configuration& R) {
  return detail::to_directives(R, detail::move_m6(R));
}
std::vector<MoveDirective> move_m9(const Configuration& R, const Pattern& F, const AlgoOptions& opt) {
  return detail::to_directives(R, detail::move_m9(R, F, opt.mutations.m9_tangential));
}

}  // namespace pf
