#include <algorithm>
#include <limits>

#include "algorithm_internal.hpp"

namespace pf::detail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// radial half-step toward the next occupied circle below, or toward c(R)
void inward_half_step(const Configuration& R, size_t r, Moves& out) {
  double below = 0.0;
  for (size_t j = 0; j < R.size(); ++j)
    if (R.rn(j) < R.rn(r) - R.tol().length) below = std::max(below, R.at_center(j) ? 0.0 : R.rn(j));
  out[r] = Trajectory(R[r]);
  out[r].line_to(at_polar(R, (R.rn(r) + below) / 2.0, R.theta(r)));
}

// clockwise half-rotation toward the nearest robot-ray or robot on the same circle
void clockwise_half_step(const Configuration& R, const Sector& S, size_t r, Moves& out) {
  const Tolerance& tol = R.tol();
  double limit = cw_offset(R.theta(r), S.trailing(), tol);
  if (limit <= tol.angle) limit = S.span;
  for (size_t j = 0; j < R.size(); ++j) {
    if (j == r || R[j] == R[r] || R.at_center(j)) continue;
    if (std::abs(R.rn(j) - R.rn(r)) > tol.length) continue;
    double off = cw_offset(R.theta(r), R.theta(j), tol);
    if (off > tol.angle) limit = std::min(limit, off);
  }
  out[r] = Trajectory(R[r]);
  out[r].arc_to(R.center(), limit / 2.0, true);
}

}  // namespace

Moves distmin(const Configuration& R, const Pattern& F) {
  Moves out = nil_moves(R);
  const Tolerance& tol = R.tol();
  const double eps = tol.length;
  const double sc = R.radius() > 0 ? R.radius() : 1.0;
  ParkingGeometry park = parking_circles(R, F);
  Embedding e = embed_pattern(R, F);
  ModifiedPattern Fp = modified_pattern(R, F, e);

  const int center_r = R.center_multiplicity();
  int center_f = 0;
  for (const Point& f : Fp.points)
    if (dist(f, R.center()) <= eps * sc) ++center_f;

  if (center_r < center_f) {
    std::vector<size_t> cand;
    double best = kInf;
    for (size_t i = 0; i < R.size(); ++i)
      if (!R.at_center(i) && R.rn(i) <= park.top + eps) best = std::min(best, R.rn(i));
    for (size_t i = 0; i < R.size(); ++i)
      if (!R.at_center(i) && R.rn(i) <= best + eps) cand.push_back(i);
    if (!cand.empty()) {
      size_t r = min_view_indices(cand, R).front();
      out[r].line_to(R.center());
    }
    return out;
  }

  std::vector<Sector> secs = sectors(R, park);
  std::vector<SectorBook> books;
  books.reserve(secs.size());
  for (const Sector& s : secs) books.push_back(sector_bookkeeping(s, R, Fp));

  bool any_both = std::any_of(books.begin(), books.end(), [](const SectorBook& b) {
    return !b.unmatched_robots.empty() && !b.unmatched_targets.empty();
  });
  if (any_both) {
    for (const SectorBook& b : books) {
      if (b.unmatched_robots.empty() || b.unmatched_targets.empty() || !b.elected) continue;
      size_t r = *b.elected;
      if (!b.blocked) {
        out[r] = b.elected_path;
        continue;
      }
      const Point& t = *b.elected_target;
      double rt = dist(t, R.center()) / sc;
      if (std::abs(rt - R.rn(r)) <= eps)
        inward_half_step(R, r, out);
      else
        clockwise_half_step(R, b.sector, r, out);
    }
    return out;
  }

  bool any_robots = std::any_of(books.begin(), books.end(),
                                [](const SectorBook& b) { return !b.unmatched_robots.empty(); });
  if (any_robots) {
    for (const SectorBook& b : books) {
      if (b.unmatched_robots.empty()) continue;
      CrossSector cs = cross_sector(b, R);
      if (cs.elected) {
        out[*cs.elected].arc_to(R.center(), cs.offset, true);
      } else {
        inward_half_step(R, min_view_indices(b.unmatched_robots, R).front(), out);
      }
    }
    return out;
  }

  if (center_r > center_f) {
    // the remaining unmatched target closest to the center
    std::optional<Point> target;
    double best = kInf;
    for (const SectorBook& b : books)
      for (const Point& f : b.unmatched_targets) {
        double rf = dist(f, R.center());
        if (rf < best - eps * sc) {
          best = rf;
          target = f;
        }
      }
    if (target) {
      double th = polar_angle(*target, R.center());
      for (size_t i = 0; i < R.size(); ++i)
        if (R.at_center(i)) out[i].line_to(at_polar(R, park.bottom, th));
    }
  }
  return out;
}

}  // namespace pf::detail
