#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "pf/geometry.hpp"

namespace pf {

// A multiset of robot positions with its smallest enclosing circle.
// Polar data is kept about c(R) with distances divided by the SEC radius.
class Configuration {
 public:
  explicit Configuration(const std::vector<Point>& pts, const Tolerance& tol = default_tolerance());

  size_t size() const { return points_.size(); }
  const std::vector<Point>& points() const { return points_; }
  const Point& operator[](size_t i) const { return points_[i]; }
  const Circle& sec() const { return sec_; }
  const Point& center() const { return sec_.center; }
  double radius() const { return sec_.radius; }
  const Tolerance& tol() const { return tol_; }

  // normalized distance to c(R) and polar angle about c(R)
  double rn(size_t i) const { return rn_[i]; }
  double theta(size_t i) const { return theta_[i]; }
  bool at_center(size_t i) const { return rn_[i] <= tol_.length; }

  int multiplicity(const Point& p) const;
  int multiplicity_of(size_t i) const;
  int center_multiplicity() const;
  int max_multiplicity() const;
  std::ptrdiff_t index_of(const Point& p) const;

 private:
  std::vector<Point> points_;
  Circle sec_;
  Tolerance tol_;
  std::vector<double> rn_;
  std::vector<double> theta_;
};

struct Level {
  double radius = 0.0;  // normalized
  std::vector<size_t> members;
};

struct ConcentricLevels {
  std::vector<Level> circles;  // increasing radius; last one is C(R)

  // C↑i, 1-based from the innermost
  const Level* up(size_t i) const;
  // C↓i, 1-based from C(R)
  const Level* down(size_t i) const;
  Circle circle(const Configuration& R, const Level& l) const;
};

ConcentricLevels levels(const Configuration& R);

int symmetricity(const Configuration& R);
std::vector<int> rotation_orders(const Configuration& R);

struct ViewSequence {
  bool center = false;
  std::vector<std::pair<double, double>> couples;
};

ViewSequence view_of(size_t i, const Configuration& R);
ViewSequence view(const Point& p, const Configuration& R);
// negative, zero or positive like a three-way comparison
int compare_views(const ViewSequence& a, const ViewSequence& b, const Tolerance& tol);

std::vector<size_t> min_view_indices(const std::vector<size_t>& S, const Configuration& R);
std::vector<Point> min_view_robots(const std::vector<Point>& S, const Configuration& R);
// minimal views closer than 10 eps to a different view
bool ill_conditioned(const Configuration& R);

struct RegularGonSet {
  std::vector<std::vector<size_t>> gons;  // one index per vertex
  std::vector<size_t> union_members;      // every index located on some vertex
  bool empty() const { return gons.empty(); }
};

RegularGonSet max_regular_gons(const Circle& C, const Configuration& R, int rho_F);
// distinct points on the level are equally spaced with equal multiplicities
bool is_regular_gon(const Level& l, const Configuration& R);

std::vector<Point> normalized_points(const Configuration& R);
// shape equality up to translation, rotation, uniform scale, optionally reflection
bool similar(const Configuration& A, const Configuration& B, bool allow_reflection = true);

}  // namespace pf
