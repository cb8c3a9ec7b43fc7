#pragma once

#include <vector>

#include "pf/algorithm.hpp"

namespace pf::detail {

// one trajectory per robot, aligned with the configuration order
using Moves = std::vector<Trajectory>;

Point at_polar(const Configuration& R, double rn, double theta);
Moves nil_moves(const Configuration& R);
std::vector<MoveDirective> to_directives(const Configuration& R, const Moves& moves);
std::vector<size_t> indices_of(const std::vector<Point>& pts, const Configuration& R);

void go_to_ct(const std::vector<size_t>& X, const Configuration& R, const Pattern& F,
              const ParkingGeometry& park, bool ignore_forbidden, Moves& out);

Moves move_m1(const Configuration& R, const Pattern& F);
Moves move_m2(const Configuration& R, const Pattern& F, bool ignore_forbidden);
Moves move_m3(const Configuration& R, const Pattern& F, bool ignore_forbidden);
Moves move_m4(const Configuration& R, const Pattern& F, bool ignore_forbidden);
Moves move_m5(const Configuration& R, const Pattern& F);
Moves move_m6(const Configuration& R);
Moves move_m9(const Configuration& R, const Pattern& F, bool tangential);
Moves circle_form(double alpha, const Configuration& R);
Moves distmin(const Configuration& R, const Pattern& F);

}  // namespace pf::detail
