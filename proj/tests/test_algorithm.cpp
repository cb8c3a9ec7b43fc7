#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "pf/algorithm.hpp"
#include "pf/verifier.hpp"

using namespace pf;

namespace {

std::vector<Point> gon(int m, double r, double phase) {
  std::vector<Point> out;
  for (int k = 0; k < m; ++k) out.push_back(from_polar({0, 0}, r, phase + kTwoPi * k / m));
  return out;
}

std::vector<Point> cat(std::vector<Point> a, const std::vector<Point>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

double deg(double d) { return d * kPi / 180.0; }

std::vector<Point> completed(const std::vector<MoveDirective>& moves) {
  std::vector<Point> out;
  for (const MoveDirective& m : moves) out.push_back(m.trajectory.end());
  return out;
}

int non_nil(const std::vector<MoveDirective>& moves) {
  int k = 0;
  for (const MoveDirective& m : moves) k += !m.trajectory.nil();
  return k;
}

struct Snap {
  std::vector<Point> pos;
  std::vector<Point> pattern;
};

// stationary snapshots from fully synchronous runs of generated scenarios
const std::vector<Snap>& fsync_snapshots() {
  static const std::vector<Snap> snaps = [] {
    std::vector<Snap> out;
    for (int i = 0; i < 40; ++i) {
      int rho = 2 + i % 4;
      Scenario s = generate_scenario(rho * (1 + i % 3) + (rho < 3 ? rho : 0), rho, 500 + static_cast<std::uint64_t>(i));
      s.scheduler.kind = SchedulerKind::FSync;
      s.scheduler.rigid = true;
      s.limits.max_events = 20000;
      RunResult r = run(s);
      for (const Snapshot& sn : snapshots(r.trace)) out.push_back({sn.pos, s.pattern});
    }
    return out;
  }();
  return snaps;
}

}  // namespace

TEST(MinPrime, Values) {
  EXPECT_EQ(min_prime(4), 2);
  EXPECT_EQ(min_prime(9), 3);
  EXPECT_EQ(min_prime(7), 7);
  EXPECT_EQ(min_prime(1), 1);
}

TEST(BasicVariables, RegularSquareOnBoundary) {
  Configuration R(cat(gon(4, 1.0, 0.1), {{0.3, 0.1}, {-0.2, 0.25}, {0.05, -0.4}, {0.1, 0.1}}));
  Pattern F(cat(gon(4, 1.0, 0.0), gon(4, 0.5, 0.3)));
  BasicVariables v = basic_variables(R, F);
  EXPECT_FALSE(v.d1);
  EXPECT_TRUE(v.d2);
  EXPECT_TRUE(v.u);
  EXPECT_FALSE(v.f);
  EXPECT_FALSE(v.g);
  EXPECT_FALSE(v.w);
}

TEST(BasicVariables, GatheringPatternAndSimilarity) {
  Configuration R(cat(gon(3, 1.0, 0.0), {{0.2, 0.1}}));
  EXPECT_TRUE(basic_variables(R, Pattern(std::vector<Point>(4, Point{2, 2}))).g);
  std::vector<Point> F;
  for (const Point& p : R.points()) F.push_back(rotate_about(p, {0, 0}, 0.7) * 4.0 + Point(1, -3));
  EXPECT_TRUE(basic_variables(R, Pattern(F)).w);
  EXPECT_THROW(basic_variables(R, Pattern(gon(5, 1.0, 0.0))), AlgorithmError);
}

TEST(Predicates, PriorityAndSwap) {
  BasicVariables v;
  EXPECT_EQ(predicates(v).task(), TaskId::T2);  // !c alone
  v.c = true;
  EXPECT_EQ(predicates(v).task(), TaskId::T1);
  v = {};
  v.w = true;
  v.g = true;
  EXPECT_EQ(predicates(v).task(), TaskId::T11);
  v = {};
  v.a = true;
  v.u = true;
  v.p = true;
  EXPECT_EQ(predicates(v).task(), TaskId::T9);
  EXPECT_EQ(predicates(v, true).task(), TaskId::T8);
}

TEST(Predicates, ExactlyOneOnAllValuations) {
  for (int mask = 0; mask < (1 << 11); ++mask) {
    BasicVariables v;
    bool* bits[] = {&v.d1, &v.d2, &v.f, &v.t, &v.u, &v.c, &v.a, &v.m, &v.p, &v.g, &v.w};
    for (int k = 0; k < 11; ++k) *bits[k] = (mask >> k) & 1;
    PredicateVector pv = predicates(v);
    ASSERT_EQ(pv.true_count(), 1);
    EXPECT_TRUE(pv.pre[static_cast<size_t>(task_index(pv.task()) - 1)]);
  }
}

TEST(Classify, CenterRobotWithFiveOnBoundaryIsT1) {
  std::vector<Point> R = {{0, 0}, from_polar({0, 0}, 1, 0.0),  from_polar({0, 0}, 1, 1.1),
                          from_polar({0, 0}, 1, 2.3), from_polar({0, 0}, 1, 3.9), from_polar({0, 0}, 1, 5.0),
                          {0.3, 0.2}, {-0.1, -0.45}};
  Pattern F(cat(gon(4, 1.0, 0.0), gon(4, 0.5, 0.4)));
  Configuration C(R);
  EXPECT_EQ(classify(C, F), TaskId::T1);
  ComputeResult res = compute(C, F);
  EXPECT_EQ(res.task, TaskId::T1);
  ASSERT_EQ(non_nil(res.moves), 1);
  ParkingGeometry park = parking_circles(C, F);
  for (const MoveDirective& m : res.moves) {
    if (m.trajectory.nil()) continue;
    ASSERT_EQ(m.trajectory.legs.size(), 1u);
    EXPECT_TRUE(m.trajectory.legs[0].radial_about(C.center()));
    EXPECT_NEAR(dist(m.trajectory.end(), C.center()), park.bottom * C.radius(), 1e-12);
    EXPECT_EQ(symmetricity(Configuration(completed(res.moves))), 1);
  }
}

TEST(Compute, FormedSnapshotIsNil) {
  auto F = cat(gon(3, 1.0, 0.0), gon(3, 0.4, 0.5));
  ComputeResult res = compute(Configuration(F), Pattern(F));
  EXPECT_EQ(res.task, TaskId::T11);
  EXPECT_EQ(non_nil(res.moves), 0);
}

TEST(Compute, T9MovesRadiallyAndCompletes) {
  std::vector<Point> R = {from_polar({0, 0}, 1, deg(0)),   from_polar({0, 0}, 1, deg(60)),
                          from_polar({0, 0}, 1, deg(120)), from_polar({0, 0}, 1, deg(180)),
                          from_polar({0, 0}, 0.7, deg(240)), from_polar({0, 0}, 0.8, deg(300))};
  Pattern F(gon(6, 1.0, 0.3));
  Configuration C(R);
  ComputeResult res = compute(C, F);
  ASSERT_EQ(res.task, TaskId::T9);
  EXPECT_EQ(non_nil(res.moves), 2);
  for (size_t i = 4; i < 6; ++i) {
    ASSERT_EQ(res.moves[i].trajectory.legs.size(), 1u);
    EXPECT_TRUE(res.moves[i].trajectory.legs[0].radial_about(C.center()));
  }
  EXPECT_TRUE(basic_variables(Configuration(completed(res.moves)), F).w);
}

TEST(GoToCT, RadialProjectionWhenFree) {
  Configuration R({{0, 6}, {0, -6}, {2, 0}, {-1, 1}});
  Pattern F(gon(4, 1.0, 0.0));
  auto moves = go_to_ct({{2, 0}}, R, F);
  ASSERT_EQ(non_nil(moves), 1);
  EXPECT_TRUE(same_point(moves[2].trajectory.end(), {3, 0}));
}

TEST(GoToCT, AvoidsForbiddenProjection) {
  // a robot already on C^T makes the projection of the other robot forbidden
  Configuration R({{0, 1}, {0, -1}, {0.5, 0}, {0.2 * std::cos(kPi / 2 * 3), 0.2 * std::sin(kPi / 2 * 3) + 1e-3}});
  Pattern F(gon(4, 1.0, 0.0));
  Point mover = R[3];
  auto moves = go_to_ct({mover}, R, F);
  Point end = moves[3].trajectory.end();
  ForbiddenSet forb = forbidden_points({{0, 0}, 0.5}, {{0.5, 0}}, 4);
  EXPECT_TRUE(forb.forbidden(polar_angle(mover)));
  EXPECT_NEAR(norm(end), 0.5, 1e-12);
  EXPECT_FALSE(forb.forbidden(end));
  double off = cw_offset(polar_angle(mover), polar_angle(end));
  EXPECT_GT(off, 1e-6);
  EXPECT_LT(off, forb.next_cw(polar_angle(mover)));
}

TEST(CircleForm, RegularPolygonIsFixed) {
  Configuration R(cat(gon(5, 1.0, 0.2), {{0.1, 0.1}}));
  EXPECT_EQ(non_nil(circle_form(kTwoPi / 5, R)), 0);
}

TEST(CircleForm, WidestGapClosesClockwise) {
  Configuration R({from_polar({0, 0}, 1, deg(90)), from_polar({0, 0}, 1, deg(0)), from_polar({0, 0}, 1, deg(180)),
                   {0.1, 0.2}});
  auto moves = circle_form(deg(120), R);
  ASSERT_EQ(non_nil(moves), 1);
  ASSERT_FALSE(moves[1].trajectory.nil());
  EXPECT_NEAR(polar_angle(moves[1].trajectory.end()), deg(300), 1e-12);
  EXPECT_TRUE(moves[1].trajectory.legs[0].arc.clockwise);
}

TEST(CircleForm, ConvergesToRegularPolygon) {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    int m = 3 + static_cast<int>(rng() % 4);
    std::vector<Point> pts;
    for (int k = 0; k < m; ++k) pts.push_back(from_polar({0, 0}, 1, kTwoPi * (k + 0.45 * U(rng)) / m));
    pts.push_back({0.05, 0.02});
    Circle c0 = Configuration(pts).sec();
    for (int step = 0; step < 200; ++step) {
      auto moves = circle_form(kTwoPi / m, Configuration(pts));
      if (non_nil(moves) == 0) break;
      pts = completed(moves);
      EXPECT_TRUE(same_circle(Configuration(pts).sec(), c0, Tolerance(1e-9, 1e-9)));
    }
    Configuration R(pts);
    EXPECT_TRUE(is_regular_gon(*levels(R).down(1), R)) << "trial " << trial;
  }
}

TEST(MoveM6, MakesADiameter) {
  // inscribed angles 80°, 60°, 40° at A, B, C
  Configuration R({from_polar({0, 0}, 1, deg(0)), from_polar({0, 0}, 1, deg(80)), from_polar({0, 0}, 1, deg(240)),
                   {0.1, 0.1}, {-0.2, 0.05}, {0.0, -0.3}});
  auto moves = move_m6(R);
  ASSERT_EQ(non_nil(moves), 1);
  EXPECT_FALSE(moves[1].trajectory.nil());
  auto after = completed(moves);
  EXPECT_TRUE(same_point(after[1], Point{0, 0} - after[2], Tolerance(1e-9, 1e-9)));
  EXPECT_TRUE(same_circle(Configuration(after).sec(), R.sec()));
}

TEST(MoveM1, OffCenterInnermostGoesToBottom) {
  Configuration R(cat(gon(3, 1.0, 0.0), {{0.05, 0.02}, {0.4, 0.3}, {-0.5, 0.1}, {0.2, -0.6}, {-0.1, 0.6}}));
  Pattern F(cat(gon(4, 1.0, 0.0), gon(4, 0.5, 0.4)));
  ASSERT_EQ(classify(R, F), TaskId::T1);
  auto moves = move_m1(R, F);
  ASSERT_EQ(non_nil(moves), 1);
  ParkingGeometry park = parking_circles(R, F);
  EXPECT_NEAR(norm(moves[3].trajectory.end()), park.bottom, 1e-12);
  EXPECT_NEAR(polar_angle(moves[3].trajectory.end()), polar_angle(R[3]), 1e-12);
}

TEST(Compute, LcsInvariance) {
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const auto& snaps = fsync_snapshots();
  ASSERT_GT(snaps.size(), 100u);
  for (size_t k = 0; k < snaps.size(); k += 3) {
    Pattern F(snaps[k].pattern);
    Configuration R(snaps[k].pos);
    ComputeResult base = compute(R, F);
    Similarity s{{U(rng) * 4 - 2, U(rng) * 4 - 2}, U(rng) * kTwoPi, 0.2 + 5 * U(rng)};
    std::vector<Point> moved;
    for (const Point& p : snaps[k].pos) moved.push_back(s.apply(p));
    ComputeResult other = compute(Configuration(moved), F);
    ASSERT_EQ(other.task, base.task);
    for (size_t i = 0; i < R.size(); ++i) {
      Point a = base.moves[i].trajectory.end(), b = s.invert(other.moves[i].trajectory.end());
      EXPECT_LE(dist(a, b), 1e-9) << "snapshot " << k << " robot " << i;
    }
  }
}

TEST(Compute, KeepsEnclosingCircleAndSymmetricityDivisor) {
  int seen[12] = {};
  for (const Snap& sn : fsync_snapshots()) {
    Pattern F(sn.pattern);
    Configuration R(sn.pos);
    ComputeResult res = compute(R, F);
    ++seen[task_index(res.task)];
    ASSERT_NE(res.task, TaskId::T10);
    Configuration after(completed(res.moves));
    EXPECT_TRUE(same_circle(after.sec(), R.sec(), Tolerance(1e-9, 1e-9))) << task_name(res.task);
    EXPECT_EQ(F.rho() % symmetricity(after), 0) << task_name(res.task);
    for (size_t i = 0; i < R.size(); ++i) EXPECT_TRUE(res.moves[i].trajectory.contiguous());
  }
  EXPECT_GT(seen[task_index(TaskId::T8)], 0);
  EXPECT_GT(seen[task_index(TaskId::T11)], 0);
}

TEST(Compute, GoToCTargetsAreFreeAndAllowed) {
  int checked = 0;
  for (const Snap& sn : fsync_snapshots()) {
    Pattern F(sn.pattern);
    Configuration R(sn.pos);
    TaskId t = classify(R, F);
    if (t != TaskId::T2 && t != TaskId::T3 && t != TaskId::T4) continue;
    ParkingGeometry park = parking_circles(R, F);
    std::vector<Point> on_top;
    for (size_t i = 0; i < R.size(); ++i)
      if (park.on_top(R.rn(i))) on_top.push_back(R[i]);
    ForbiddenSet forb = forbidden_points(park.c_top, on_top, static_cast<int>(R.size()));
    auto after = completed(compute(R, F).moves);
    for (size_t i = 0; i < R.size(); ++i) {
      if (same_point(after[i], R[i])) continue;
      EXPECT_NEAR(dist(after[i], R.center()), park.c_top.radius, 1e-9);
      EXPECT_FALSE(forb.forbidden(after[i]));
      for (size_t j = 0; j < R.size(); ++j)
        if (j != i) EXPECT_GT(dist(after[i], after[j]), 1e-9);
      ++checked;
    }
  }
  EXPECT_GT(checked, 0);
}

TEST(Compute, DelegatedPatternIsRefusedWithoutSolver) {
  Configuration R({{1, 0}, {-1, 0}, {0.2, 0.3}});
  Pattern F({{0, 0}, {1, 0}, {0.3, 0.4}});
  ASSERT_EQ(classify(R, F), TaskId::T10);
  EXPECT_THROW(compute(R, F), DelegatedUnsupported);
  DelegateSolvers d;
  d.leader = [](const Configuration& C, const Pattern&) {
    std::vector<MoveDirective> out;
    for (const Point& p : C.points()) out.push_back({p, Trajectory(p)});
    return out;
  };
  AlgoOptions opt;
  opt.delegates = &d;
  EXPECT_EQ(compute(R, F, opt).moves.size(), 3u);
}
