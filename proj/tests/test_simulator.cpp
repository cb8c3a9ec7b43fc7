#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "oracles.hpp"
#include "pf/scenario_io.hpp"
#include "pf/simulator.hpp"
#include "pf/verifier.hpp"

using namespace pf;

namespace {

Point P(double r, double deg) { return from_polar({0, 0}, r, deg * kPi / 180.0); }

Scenario generated(int n, int rho, std::uint64_t seed, SchedulerKind k, bool rigid = false) {
  Scenario s = generate_scenario(n, rho, seed);
  s.scheduler.kind = k;
  s.scheduler.rigid = rigid;
  s.scheduler.seed = seed * 7 + 1;
  return s;
}

// one robot at the center, five on C(R), two in the parking annulus, the rest inside
Scenario running_example() {
  Scenario s;
  s.robots = {{0, 0},       P(1, 10),     P(1, 75),      P(1, 150),     P(1, 215),     P(1, 290),
              P(0.95, 40),  P(0.96, 250), P(0.6, 20),    P(0.55, 100),  P(0.5, 170),   P(0.45, 230),
              P(0.62, 310), P(0.3, 60),   P(0.35, 200),  P(0.28, 330)};
  for (double r : {1.0, 0.8, 0.5, 0.3})
    for (int k = 0; k < 4; ++k) s.pattern.push_back(P(r, k * 90 + r * 37));
  s.scheduler.kind = SchedulerKind::FSync;
  s.scheduler.rigid = true;
  return s;
}

std::vector<TaskId> class_sequence(const ExecutionTrace& t) {
  std::vector<TaskId> seq;
  for (const Snapshot& s : snapshots(t))
    if (seq.empty() || seq.back() != s.label) seq.push_back(s.label);
  return seq;
}

bool is_subsequence(const std::vector<TaskId>& a, const std::vector<int>& b) {
  size_t j = 0;
  for (TaskId t : a) {
    while (j < b.size() && b[j] != task_index(t)) ++j;
    if (j == b.size()) return false;
    ++j;
  }
  return true;
}

}  // namespace

TEST(Run, AlreadyFormedStopsAtFirstLook) {
  Scenario s;
  s.robots = {{1, 0}, {-0.5, 0.8}, {-0.4, -0.7}, {0.1, 0.2}};
  for (const Point& p : s.robots) s.pattern.push_back(rotate_about(p, {0, 0}, 1.0) * 3.0);
  RunResult r = run(s);
  EXPECT_EQ(r.outcome, Outcome::Formed);
  ASSERT_FALSE(r.trace.records.empty());
  EXPECT_EQ(r.trace.records[0].e, 0);
  EXPECT_EQ(r.trace.records[0].task, TaskId::T11);
  for (const TraceRecord& rec : r.trace.records) EXPECT_NE(rec.k, EventKind::MoveStart);
}

TEST(Run, SymmetricityMismatchIsUnsolvable) {
  Scenario s;
  for (int k = 0; k < 3; ++k) {
    s.robots.push_back(P(1, 120 * k));
    s.robots.push_back(P(0.5, 120 * k + 30));
  }
  ASSERT_EQ(symmetricity(Configuration(s.robots)), 3);
  for (int k = 0; k < 4; ++k) s.pattern.push_back(P(1, 90 * k));
  s.pattern.push_back({0.1, 0});
  s.pattern.push_back({-0.1, 0});
  ASSERT_EQ(Pattern(s.pattern).rho(), 2);
  RunResult r = run(s);
  EXPECT_EQ(r.outcome, Outcome::UnsolvableInput);
  EXPECT_TRUE(r.trace.records.empty());
}

TEST(Run, RunningExampleUnderFsync) {
  RunResult r = run(running_example());
  ASSERT_EQ(r.outcome, Outcome::Formed);
  auto seq = class_sequence(r.trace);
  EXPECT_TRUE(is_subsequence(seq, {1, 2, 4, 6, 3, 2, 8, 9, 11}));
  EXPECT_EQ(seq.front(), TaskId::T1);
  EXPECT_EQ(seq.back(), TaskId::T11);
  EXPECT_TRUE(check_trace(r.trace, Pattern(running_example().pattern)).empty());
}

TEST(Run, Deterministic) {
  Scenario s = generated(9, 3, 21, SchedulerKind::Async);
  EXPECT_EQ(emit_trace(run(s).trace), emit_trace(run(s).trace));
  Scenario t = s;
  t.scheduler.seed += 1;
  EXPECT_NE(emit_trace(run(s).trace), emit_trace(run(t).trace));
}

TEST(Run, InvalidScenarios) {
  Scenario s = generated(6, 3, 4, SchedulerKind::Async);
  Scenario bad = s;
  bad.pattern.pop_back();
  EXPECT_THROW(run(bad), InvalidScenario);
  bad = s;
  bad.robots[1] = bad.robots[0];
  EXPECT_THROW(run(bad), InvalidScenario);
  bad = s;
  bad.scheduler.nu = 0;
  EXPECT_THROW(run(bad), InvalidScenario);
}

TEST(Scheduler, FsyncRoundsAreLockstep) {
  Scenario s = generated(8, 4, 3, SchedulerKind::FSync);
  RunResult r = run(s);
  ASSERT_EQ(r.outcome, Outcome::Formed);
  std::map<double, std::set<int>> lookers;
  for (const TraceRecord& rec : r.trace.records)
    if (rec.k == EventKind::Look) lookers[rec.t].insert(rec.r);
  ASSERT_GT(lookers.size(), 2u);
  auto last = std::prev(lookers.end());
  for (auto it = lookers.begin(); it != last; ++it) EXPECT_EQ(it->second.size(), s.robots.size()) << it->first;
}

TEST(Scheduler, SsyncNeverSeesMovingRobots) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    RunResult r = run(generated(6, 2, seed, SchedulerKind::SSync));
    EXPECT_EQ(r.outcome, Outcome::Formed);
    std::map<long, const TraceRecord*> looks;
    for (const TraceRecord& rec : r.trace.records) {
      if (rec.k != EventKind::Look) continue;
      looks[rec.e] = &rec;
      // only plans computed in the same round are outstanding, and those robots have not moved yet
      for (const PendingSummary& p : rec.pending) {
        const TraceRecord* src = looks.at(p.source_event);
        EXPECT_EQ(src->t, rec.t);
        EXPECT_EQ(src->pos[static_cast<size_t>(p.robot)], rec.pos[static_cast<size_t>(p.robot)]);
      }
    }
  }
}

TEST(Scheduler, AsyncSeesRobotsMidMove) {
  int interior = 0;
  for (std::uint64_t seed = 1; seed <= 10 && interior == 0; ++seed) {
    RunResult r = run(generated(6, 3, seed, SchedulerKind::Async));
    std::map<long, const TraceRecord*> looks;
    for (const TraceRecord& rec : r.trace.records) {
      if (rec.k != EventKind::Look) continue;
      looks[rec.e] = &rec;
      for (const PendingSummary& p : rec.pending) {
        const Point& here = rec.pos[static_cast<size_t>(p.robot)];
        EXPECT_TRUE(same_point(here, p.remaining.start, Tolerance(1e-9, 1e-9)));
        const TraceRecord* src = looks.at(p.source_event);
        if (p.remaining.length() > 1e-9 && dist(src->pos[static_cast<size_t>(p.robot)], here) > 1e-9) ++interior;
      }
    }
  }
  EXPECT_GT(interior, 0);
}

TEST(Scheduler, ProgressAndFairness) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    Scenario s = generated(10, 5, seed, seed % 2 ? SchedulerKind::Async : SchedulerKind::SAsync);
    RunResult r = run(s);
    EXPECT_EQ(r.outcome, Outcome::Formed);
    const long bound = s.scheduler.fairness_bound(s.robots.size());
    std::map<int, long> last_look;
    std::map<int, double> planned;
    for (const TraceRecord& rec : r.trace.records) {
      if (rec.k == EventKind::Look) {
        if (last_look.count(rec.r)) EXPECT_LE(rec.e - last_look[rec.r], bound);
        last_look[rec.r] = rec.e;
      }
      if (rec.k == EventKind::Compute) planned[rec.r] = rec.length;
      if (rec.k == EventKind::MoveEnd && !rec.reached) {
        EXPECT_GE(rec.length, s.scheduler.nu - 1e-12);
        EXPECT_LT(rec.length, planned[rec.r]);
      }
    }
  }
}

TEST(Scheduler, FsyncTraceIsALegalAsyncTrace) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    Scenario s = generated(8, 2, seed, SchedulerKind::FSync);
    RunResult r = run(s);
    ASSERT_EQ(r.outcome, Outcome::Formed);
    EXPECT_TRUE(check_trace(r.trace, Pattern(s.pattern)).empty());
  }
}

TEST(Lcs, IdentityAndRoundTrip) {
  Configuration R({{1, 0}, {-0.5, 0.8}, {-0.4, -0.7}, {0.1, 0.2}});
  Similarity id{R[0], 0.0, 1.0};
  Configuration same = apply_lcs(R, id);
  for (size_t i = 0; i < R.size(); ++i) EXPECT_TRUE(same_point(same[i], R[i] - R[0]));
  Similarity s{R[3], kPi / 3, 2.0};
  Configuration local = apply_lcs(R, s);
  EXPECT_TRUE(same_point(local[3], {0, 0}));
  Trajectory t(local[3]);
  t.line_to({0.4, 0.0}).arc_to({0, 0}, 0.5, true);
  MoveDirective world = unapply_lcs({local[3], t}, s);
  EXPECT_TRUE(same_point(world.trajectory.start, R[3], Tolerance(1e-9, 1e-9)));
  EXPECT_TRUE(same_point(world.trajectory.end(), s.invert(t.end()), Tolerance(1e-9, 1e-9)));
  EXPECT_NEAR(world.trajectory.length(), t.length() / 2.0, 1e-9);
}

TEST(Lcs, ComputeIsFrameIndependent) {
  std::mt19937_64 rng(71);
  for (int seed = 0; seed < 100; ++seed) {
    Scenario s = generate_scenario(4 + 2 * (seed % 4), 2, 900 + static_cast<std::uint64_t>(seed));
    Configuration R(s.robots);
    Pattern F(s.pattern);
    ComputeResult world = compute(R, F);
    size_t who = static_cast<size_t>(seed) % R.size();
    Similarity lcs = draw_lcs(rng, R[who]);
    EXPECT_GE(lcs.scale, 0.5 - 1e-12);
    EXPECT_LE(lcs.scale, 2.0 + 1e-12);
    ComputeResult local = compute(apply_lcs(R, lcs), F);
    MoveDirective back = unapply_lcs(local.moves[who], lcs);
    EXPECT_LE(dist(back.trajectory.end(), world.moves[who].trajectory.end()), 1e-9);
  }
}
