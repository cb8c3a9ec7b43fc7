#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"
#include "pf/verifier.hpp"

using namespace pf;

namespace {

Point P(double r, double deg) { return from_polar({0, 0}, r, deg * kPi / 180.0); }

std::vector<Point> hexagon() {
  std::vector<Point> F;
  for (int k = 0; k < 6; ++k) F.push_back(P(1, 60 * k + 17));
  return F;
}

// four robots of a hexagon on C(R) and two in the parking annulus
std::vector<Point> t9_robots() { return {P(1, 0), P(1, 60), P(1, 120), P(1, 180), P(0.7, 240), P(0.8, 300)}; }

// a regular triangle on C(R) with three robots well inside
std::vector<Point> t8_robots() { return {P(1, 0), P(1, 120), P(1, 240), P(0.3, 30), P(0.25, 160), P(0.2, 280)}; }

// five robots on C(R) without antipodal pairs, three inside
std::vector<Point> t4_robots() {
  return {P(1, 0), P(1, 70), P(1, 150), P(1, 200), P(1, 290), P(0.3, 20), P(0.35, 120), P(0.4, 250)};
}

std::vector<Point> two_squares() {
  std::vector<Point> F;
  for (double r : {1.0, 0.5})
    for (int k = 0; k < 4; ++k) F.push_back(P(r, 90 * k + r * 30));
  return F;
}

TraceRecord look(long e, double t, const std::vector<Point>& pos, TaskId label) {
  TraceRecord r;
  r.e = e;
  r.t = t;
  r.k = EventKind::Look;
  r.pos = pos;
  r.task = label;
  return r;
}

// the sequence of snapshots of a trace, as a trace of bare looks
ExecutionTrace looks_only(const ExecutionTrace& t) {
  ExecutionTrace out;
  long e = 0;
  for (const Snapshot& s : snapshots(t)) out.records.push_back(look(e, static_cast<double>(e), s.pos, s.label)), ++e;
  return out;
}

bool has(const std::vector<Violation>& v, Property p) {
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.property == p; });
}

Scenario scenario(const std::vector<Point>& R, const std::vector<Point>& F, std::uint64_t seed,
                  SchedulerKind k = SchedulerKind::Async) {
  Scenario s;
  s.robots = R;
  s.pattern = F;
  s.scheduler.kind = k;
  s.scheduler.seed = seed;
  return s;
}

}  // namespace

TEST(TransitionGraph, ExpectedRows) {
  TransitionGraph g = TransitionGraph::expected();
  std::map<int, std::set<int>> rows;
  for (auto [a, b] : g.edges) rows[a].insert(b);
  EXPECT_EQ(rows[1], (std::set<int>{1, 2, 3, 4, 5, 6}));
  EXPECT_EQ(rows[2], (std::set<int>{2, 3, 4, 6, 7, 8}));
  EXPECT_EQ(rows[3], (std::set<int>{2, 3, 8}));
  EXPECT_EQ(rows[4], (std::set<int>{2, 4, 6, 7}));
  EXPECT_EQ(rows[5], (std::set<int>{2, 5, 7}));
  EXPECT_EQ(rows[6], (std::set<int>{3, 6, 9}));
  EXPECT_EQ(rows[7], (std::set<int>{7, 8, 9, 11}));
  EXPECT_EQ(rows[8], (std::set<int>{8, 9, 11}));
  EXPECT_EQ(rows[9], (std::set<int>{9, 11}));
  EXPECT_EQ(rows[10], (std::set<int>{10, 11}));
  EXPECT_EQ(rows[11], (std::set<int>{11}));
  // T11 is the only sink
  for (auto& [a, succ] : rows)
    if (a != 11) EXPECT_GT(succ.size(), 1u);
  std::string dot = g.to_dot();
  EXPECT_NE(dot.find("T9 -> T11"), std::string::npos);
}

TEST(CheckTrace, T9ToT11IsClean) {
  Scenario s = scenario(t9_robots(), hexagon(), 1, SchedulerKind::FSync);
  RunResult r = run(s);
  ASSERT_EQ(r.outcome, Outcome::Formed);
  TraceReport rep = analyze_trace(r.trace, Pattern(s.pattern), TransitionGraph::expected());
  EXPECT_TRUE(rep.violations.empty());
  EXPECT_EQ(rep.edges.count({9, 11}), 1u);
  const std::pair<int, int> last{9, 11};
  EXPECT_EQ(rep.kinds[last][TransitionKind::Stationary], rep.edges[last]);
}

TEST(CheckTrace, UnexpectedEdgeIsH3) {
  Pattern F(hexagon());
  ASSERT_EQ(classify(Configuration(t9_robots()), F), TaskId::T9);
  ASSERT_EQ(classify(Configuration(t8_robots()), F), TaskId::T8);
  ExecutionTrace t;
  t.records = {look(0, 0.0, t9_robots(), TaskId::T9), look(1, 1.0, t8_robots(), TaskId::T8)};
  auto v = check_trace(t, F);
  EXPECT_TRUE(has(v, Property::H3));
  EXPECT_FALSE(has(v, Property::H1));
}

TEST(CheckTrace, WrongLabelIsH1) {
  ExecutionTrace t;
  t.records = {look(0, 0.0, t9_robots(), TaskId::T8)};
  EXPECT_TRUE(has(check_trace(t, Pattern(hexagon())), Property::H1));
}

TEST(CheckTrace, InjectedSymmetricSnapshotIsH2) {
  Scenario s = generate_scenario(12, 4, 17);
  s.scheduler.kind = SchedulerKind::FSync;
  RunResult r = run(s);
  ASSERT_EQ(r.outcome, Outcome::Formed);
  Pattern F(s.pattern);
  ExecutionTrace base = looks_only(r.trace);
  ASSERT_GT(base.records.size(), 2u);
  EXPECT_FALSE(has(check_trace(base, F), Property::H2));

  std::vector<Point> tri;
  for (double rad : {1.0, 0.8, 0.55, 0.3})
    for (int k = 0; k < 3; ++k) tri.push_back(P(rad, 120 * k + rad * 50));
  ASSERT_EQ(symmetricity(Configuration(tri)), 3);
  ExecutionTrace bad = base;
  size_t mid = bad.records.size() / 2;
  bad.records[mid].pos = tri;
  bad.records[mid].task = classify(Configuration(tri), F);
  auto v = check_trace(bad, F);
  ASSERT_TRUE(has(v, Property::H2));
  auto it = std::find_if(v.begin(), v.end(), [](const Violation& x) { return x.property == Property::H2; });
  EXPECT_EQ(it->event, bad.records[mid].e);
}

TEST(CheckTrace, UnfinishedTraceFailsLiveness) {
  ExecutionTrace t;
  for (long e = 0; e < 3; ++e) t.records.push_back(look(e, static_cast<double>(e), t8_robots(), TaskId::T8));
  auto v = check_trace(t, Pattern(hexagon()));
  EXPECT_TRUE(has(v, Property::H4) || has(v, Property::Stall));
}

TEST(CheckTrace, StockRunsAreClean) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    Scenario s = generate_scenario(static_cast<int>(4 + 2 * (seed % 4)), 2, 40 + seed);
    s.scheduler.seed = seed;
    RunResult r = run(s);
    ASSERT_EQ(r.outcome, Outcome::Formed);
    TraceReport rep = analyze_trace(r.trace, Pattern(s.pattern), TransitionGraph::expected());
    EXPECT_TRUE(rep.violations.empty()) << seed << ": " << property_name(rep.violations[0].property) << " "
                                        << rep.violations[0].details;
    for (auto& [edge, kinds] : rep.kinds)
      if (edge.second == 11) EXPECT_EQ(kinds.size(), kinds.count(TransitionKind::Stationary));
  }
}

TEST(Transitions, T1ToT2IsStationary) {
  int seen = 0;
  for (std::uint64_t i = 0; i < 40 && seen < 3; ++i) {
    Scenario s = generate_scenario(static_cast<int>(4 + 4 * (i % 3)), 4, 3000 + i);
    s.scheduler.seed = i;
    RunResult r = run(s);
    auto sn = snapshots(r.trace);
    for (size_t k = 0; k + 1 < sn.size(); ++k)
      if (sn[k].label == TaskId::T1 && sn[k + 1].label == TaskId::T2) {
        EXPECT_EQ(classify_transition(r.trace, sn, k, Pattern(s.pattern)), TransitionKind::Stationary);
        ++seen;
      }
  }
  EXPECT_GT(seen, 0);
}

TEST(Transitions, T4ToT2MidFlightIsAtLeastRobust) {
  Pattern F(two_squares());
  ASSERT_EQ(classify(Configuration(t4_robots()), F), TaskId::T4);
  int mid_flight = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    RunResult r = run(scenario(t4_robots(), two_squares(), seed));
    ASSERT_EQ(r.outcome, Outcome::Formed);
    auto sn = snapshots(r.trace);
    for (size_t k = 0; k + 1 < sn.size(); ++k) {
      if (sn[k].label != TaskId::T4 || sn[k + 1].label != TaskId::T2) continue;
      const TraceRecord& at = r.trace.records[sn[k + 1].record];
      bool moving = std::any_of(at.pending.begin(), at.pending.end(),
                                [](const PendingSummary& p) { return p.remaining.length() > 1e-6; });
      TransitionKind kind = classify_transition(r.trace, sn, k, F);
      EXPECT_NE(kind, TransitionKind::Unclassified);
      if (moving) {
        EXPECT_NE(kind, TransitionKind::Stationary);
        ++mid_flight;
      }
    }
    EXPECT_TRUE(check_trace(r.trace, F).empty());
  }
  EXPECT_GT(mid_flight, 0);
}

TEST(Transitions, T3ToT2IsPermittedWhateverItsKind) {
  int seen = 0;
  for (std::uint64_t i = 0; i < 60 && seen == 0; ++i) {
    int rho = 2 + static_cast<int>(i % 5);
    Scenario s = generate_scenario(rho * (1 + static_cast<int>(i % 3)) + (rho == 2 ? 2 : 0), rho, 3000 + i);
    s.scheduler.seed = i;
    RunResult r = run(s);
    TraceReport rep = analyze_trace(r.trace, Pattern(s.pattern), TransitionGraph::expected());
    if (rep.edges.count({3, 2})) {
      ++seen;
      EXPECT_TRUE(rep.violations.empty());
    }
  }
  EXPECT_GT(seen, 0);
}

TEST(Explore, NearFormedSquare) {
  std::vector<Point> sq{P(1, 0), P(1, 90), P(1, 180), P(1, 270)};
  ExploreResult r = explore(sq, Pattern(sq));
  EXPECT_EQ(r.classes, (std::set<int>{11}));
  EXPECT_TRUE(r.violations.empty());
  EXPECT_TRUE(r.all_terminate);
}

TEST(Explore, SmallInstanceTerminatesEverywhere) {
  Pattern F(oracle::explorer_pattern());
  ExploreResult r = explore(oracle::explorer_robots(), F);
  EXPECT_TRUE(r.violations.empty());
  EXPECT_TRUE(r.all_terminate);
  EXPECT_TRUE(r.classes.count(11));
  EXPECT_LE(r.longest_path, 40);
  TransitionGraph g = TransitionGraph::expected();
  for (const auto& e : r.edges) EXPECT_TRUE(g.edges.count(e)) << e.first << "->" << e.second;
}

TEST(Explore, TangentialFinalMoveIsCaught) {
  Pattern F(hexagon());
  EXPECT_TRUE(explore(t9_robots(), F).violations.empty());
  ExploreOptions o;
  o.algo.mutations.m9_tangential = true;
  ExploreResult r = explore(t9_robots(), F, o);
  ASSERT_FALSE(r.violations.empty());
  EXPECT_TRUE(has(r.violations, Property::H3) || has(r.violations, Property::Collision));
}

TEST(Explore, ParallelMatchesSerial) {
  for (bool mutate : {false, true}) {
    ExploreOptions a, b;
    a.algo.mutations.m9_tangential = b.algo.mutations.m9_tangential = mutate;
    b.parallel = false;
    ExploreResult x = explore(t9_robots(), Pattern(hexagon()), a);
    ExploreResult y = explore(t9_robots(), Pattern(hexagon()), b);
    EXPECT_EQ(x.states, y.states);
    EXPECT_EQ(x.classes, y.classes);
    EXPECT_EQ(x.edges, y.edges);
    EXPECT_EQ(x.longest_path, y.longest_path);
    ASSERT_EQ(x.violations.size(), y.violations.size());
    for (size_t i = 0; i < x.violations.size(); ++i) EXPECT_EQ(x.violations[i].details, y.violations[i].details);
  }
}

TEST(Explore, StateLimit) {
  ExploreOptions o;
  o.state_limit = 3;
  o.algo.mutations.m9_tangential = true;
  EXPECT_THROW(explore(t9_robots(), Pattern(hexagon()), o), std::runtime_error);
}
