#include "pf/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace pf {

std::string scheduler_name(SchedulerKind k) {
  switch (k) {
    case SchedulerKind::FSync: return "fsync";
    case SchedulerKind::SSync: return "ssync";
    case SchedulerKind::SAsync: return "sasync";
    case SchedulerKind::Async: return "async";
  }
  return "async";
}

std::optional<SchedulerKind> parse_scheduler(const std::string& s) {
  if (s == "fsync") return SchedulerKind::FSync;
  if (s == "ssync") return SchedulerKind::SSync;
  if (s == "sasync") return SchedulerKind::SAsync;
  if (s == "async") return SchedulerKind::Async;
  return std::nullopt;
}

std::string event_name(EventKind k) {
  switch (k) {
    case EventKind::Look: return "look";
    case EventKind::Compute: return "compute";
    case EventKind::MoveStart: return "move-start";
    case EventKind::MoveProgress: return "move-progress";
    case EventKind::MoveEnd: return "move-end";
  }
  return "look";
}

std::optional<EventKind> parse_event(const std::string& s) {
  for (EventKind k : {EventKind::Look, EventKind::Compute, EventKind::MoveStart, EventKind::MoveProgress,
                      EventKind::MoveEnd})
    if (event_name(k) == s) return k;
  return std::nullopt;
}

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Formed: return "formed";
    case Outcome::UnsolvableInput: return "unsolvable-input";
    case Outcome::DelegatedUnsupported: return "delegated-unsupported";
    case Outcome::EventLimit: return "event-limit";
  }
  return "event-limit";
}

void validate_scenario(const Scenario& s) {
  if (s.robots.size() != s.pattern.size())
    throw InvalidScenario("cardinality mismatch: " + std::to_string(s.robots.size()) + " robots, " +
                          std::to_string(s.pattern.size()) + " pattern points");
  if (s.robots.size() < 3) throw InvalidScenario("at least three robots are required");
  for (const auto* v : {&s.robots, &s.pattern})
    for (const Point& p : *v)
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw InvalidScenario("non-finite coordinate");
  if (!(s.scheduler.nu > 0)) throw InvalidScenario("nu must be positive");
  Circle c = smallest_enclosing_circle(s.robots, s.tol);
  double sc = c.radius > 0 ? c.radius : 1.0;
  for (size_t i = 0; i < s.robots.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      if (dist(s.robots[i], s.robots[j]) <= s.tol.length * sc)
        throw InvalidScenario("initial configuration contains a multiplicity");
}

Similarity draw_lcs(std::mt19937_64& rng, const Point& robot) {
  std::uniform_real_distribution<double> rot(0.0, kTwoPi);
  std::uniform_real_distribution<double> ls(std::log(0.5), std::log(2.0));
  Similarity s;
  s.origin = robot;
  s.rotation = rot(rng);
  s.scale = std::exp(ls(rng));
  return s;
}

Configuration apply_lcs(const Configuration& snapshot, const Similarity& lcs) {
  if (!(lcs.scale > 0)) throw GeometryError("reflection-lcs: local frame must preserve chirality");
  std::vector<Point> pts;
  pts.reserve(snapshot.size());
  for (const Point& p : snapshot.points()) pts.push_back(lcs.apply(p));
  return Configuration(pts, snapshot.tol());
}

MoveDirective unapply_lcs(const MoveDirective& d, const Similarity& lcs) {
  if (!(lcs.scale > 0)) throw GeometryError("reflection-lcs: local frame must preserve chirality");
  return {lcs.invert(d.robot), transform_inverse(d.trajectory, lcs)};
}

namespace {

struct Bot {
  Point pos;
  Phase phase = Phase::Wait;
  Trajectory plan;
  double stop = 0.0;
  double t0 = 0.0, t1 = 0.0;
  long src = -1;
  long since_look = 0;
  unsigned version = 0;
  bool hurried = false;
};

struct Event {
  double t;
  int prio;
  int robot;
  long seq;
  EventKind kind;
  unsigned version;
  bool operator>(const Event& o) const {
    if (t != o.t) return t > o.t;
    if (prio != o.prio) return prio > o.prio;
    if (robot != o.robot) return robot > o.robot;
    return seq > o.seq;
  }
};

int prio_of(EventKind k) {
  switch (k) {
    case EventKind::MoveEnd: return 0;
    case EventKind::Compute: return 1;
    default: return 2;
  }
}

struct Stop {};

class Engine {
 public:
  Engine(const Scenario& sc, const RunOptions& opt)
      : sc_(sc), opt_(opt), F_(sc.pattern, sc.tol), rng_(sc.scheduler.seed) {
    for (const Point& p : sc.robots) bots_.push_back({p});
    fairness_ = sc.scheduler.fairness_bound(sc.robots.size());
    stall_bound_ = sc.limits.stall_bound(sc.robots.size());
  }

  RunResult go() {
    validate_scenario(sc_);
    Configuration R0(sc_.robots, sc_.tol);
    int rr = symmetricity(R0);
    if (F_.rho() % rr != 0) {
      res_.outcome = Outcome::UnsolvableInput;
      res_.diagnostic = "rho(R) = " + std::to_string(rr) + " does not divide rho(F) = " + std::to_string(F_.rho());
      return res_;
    }
    TaskId t0 = classify(R0, F_, opt_.algo);
    res_.final_task = t0;
    if (t0 == TaskId::T10 && !opt_.algo.delegates) {
      res_.outcome = Outcome::DelegatedUnsupported;
      res_.diagnostic = "pattern requires an external gathering or leader-election solver";
      return res_;
    }
    try {
      if (sc_.scheduler.kind == SchedulerKind::FSync || sc_.scheduler.kind == SchedulerKind::SSync)
        rounds();
      else
        events();
    } catch (const Stop&) {
    } catch (const DelegatedUnsupported& e) {
      res_.outcome = Outcome::DelegatedUnsupported;
      res_.diagnostic = e.what();
    } catch (const std::exception& e) {
      res_.outcome = Outcome::EventLimit;
      res_.diagnostic = std::string("algorithm-error: ") + e.what();
    }
    res_.events = e_;
    return res_;
  }

 private:
  const Scenario& sc_;
  const RunOptions& opt_;
  Pattern F_;
  std::mt19937_64 rng_;
  std::vector<Bot> bots_;
  RunResult res_;
  long e_ = 0;
  long seq_ = 0;
  int fairness_ = 0;
  long stall_bound_ = 0;
  long stall_count_ = 0;
  std::priority_queue<Event, std::vector<Event>, std::greater<Event>> queue_;

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  int uniform_int(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng_); }

  Point position(const Bot& b, double t) const {
    if (b.phase != Phase::Move || b.t1 <= b.t0) return b.pos;
    double f = std::clamp((t - b.t0) / (b.t1 - b.t0), 0.0, 1.0);
    return b.plan.point_at(b.stop * f);
  }

  TraceRecord& record(double t, int r, EventKind k) {
    if (e_ >= sc_.limits.max_events) {
      res_.outcome = Outcome::EventLimit;
      res_.diagnostic = "event limit reached";
      throw Stop{};
    }
    TraceRecord rec;
    rec.e = e_++;
    rec.t = t;
    rec.r = r;
    rec.k = k;
    res_.trace.records.push_back(std::move(rec));
    for (Bot& b : bots_) ++b.since_look;
    return res_.trace.records.back();
  }

  bool pending(const Bot& b) const {
    return (b.phase == Phase::Compute || b.phase == Phase::Move) && !b.plan.nil();
  }

  void look(int i, double t) {
    std::vector<Point> world;
    world.reserve(bots_.size());
    for (const Bot& b : bots_) world.push_back(position(b, t));
    Configuration snap(world, sc_.tol);
    Similarity lcs = draw_lcs(rng_, world[i]);
    Configuration local = apply_lcs(snap, lcs);
    ComputeResult cr = compute(local, F_, opt_.algo);
    Trajectory mine = transform_inverse(cr.moves[i].trajectory, lcs);
    mine.start = world[i];
    if (!mine.legs.empty() && mine.legs.front().kind == Leg::Kind::Segment) mine.legs.front().seg.from = world[i];

    std::vector<PendingSummary> pend;
    for (size_t j = 0; j < bots_.size(); ++j) {
      const Bot& b = bots_[j];
      if (static_cast<int>(j) == i || !pending(b)) continue;
      double done = 0.0;
      if (b.phase == Phase::Move && b.t1 > b.t0) done = b.stop * std::clamp((t - b.t0) / (b.t1 - b.t0), 0.0, 1.0);
      pend.push_back({static_cast<int>(j), b.src, b.plan.slice(done, b.stop)});
    }
    const bool others_pending = std::any_of(pend.begin(), pend.end(), [](const PendingSummary& p) {
      return p.remaining.length() > 0;
    });

    TraceRecord& rec = record(t, i, EventKind::Look);
    rec.task = cr.task;
    rec.pos = world;
    rec.pending = std::move(pend);
    Bot& me = bots_[i];
    me.since_look = 0;
    me.hurried = false;
    me.plan = mine;
    me.src = rec.e;
    me.phase = Phase::Compute;
    res_.final_task = cr.task;

    if (cr.task == TaskId::T11 && !others_pending) {
      res_.outcome = Outcome::Formed;
      throw Stop{};
    }
    if (mine.nil() && !others_pending && cr.task != TaskId::T11) {
      if (++stall_count_ >= stall_bound_) {
        res_.outcome = Outcome::EventLimit;
        res_.stalled = true;
        res_.diagnostic = "stall: " + std::to_string(stall_count_) + " consecutive nil looks in " + task_name(cr.task);
        throw Stop{};
      }
    } else {
      stall_count_ = 0;
    }
  }

  // returns true when the robot starts moving
  bool end_compute(int i, double t) {
    Bot& b = bots_[i];
    TraceRecord& rc = record(t, i, EventKind::Compute);
    rc.length = b.plan.length();
    if (b.plan.nil()) {
      b.phase = Phase::Wait;
      return false;
    }
    double len = b.plan.length();
    double stop = len;
    if (!sc_.scheduler.rigid && len >= sc_.scheduler.nu) stop = std::clamp(uniform(0.0, 1.0) * len, sc_.scheduler.nu, len);
    b.stop = stop;
    b.phase = Phase::Move;
    TraceRecord& rs = record(t, i, EventKind::MoveStart);
    rs.length = stop;
    return true;
  }

  void end_move(int i, double t) {
    Bot& b = bots_[i];
    double len = b.plan.length();
    bool reached = b.stop >= len - 1e-15 * std::max(1.0, len);
    b.pos = reached ? b.plan.end() : b.plan.point_at(b.stop);
    b.phase = Phase::Wait;
    TraceRecord& rec = record(t, i, EventKind::MoveEnd);
    rec.reached = reached;
    rec.length = b.stop;
    b.plan = Trajectory(b.pos);
  }

  void rounds() {
    const int n = static_cast<int>(bots_.size());
    const bool ssync = sc_.scheduler.kind == SchedulerKind::SSync;
    for (long k = 0;; ++k) {
      double t = static_cast<double>(k);
      std::vector<int> active;
      for (int i = 0; i < n; ++i) {
        bool on = !ssync || uniform_int(0, 1) == 1 || bots_[i].since_look >= fairness_ / 2;
        if (on) active.push_back(i);
      }
      if (active.empty()) active.push_back(uniform_int(0, n - 1));
      for (int i : active) look(i, t);
      std::vector<int> movers;
      for (int i : active)
        if (end_compute(i, t + 0.25)) movers.push_back(i);
      for (int i : movers) {
        bots_[i].t0 = t + 0.25;
        bots_[i].t1 = t + 0.75;
      }
      for (int i : movers) end_move(i, t + 0.75);
    }
  }

  void schedule(int i, double t, EventKind k) {
    Bot& b = bots_[i];
    ++b.version;
    queue_.push({t, prio_of(k), i, seq_++, k, b.version});
  }

  double wait_time() {
    return sc_.scheduler.kind == SchedulerKind::SAsync ? uniform_int(0, 2) : uniform(0.0, 2.0);
  }
  double compute_time() { return sc_.scheduler.kind == SchedulerKind::SAsync ? 1.0 : uniform(0.05, 1.0); }
  double move_time() { return sc_.scheduler.kind == SchedulerKind::SAsync ? 1.0 : uniform(0.2, 2.0); }

  void events() {
    const int n = static_cast<int>(bots_.size());
    for (int i = 0; i < n; ++i) schedule(i, wait_time(), EventKind::Look);
    while (!queue_.empty()) {
      Event ev = queue_.top();
      queue_.pop();
      Bot& b = bots_[ev.robot];
      if (ev.version != b.version) continue;
      const double t = ev.t;
      switch (ev.kind) {
        case EventKind::Look:
          look(ev.robot, t);
          schedule(ev.robot, t + compute_time(), EventKind::Compute);
          break;
        case EventKind::Compute:
          if (end_compute(ev.robot, t)) {
            b.t0 = t;
            b.t1 = t + move_time();
            schedule(ev.robot, b.t1, EventKind::MoveEnd);
          } else {
            schedule(ev.robot, t + wait_time(), EventKind::Look);
          }
          break;
        case EventKind::MoveEnd:
          end_move(ev.robot, t);
          schedule(ev.robot, t + wait_time(), EventKind::Look);
          break;
        default:
          break;
      }
      enforce_fairness(t);
    }
  }

  // a robot close to the fairness bound is hurried through its remaining phases
  void enforce_fairness(double now) {
    for (int i = 0; i < static_cast<int>(bots_.size()); ++i) {
      Bot& b = bots_[i];
      if (b.hurried || b.since_look < fairness_ / 2) continue;
      b.hurried = true;
      switch (b.phase) {
        case Phase::Wait:
        case Phase::Look: schedule(i, now, EventKind::Look); break;
        case Phase::Compute: schedule(i, now, EventKind::Compute); break;
        case Phase::Move:
          b.t1 = std::min(b.t1, now);
          schedule(i, now, EventKind::MoveEnd);
          break;
      }
    }
  }
};

}  // namespace

RunResult run(const Scenario& scenario, const RunOptions& opt) {
  Engine eng(scenario, opt);
  return eng.go();
}

}  // namespace pf
