#include "pf/verifier.hpp"

#include <algorithm>
#include <sstream>

namespace pf {

TransitionGraph TransitionGraph::expected() {
  TransitionGraph g;
  const std::vector<std::vector<int>> rows = {
      {1, 2, 3, 4, 5, 6}, {2, 3, 4, 6, 7, 8}, {2, 3, 8}, {2, 4, 6, 7}, {2, 5, 7}, {3, 6, 9},
      {7, 8, 9, 11},      {8, 9, 11},         {9, 11},   {10, 11},     {11}};
  for (int i = 0; i < 11; ++i)
    for (int j : rows[i]) g.edges.insert({i + 1, j});
  return g;
}

std::string TransitionGraph::to_dot(const std::map<std::pair<int, int>, long>* counts) const {
  std::ostringstream os;
  os << "digraph transitions {\n  rankdir=LR;\n";
  for (int i = 1; i <= 11; ++i) os << "  T" << i << ";\n";
  for (const auto& [a, b] : edges) {
    os << "  T" << a << " -> T" << b;
    if (counts) {
      auto it = counts->find({a, b});
      if (it != counts->end()) os << " [label=\"" << it->second << "\"]";
    }
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string kind_name(TransitionKind k) {
  switch (k) {
    case TransitionKind::Stationary: return "stationary";
    case TransitionKind::AlmostStationary: return "almost-stationary";
    case TransitionKind::Robust: return "robust";
    case TransitionKind::Unclassified: return "unclassified";
  }
  return "unclassified";
}

std::string property_name(Property p) {
  switch (p) {
    case Property::H1: return "H1";
    case Property::H2: return "H2";
    case Property::H3: return "H3";
    case Property::H3pp: return "H3pp";
    case Property::H4: return "H4";
    case Property::Collision: return "collision";
    case Property::Stall: return "stall";
  }
  return "H1";
}

bool same_configuration(const std::vector<Point>& a, const std::vector<Point>& b, const Tolerance& tol) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (dist(a[i], b[i]) > tol.length) return false;
  return true;
}

std::vector<Snapshot> snapshots(const ExecutionTrace& trace) {
  std::vector<Snapshot> out;
  for (size_t k = 0; k < trace.records.size(); ++k) {
    const TraceRecord& r = trace.records[k];
    if (r.k != EventKind::Look) continue;
    if (!out.empty() && out.back().t == r.t) continue;
    if (!r.task) throw std::runtime_error("malformed-trace: look without task at event " + std::to_string(r.e));
    Snapshot s;
    s.t = r.t;
    s.record = k;
    s.e = r.e;
    s.pos = r.pos;
    s.label = *r.task;
    out.push_back(std::move(s));
  }
  return out;
}

void check_configuration(const std::vector<Point>& pos, TaskId label, const Pattern& F, long event,
                         std::vector<Violation>& out) {
  Configuration R(pos, F.config().tol());
  PredicateVector pv = predicates(R, F);
  if (pv.true_count() != 1)
    out.push_back({Property::H1, event, std::to_string(pv.true_count()) + " predicates hold"});
  TaskId cls = pv.task();
  if (cls != label)
    out.push_back({Property::H1, event, "label " + task_name(label) + " but configuration is " + task_name(cls)});
  if (cls == TaskId::T10) return;
  int rr = symmetricity(R);
  if (F.rho() % rr != 0)
    out.push_back({Property::H2, event, "rho(R) = " + std::to_string(rr) + " does not divide rho(F)"});
  int mm = R.max_multiplicity();
  if (mm > F.max_multiplicity())
    out.push_back({Property::H2, event, "multiplicity " + std::to_string(mm) + " exceeds the pattern's"});
  if (mm <= 1) return;

  // coincidences are legal only where the modified or final pattern demands them
  std::vector<Point> allowed;
  std::vector<int> allowed_mult;
  bool t8 = cls == TaskId::T8;
  if (t8) {
    try {
      Embedding e = embed_pattern(R, F);
      ModifiedPattern fp = modified_pattern(R, F, e);
      Configuration fc(fp.points, R.tol());
      for (size_t k = 0; k < fc.size(); ++k) {
        allowed.push_back(fc[k]);
        allowed_mult.push_back(fc.multiplicity_of(k));
      }
    } catch (const std::exception&) {
    }
  }
  double sc = R.radius() > 0 ? R.radius() : 1.0;
  for (size_t i = 0; i < R.size(); ++i) {
    int m = R.multiplicity_of(i);
    if (m < 2) continue;
    bool ok = false;
    if (cls == TaskId::T9 || cls == TaskId::T11) ok = m <= F.max_multiplicity();
    if (t8)
      for (size_t k = 0; k < allowed.size() && !ok; ++k)
        if (dist(allowed[k], R[i]) <= R.tol().length * sc * 100 && m <= allowed_mult[k]) ok = true;
    if (!ok) {
      std::ostringstream os;
      os << m << " robots coincide at (" << R[i].x << ", " << R[i].y << ") in " << task_name(cls);
      out.push_back({Property::H3pp, event, os.str()});
      return;
    }
  }
}

namespace {

std::vector<Point> sample_points(const Trajectory& t) {
  std::vector<Point> pts{t.start};
  for (const Leg& l : t.legs) {
    pts.push_back(l.at(l.length() / 2));
    pts.push_back(l.end());
  }
  return pts;
}

}  // namespace

TransitionKind classify_transition(const ExecutionTrace& trace, const std::vector<Snapshot>& snaps, size_t i,
                                   const Pattern& F) {
  if (i + 1 >= snaps.size()) throw std::runtime_error("missing-metadata: no following snapshot");
  const Snapshot& cur = snaps[i + 1];
  const TraceRecord& look = trace.records[cur.record];
  const Tolerance& tol = F.config().tol();
  std::vector<const PendingSummary*> moving;
  for (const PendingSummary& p : look.pending) {
    if (p.remaining.nil() || p.remaining.length() <= tol.length) continue;
    if (p.source_event < 0 || static_cast<size_t>(p.source_event) >= trace.records.size())
      throw std::runtime_error("missing-metadata: pending move without source look");
    const TraceRecord& src = trace.records[static_cast<size_t>(p.source_event)];
    if (same_configuration(src.pos, cur.pos, tol)) continue;
    moving.push_back(&p);
  }
  if (moving.empty()) return TransitionKind::Stationary;

  bool almost = true;
  try {
    ComputeResult fresh = compute(Configuration(cur.pos, tol), F);
    for (const PendingSummary* p : moving) {
      const Trajectory& tau = fresh.moves[static_cast<size_t>(p->robot)].trajectory;
      for (const Point& q : sample_points(p->remaining))
        if (distance_to_trajectory(q, tau) > 1e-7) almost = false;
    }
  } catch (const std::exception&) {
    almost = false;
  }
  if (almost) return TransitionKind::AlmostStationary;

  // along the simulated future, until every pending robot finishes its cycle
  std::vector<int> open;
  for (const PendingSummary* p : moving) open.push_back(p->robot);
  size_t k = cur.record + 1;
  size_t next_snap = i + 2;
  while (!open.empty() && k < trace.records.size()) {
    const TraceRecord& r = trace.records[k];
    if (r.k == EventKind::MoveEnd) open.erase(std::remove(open.begin(), open.end(), r.r), open.end());
    if (r.k == EventKind::Look && next_snap < snaps.size() && snaps[next_snap].record == k) {
      if (snaps[next_snap].label != cur.label) return TransitionKind::Unclassified;
      ++next_snap;
    }
    ++k;
  }
  return TransitionKind::Robust;
}

TransitionKind classify_transition(const ExecutionTrace& trace, size_t i, const Pattern& F) {
  return classify_transition(trace, snapshots(trace), i, F);
}

TraceReport analyze_trace(const ExecutionTrace& trace, const Pattern& F, const TransitionGraph& expected,
                          const CheckOptions& opt) {
  TraceReport rep;
  std::vector<Snapshot> snaps = snapshots(trace);
  if (snaps.empty()) return rep;
  const Tolerance& tol = F.config().tol();
  const long n = static_cast<long>(snaps.front().pos.size());

  for (const Snapshot& s : snaps) check_configuration(s.pos, s.label, F, s.e, rep.violations);

  for (size_t i = 0; i + 1 < snaps.size(); ++i) {
    const Snapshot &a = snaps[i], &b = snaps[i + 1];
    if (same_configuration(a.pos, b.pos, tol)) continue;
    std::pair<int, int> edge{task_index(a.label), task_index(b.label)};
    ++rep.edges[edge];
    if (!expected.edges.count(edge))
      rep.violations.push_back({Property::H3, b.e, "transition " + task_name(a.label) + " -> " + task_name(b.label)});
    bool into_final = b.label == TaskId::T11 && a.label != TaskId::T11;
    if (into_final || (opt.classify_kinds && a.label != b.label)) {
      TransitionKind k = classify_transition(trace, snaps, i, F);
      ++rep.kinds[edge][k];
      if (into_final && k != TransitionKind::Stationary)
        rep.violations.push_back({Property::H3, b.e, "transition into T11 is " + kind_name(k)});
    }
  }

  // cycle budgets on the collapsed class sequence
  for (const Snapshot& s : snaps)
    if (rep.collapsed.empty() || rep.collapsed.back() != s.label) rep.collapsed.push_back(s.label);
  using T = TaskId;
  const std::vector<std::vector<TaskId>> cycles = {
      {T::T2, T::T3}, {T::T2, T::T4}, {T::T2, T::T6, T::T3}, {T::T2, T::T4, T::T6, T::T3}};
  for (const auto& c : cycles) {
    long count = 0;
    for (size_t j = 0; j + c.size() < rep.collapsed.size(); ++j) {
      bool hit = rep.collapsed[j + c.size()] == c[0];
      for (size_t q = 0; q < c.size() && hit; ++q) hit = rep.collapsed[j + q] == c[q];
      if (hit) ++count;
    }
    if (count > n) {
      std::string name;
      for (TaskId t : c) name += task_name(t) + ",";
      rep.violations.push_back({Property::H4, snaps.back().e,
                                "cycle (" + name.substr(0, name.size() - 1) + ") traversed " + std::to_string(count) + " times"});
    }
  }

  // completed moves per stay in one class
  size_t si = 0;
  long completed = 0;
  for (const TraceRecord& r : trace.records) {
    while (si + 1 < snaps.size() && snaps[si + 1].record <= static_cast<size_t>(&r - &trace.records[0])) {
      if (snaps[si + 1].label != snaps[si].label) completed = 0;
      ++si;
    }
    if (r.k == EventKind::MoveEnd && r.reached) {
      ++completed;
      if (completed == 10 * n + 1 && snaps[si].label != TaskId::T11)
        rep.violations.push_back({Property::H4, r.e, "more than " + std::to_string(10 * n) + " completed moves in " +
                                                         task_name(snaps[si].label)});
    }
  }

  // liveness: the trace must end in the final class
  if (snaps.back().label != TaskId::T11) {
    long bound = opt.stall_bound > 0 ? opt.stall_bound : 10 * n;
    long nil_looks = 0;
    for (auto it = trace.records.rbegin(); it != trace.records.rend(); ++it) {
      if (it->k == EventKind::MoveStart) break;
      if (it->k == EventKind::Compute && it->length == 0.0) ++nil_looks;
    }
    if (nil_looks >= bound)
      rep.violations.push_back({Property::Stall, snaps.back().e,
                                std::to_string(nil_looks) + " consecutive nil moves in " + task_name(snaps.back().label)});
    else
      rep.violations.push_back({Property::H4, snaps.back().e, "execution ends in " + task_name(snaps.back().label)});
  }
  return rep;
}

std::vector<Violation> check_trace(const ExecutionTrace& trace, const Pattern& F, const TransitionGraph& expected) {
  return analyze_trace(trace, F, expected).violations;
}

}  // namespace pf
