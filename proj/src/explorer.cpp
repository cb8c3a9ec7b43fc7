#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "pf/verifier.hpp"

namespace pf {

namespace {

struct Node {
  std::vector<Point> pos;
  TaskId task = TaskId::T1;
  int depth = 0;
  std::vector<size_t> next;
  std::vector<Violation> violations;
  bool expanded = false;
};

struct Succ {
  TaskId task = TaskId::T1;
  std::vector<std::vector<Point>> states;
  std::vector<Violation> violations;
};

// sorted, center-normalized, quantized multiset
std::string canonical_key(const std::vector<Point>& pos, const Tolerance& tol) {
  Circle c = smallest_enclosing_circle(pos, tol);
  double sc = c.radius > 0 ? c.radius : 1.0;
  std::vector<std::pair<long long, long long>> q;
  q.reserve(pos.size());
  for (const Point& p : pos)
    q.push_back({std::llround((p.x - c.center.x) / sc * 1e7), std::llround((p.y - c.center.y) / sc * 1e7)});
  std::sort(q.begin(), q.end());
  std::string key;
  key.reserve(q.size() * 16 + 32);
  for (const auto& [x, y] : q) {
    key.append(reinterpret_cast<const char*>(&x), sizeof x);
    key.append(reinterpret_cast<const char*>(&y), sizeof y);
  }
  // the reference frame itself is part of the state
  long long s = std::llround(sc * 1e7), cx = std::llround(c.center.x * 1e7), cy = std::llround(c.center.y * 1e7);
  for (long long v : {s, cx, cy}) key.append(reinterpret_cast<const char*>(&v), sizeof v);
  return key;
}

Succ expand(const std::vector<Point>& pos, const Pattern& F, const ExploreOptions& opt, long id) {
  Succ out;
  Configuration R(pos, F.config().tol());
  ComputeResult cr;
  try {
    cr = compute(R, F, opt.algo);
  } catch (const std::exception& e) {
    out.violations.push_back({Property::H4, id, std::string("algorithm-error: ") + e.what()});
    return out;
  }
  out.task = cr.task;
  check_configuration(pos, cr.task, F, id, out.violations);
  if (cr.task == TaskId::T11) return out;

  std::vector<size_t> movers;
  for (size_t i = 0; i < cr.moves.size(); ++i)
    if (!cr.moves[i].trajectory.nil()) movers.push_back(i);
  if (movers.empty()) {
    out.violations.push_back({Property::Stall, id, "no robot moves in " + task_name(cr.task)});
    return out;
  }
  std::vector<std::vector<size_t>> choices{movers};
  if (opt.activations > 1 && movers.size() > 1) choices.push_back({movers.front()});
  for (const auto& active : choices)
    for (double f : opt.fractions) {
      std::vector<Point> nxt = pos;
      for (size_t i : active) {
        const Trajectory& tr = cr.moves[i].trajectory;
        double len = tr.length();
        double stop = len < opt.nu ? len : std::clamp(f * len, opt.nu, len);
        nxt[i] = stop >= len ? tr.end() : tr.point_at(stop);
      }
      out.states.push_back(std::move(nxt));
    }
  return out;
}

}  // namespace

ExploreResult explore(const std::vector<Point>& robots, const Pattern& F, const ExploreOptions& opt) {
  if (robots.size() > 6) throw std::invalid_argument("explore supports at most 6 robots");
  const Tolerance& tol = F.config().tol();
  const TransitionGraph expected = TransitionGraph::expected();
  ExploreResult res;

  std::vector<Node> nodes;
  std::unordered_map<std::string, size_t> index;
  nodes.push_back({robots});
  index.emplace(canonical_key(robots, tol), 0);
  std::vector<size_t> frontier{0};

  for (int depth = 0; !frontier.empty(); ++depth) {
    std::vector<Succ> succ(frontier.size());
    const long m = static_cast<long>(frontier.size());
    if (opt.parallel) {
#pragma omp parallel for schedule(dynamic)
      for (long i = 0; i < m; ++i) succ[i] = expand(nodes[frontier[i]].pos, F, opt, static_cast<long>(frontier[i]));
    } else {
      for (long i = 0; i < m; ++i) succ[i] = expand(nodes[frontier[i]].pos, F, opt, static_cast<long>(frontier[i]));
    }

    // merge serially in frontier order so the numbering is deterministic
    std::vector<size_t> next;
    for (long i = 0; i < m; ++i) {
      Node& nd = nodes[frontier[i]];
      nd.task = succ[i].task;
      nd.expanded = true;
      nd.violations = std::move(succ[i].violations);
      for (auto& st : succ[i].states) {
        auto key = canonical_key(st, tol);
        auto it = index.find(key);
        size_t id;
        if (it == index.end()) {
          id = nodes.size();
          index.emplace(std::move(key), id);
          Node child;
          child.pos = std::move(st);
          child.depth = depth + 1;
          nodes.push_back(std::move(child));
          if (depth + 1 <= opt.depth_bound) next.push_back(id);
        } else {
          id = it->second;
        }
        Node& parent = nodes[frontier[i]];
        if (std::find(parent.next.begin(), parent.next.end(), id) == parent.next.end()) parent.next.push_back(id);
      }
      if (static_cast<long>(nodes.size()) > opt.state_limit)
        throw std::runtime_error("state-explosion-limit: more than " + std::to_string(opt.state_limit) + " states");
    }
    frontier = std::move(next);
  }

  res.states = static_cast<long>(nodes.size());
  for (size_t i = 0; i < nodes.size(); ++i) {
    Node& nd = nodes[i];
    if (!nd.expanded) {
      res.all_terminate = false;
      res.violations.push_back({Property::H4, static_cast<long>(i), "depth bound reached before T11"});
      continue;
    }
    res.classes.insert(task_index(nd.task));
    for (Violation& v : nd.violations) res.violations.push_back(std::move(v));
    if (nd.task != TaskId::T11 && nd.next.empty()) res.all_terminate = false;
  }
  for (const Node& nd : nodes) {
    if (!nd.expanded) continue;
    for (size_t j : nd.next) {
      const Node& ch = nodes[j];
      if (!ch.expanded) continue;
      std::pair<int, int> e{task_index(nd.task), task_index(ch.task)};
      res.edges.insert(e);
      if (!expected.edges.count(e))
        res.violations.push_back({Property::H3, static_cast<long>(j),
                                  "transition " + task_name(nd.task) + " -> " + task_name(ch.task)});
    }
  }

  // the state graph must be acyclic; longest path and T2 entries by DP in post-order
  const size_t N = nodes.size();
  std::vector<int> color(N, 0), longest(N, 0), entries(N, 0);
  for (size_t root = 0; root < N; ++root) {
    if (color[root]) continue;
    std::vector<std::pair<size_t, size_t>> st{{root, 0}};
    color[root] = 1;
    while (!st.empty()) {
      auto& [u, k] = st.back();
      if (k < nodes[u].next.size()) {
        size_t v = nodes[u].next[k++];
        if (color[v] == 1) {
          res.all_terminate = false;
          res.violations.push_back({Property::H4, static_cast<long>(v), "reachable cycle in the state graph"});
        } else if (color[v] == 0) {
          color[v] = 1;
          st.push_back({v, 0});
        }
        continue;
      }
      const Node& nd = nodes[u];
      for (size_t v : nd.next) {
        if (color[v] != 2) continue;
        longest[u] = std::max(longest[u], longest[v] + 1);
        int add = nodes[v].task == TaskId::T2 && nd.task != TaskId::T2 ? 1 : 0;
        entries[u] = std::max(entries[u], entries[v] + add);
      }
      color[u] = 2;
      st.pop_back();
    }
  }
  res.longest_path = longest[0];
  res.max_t2_entries = entries[0] + (nodes[0].task == TaskId::T2 ? 1 : 0);
  if (res.max_t2_entries > static_cast<int>(robots.size()))
    res.violations.push_back({Property::H4, 0, "T2 entered " + std::to_string(res.max_t2_entries) + " times on one branch"});
  return res;
}

}  // namespace pf
