#include "pf/scenario_io.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace pf {

using nlohmann::json;

SchemaError::SchemaError(const std::string& msg, int l, int c)
    : std::runtime_error(l > 0 ? msg + " at line " + std::to_string(l) + ", column " + std::to_string(c) : msg),
      line(l),
      column(c) {}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

namespace {

// byte offset of every value in an already valid document, keyed by JSON pointer
class Locator {
 public:
  explicit Locator(const std::string& text) : s_(text) {
    skip();
    value("");
  }

  std::pair<int, int> where(const std::string& pointer) const {
    auto it = offsets_.find(pointer);
    size_t off = it == offsets_.end() ? 0 : it->second;
    return line_col(s_, off);
  }

  static std::pair<int, int> line_col(const std::string& s, size_t off) {
    int line = 1, col = 1;
    for (size_t i = 0; i < off && i < s.size(); ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return {line, col};
  }

 private:
  const std::string& s_;
  size_t i_ = 0;
  std::map<std::string, size_t> offsets_;

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  std::string string_token() {
    std::string out;
    ++i_;
    while (i_ < s_.size() && s_[i_] != '"') {
      if (s_[i_] == '\\') ++i_;
      out += s_[i_++];
    }
    ++i_;
    return out;
  }

  void value(const std::string& ptr) {
    offsets_[ptr] = i_;
    if (i_ >= s_.size()) return;
    char c = s_[i_];
    if (c == '{') {
      ++i_;
      skip();
      while (i_ < s_.size() && s_[i_] != '}') {
        std::string key = string_token();
        skip();
        ++i_;  // ':'
        skip();
        value(ptr + "/" + key);
        skip();
        if (s_[i_] == ',') ++i_;
        skip();
      }
      ++i_;
    } else if (c == '[') {
      ++i_;
      skip();
      for (int k = 0; i_ < s_.size() && s_[i_] != ']'; ++k) {
        value(ptr + "/" + std::to_string(k));
        skip();
        if (s_[i_] == ',') ++i_;
        skip();
      }
      ++i_;
    } else if (c == '"') {
      string_token();
    } else {
      while (i_ < s_.size() && !std::strchr(",]} \t\r\n", s_[i_])) ++i_;
    }
  }
};

struct Checker {
  const Locator& loc;

  [[noreturn]] void fail(const std::string& ptr, const std::string& msg) const {
    auto [l, c] = loc.where(ptr);
    throw SchemaError(ptr.empty() ? msg : ptr + ": " + msg, l, c);
  }

  double number(const json& j, const std::string& ptr) const {
    if (!j.is_number()) fail(ptr, "expected a number");
    return j.get<double>();
  }
  long long natural(const json& j, const std::string& ptr) const {
    if (!j.is_number_integer() || j.get<long long>() < 0) fail(ptr, "expected a non-negative integer");
    return j.get<long long>();
  }
  std::uint64_t u64(const json& j, const std::string& ptr) const {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
      fail(ptr, "expected an unsigned integer");
    return j.get<std::uint64_t>();
  }
  const json& object(const json& j, const std::string& ptr, std::initializer_list<const char*> keys) const {
    if (!j.is_object()) fail(ptr, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
      bool known = false;
      for (const char* k : keys) known = known || it.key() == k;
      if (!known) fail(ptr + "/" + it.key(), "unknown key");
    }
    return j;
  }
  Point point(const json& j, const std::string& ptr, size_t max_len) const {
    if (!j.is_array() || j.size() < 2 || j.size() > max_len)
      fail(ptr, max_len == 2 ? "expected [x, y]" : "expected [x, y] or [x, y, mult]");
    return {number(j[0], ptr + "/0"), number(j[1], ptr + "/1")};
  }
};

json point_json(const Point& p) { return json::array({p.x, p.y}); }

Point point_of(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

json trajectory_json(const Trajectory& t) {
  json legs = json::array();
  for (const Leg& l : t.legs) {
    if (l.kind == Leg::Kind::Segment) {
      legs.push_back({{"seg", json::array({point_json(l.seg.from), point_json(l.seg.to)})}});
    } else {
      legs.push_back({{"arc",
                       {{"c", point_json(l.arc.center)},
                        {"r", l.arc.radius},
                        {"from", l.arc.from_angle},
                        {"span", l.arc.span},
                        {"cw", l.arc.clockwise}}}});
    }
  }
  return {{"start", point_json(t.start)}, {"legs", legs}};
}

Trajectory trajectory_of(const json& j) {
  Trajectory t(point_of(j.at("start")));
  for (const json& l : j.at("legs")) {
    if (l.contains("seg")) {
      t.legs.push_back(Leg::segment(point_of(l["seg"].at(0)), point_of(l["seg"].at(1))));
    } else {
      const json& a = l.at("arc");
      t.legs.push_back(Leg::arc_leg(point_of(a.at("c")), a.at("r").get<double>(), a.at("from").get<double>(),
                                    a.at("span").get<double>(), a.at("cw").get<bool>()));
    }
  }
  return t;
}

std::vector<Point> normalized(const std::vector<Point>& pts, const Tolerance& tol) {
  Circle c = smallest_enclosing_circle(pts, tol);
  if (c.radius <= 0) return pts;
  Similarity s{c.center, 0.0, 1.0 / c.radius};
  std::vector<Point> out;
  out.reserve(pts.size());
  for (const Point& p : pts) out.push_back(s.apply(p));
  return out;
}

// indented dump with numeric arrays such as points kept on one line
void pretty(std::string& out, const json& j, int depth) {
  const std::string pad(static_cast<size_t>(2 * depth + 2), ' '), close(static_cast<size_t>(2 * depth), ' ');
  if (j.is_array() && !j.empty() && std::none_of(j.begin(), j.end(), [](const json& x) { return x.is_structured(); })) {
    out += "[";
    for (size_t k = 0; k < j.size(); ++k) out += (k ? ", " : "") + j[k].dump();
    out += "]";
    return;
  }
  if (!j.is_structured() || j.empty()) {
    out += j.dump();
    return;
  }
  const bool obj = j.is_object();
  out += obj ? "{\n" : "[\n";
  size_t k = 0;
  for (auto it = j.begin(); it != j.end(); ++it, ++k) {
    out += pad;
    if (obj) out += json(it.key()).dump() + ": ";
    pretty(out, *it, depth + 1);
    out += k + 1 < j.size() ? ",\n" : "\n";
  }
  out += close + (obj ? "}" : "]");
}

std::string pretty(const json& j) {
  std::string out;
  pretty(out, j, 0);
  return out + "\n";
}

}  // namespace

Scenario parse_scenario(const std::string& text, bool normalize) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [l, c] = Locator::line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    throw SchemaError(std::string("invalid JSON: ") + e.what(), l, c);
  }
  Locator loc(text);
  Checker ck{loc};
  ck.object(doc, "", {"robots", "pattern", "scheduler", "limits", "tolerance"});
  Scenario s;
  if (!doc.contains("robots") || !doc["robots"].is_array()) ck.fail("/robots", "expected an array of points");
  if (!doc.contains("pattern") || !doc["pattern"].is_array()) ck.fail("/pattern", "expected an array of points");
  for (size_t i = 0; i < doc["robots"].size(); ++i)
    s.robots.push_back(ck.point(doc["robots"][i], "/robots/" + std::to_string(i), 2));
  for (size_t i = 0; i < doc["pattern"].size(); ++i) {
    std::string ptr = "/pattern/" + std::to_string(i);
    const json& p = doc["pattern"][i];
    Point q = ck.point(p, ptr, 3);
    long long m = 1;
    if (p.size() == 3) {
      m = ck.natural(p[2], ptr + "/2");
      if (m < 1) ck.fail(ptr + "/2", "multiplicity must be positive");
    }
    for (long long k = 0; k < m; ++k) s.pattern.push_back(q);
  }
  if (s.pattern.size() != s.robots.size())
    ck.fail("/pattern", "pattern multiplicities sum to " + std::to_string(s.pattern.size()) + " but there are " +
                            std::to_string(s.robots.size()) + " robots");

  if (doc.contains("scheduler")) {
    const json& j = ck.object(doc["scheduler"], "/scheduler", {"kind", "seed", "nu", "fairness", "rigid"});
    if (j.contains("kind")) {
      auto k = j["kind"].is_string() ? parse_scheduler(j["kind"].get<std::string>()) : std::nullopt;
      if (!k) ck.fail("/scheduler/kind", "expected one of fsync, ssync, sasync, async");
      s.scheduler.kind = *k;
    }
    if (j.contains("seed")) s.scheduler.seed = ck.u64(j["seed"], "/scheduler/seed");
    if (j.contains("nu")) {
      s.scheduler.nu = ck.number(j["nu"], "/scheduler/nu");
      if (!(s.scheduler.nu > 0)) ck.fail("/scheduler/nu", "must be positive");
    }
    if (j.contains("fairness")) s.scheduler.fairness = static_cast<int>(ck.natural(j["fairness"], "/scheduler/fairness"));
    if (j.contains("rigid")) {
      if (!j["rigid"].is_boolean()) ck.fail("/scheduler/rigid", "expected a boolean");
      s.scheduler.rigid = j["rigid"].get<bool>();
    }
  }
  if (doc.contains("limits")) {
    const json& j = ck.object(doc["limits"], "/limits", {"max_events", "stall"});
    if (j.contains("max_events")) s.limits.max_events = ck.natural(j["max_events"], "/limits/max_events");
    if (j.contains("stall")) s.limits.stall = ck.natural(j["stall"], "/limits/stall");
  }
  if (doc.contains("tolerance")) {
    const json& j = ck.object(doc["tolerance"], "/tolerance", {"length", "angle"});
    double len = j.contains("length") ? ck.number(j["length"], "/tolerance/length") : s.tol.length;
    double ang = j.contains("angle") ? ck.number(j["angle"], "/tolerance/angle") : s.tol.angle;
    try {
      s.tol = Tolerance(len, ang);
    } catch (const GeometryError& e) {
      ck.fail("/tolerance", e.what());
    }
  }
  if (normalize && !s.robots.empty()) {
    s.robots = normalized(s.robots, s.tol);
    s.pattern = normalized(s.pattern, s.tol);
  }
  return s;
}

Scenario load_scenario(const std::string& path, bool normalize) { return parse_scenario(read_file(path), normalize); }

std::string emit_scenario(const Scenario& s) {
  json robots = json::array();
  for (const Point& p : s.robots) robots.push_back(point_json(p));
  json pattern = json::array();
  std::vector<std::pair<Point, int>> grouped;
  for (const Point& p : s.pattern) {
    auto it = std::find_if(grouped.begin(), grouped.end(), [&](const auto& g) { return g.first == p; });
    if (it == grouped.end())
      grouped.push_back({p, 1});
    else
      ++it->second;
  }
  for (const auto& [p, m] : grouped) pattern.push_back(m == 1 ? point_json(p) : json::array({p.x, p.y, m}));
  json doc = {{"robots", robots},
              {"pattern", pattern},
              {"scheduler",
               {{"kind", scheduler_name(s.scheduler.kind)},
                {"seed", s.scheduler.seed},
                {"nu", s.scheduler.nu},
                {"fairness", s.scheduler.fairness},
                {"rigid", s.scheduler.rigid}}},
              {"limits", {{"max_events", s.limits.max_events}, {"stall", s.limits.stall}}},
              {"tolerance", {{"length", s.tol.length}, {"angle", s.tol.angle}}}};
  return pretty(doc);
}

void save_scenario(const Scenario& s, const std::string& path) { write_file(path, emit_scenario(s)); }

std::string emit_trace_record(const TraceRecord& r) {
  json j = {{"e", r.e}, {"t", r.t}, {"r", r.r}, {"k", event_name(r.k)}};
  if (r.task) j["task"] = task_name(*r.task);
  if (r.k == EventKind::Look) {
    json pos = json::array();
    for (const Point& p : r.pos) pos.push_back(point_json(p));
    j["pos"] = pos;
    json pend = json::array();
    for (const PendingSummary& p : r.pending)
      pend.push_back({{"robot", p.robot}, {"source", p.source_event}, {"remaining", trajectory_json(p.remaining)}});
    j["pending"] = pend;
  }
  if (r.k == EventKind::MoveEnd) j["reached"] = r.reached;
  if (r.k != EventKind::Look) j["length"] = r.length;
  return j.dump();
}

std::string emit_trace(const ExecutionTrace& t) {
  std::string out;
  for (const TraceRecord& r : t.records) out += emit_trace_record(r) + "\n";
  return out;
}

ExecutionTrace parse_trace(const std::string& text) {
  ExecutionTrace t;
  std::istringstream in(text);
  std::string line;
  for (int ln = 1; std::getline(in, line); ++ln) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw SchemaError(std::string("malformed trace: ") + e.what(), ln, static_cast<int>(e.byte));
    }
    try {
      TraceRecord r;
      r.e = j.at("e").get<long>();
      r.t = j.at("t").get<double>();
      r.r = j.at("r").get<int>();
      auto k = parse_event(j.at("k").get<std::string>());
      if (!k) throw std::runtime_error("unknown event kind");
      r.k = *k;
      if (j.contains("task")) {
        auto task = parse_task(j["task"].get<std::string>());
        if (!task) throw std::runtime_error("unknown task");
        r.task = *task;
      }
      if (j.contains("pos"))
        for (const json& p : j["pos"]) r.pos.push_back(point_of(p));
      if (j.contains("pending"))
        for (const json& p : j["pending"])
          r.pending.push_back({p.at("robot").get<int>(), p.at("source").get<long>(), trajectory_of(p.at("remaining"))});
      if (j.contains("reached")) r.reached = j["reached"].get<bool>();
      if (j.contains("length")) r.length = j["length"].get<double>();
      t.records.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw SchemaError(std::string("malformed trace: ") + e.what(), ln, 1);
    }
  }
  return t;
}

ExecutionTrace load_trace(const std::string& path) { return parse_trace(read_file(path)); }

void save_trace(const ExecutionTrace& t, const std::string& path) { write_file(path, emit_trace(t)); }

std::string violations_report(const std::vector<Violation>& v, const TraceReport* rep) {
  json vs = json::array();
  for (const Violation& x : v) vs.push_back({{"property", property_name(x.property)}, {"event", x.event}, {"details", x.details}});
  json doc = {{"violations", vs}, {"count", v.size()}};
  if (rep) {
    json edges = json::array();
    for (const auto& [e, n] : rep->edges) {
      json kinds = json::object();
      auto it = rep->kinds.find(e);
      if (it != rep->kinds.end())
        for (const auto& [k, c] : it->second) kinds[kind_name(k)] = c;
      edges.push_back({{"from", task_name(task_from_index(e.first))},
                       {"to", task_name(task_from_index(e.second))},
                       {"count", n},
                       {"kinds", kinds}});
    }
    doc["edges"] = edges;
  }
  return pretty(doc);
}

}  // namespace pf
