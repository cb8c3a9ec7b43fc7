#include "pf/render.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace pf {

namespace {

constexpr double kSize = 480.0;

struct Canvas {
  Point c;
  double s;
  Point map(const Point& p) const { return {kSize / 2 + (p.x - c.x) * s, kSize / 2 - (p.y - c.y) * s}; }
};

void circle(std::ostream& os, const Canvas& cv, const Point& ctr, double r, const char* stroke, bool dashed) {
  Point q = cv.map(ctr);
  os << "<circle cx=\"" << q.x << "\" cy=\"" << q.y << "\" r=\"" << r * cv.s << "\" fill=\"none\" stroke=\"" << stroke
     << "\"" << (dashed ? " stroke-dasharray=\"4 3\"" : "") << "/>\n";
}

}  // namespace

std::string render_svg(const std::vector<Point>& robots, const Pattern* F, const std::string& caption) {
  Configuration R(robots, F ? F->config().tol() : default_tolerance());
  double rad = R.radius() > 0 ? R.radius() : 1.0;
  Canvas cv{R.center(), kSize * 0.42 / rad};
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
     << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  circle(os, cv, R.center(), rad, "black", false);
  if (F) try {
    ParkingGeometry park = parking_circles(R, *F);
    circle(os, cv, R.center(), park.top * rad, "#3a7bd5", true);
    circle(os, cv, R.center(), park.bottom * rad, "#7a3ad5", true);
    for (const Sector& sct : sectors(R, park)) {
      Point a = cv.map(R.center()), b = cv.map(from_polar(R.center(), rad, sct.leading));
      os << "<line x1=\"" << a.x << "\" y1=\"" << a.y << "\" x2=\"" << b.x << "\" y2=\"" << b.y
         << "\" stroke=\"#bbb\"/>\n";
    }
    Embedding e = embed_pattern(R, *F);
    for (const Point& f : e.placed) {
      Point q = cv.map(f);
      os << "<rect x=\"" << q.x - 4 << "\" y=\"" << q.y - 4 << "\" width=\"8\" height=\"8\" fill=\"none\" "
         << "stroke=\"#d53a3a\"/>\n";
    }
  } catch (const std::exception&) {
    // no parking geometry or embedding for this snapshot
  }
  for (size_t i = 0; i < R.size(); ++i) {
    Point q = cv.map(robots[i]);
    os << "<circle cx=\"" << q.x << "\" cy=\"" << q.y << "\" r=\"4\" fill=\"black\"><title>r" << i
       << "</title></circle>\n";
  }
  if (!caption.empty()) os << "<text x=\"8\" y=\"18\" font-family=\"monospace\" font-size=\"13\">" << caption << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

int render_trace(const ExecutionTrace& trace, const Pattern* F, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  int count = 0;
  for (const TraceRecord& r : trace.records) {
    if (r.k != EventKind::Look) continue;
    std::ostringstream cap;
    cap << "e=" << r.e << " t=" << r.t << " r" << r.r;
    if (r.task) cap << ' ' << task_name(*r.task);
    std::ofstream out(out_dir + "/look_" + std::to_string(r.e) + ".svg");
    if (!out) throw std::runtime_error("cannot write into " + out_dir);
    out << render_svg(r.pos, F, cap.str());
    ++count;
  }
  return count;
}

}  // namespace pf
