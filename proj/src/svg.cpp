#include "crepant/svg.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "crepant/errors.hpp"

namespace crepant {

namespace {

constexpr long kUnit = 40;
constexpr long kMargin = 20;

long to_long(const Int& x) { return static_cast<long>(x); }

Int cross(const IntVec& o, const IntVec& a, const IntVec& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Monotone chain; input must be lex-sorted and duplicate-free.
std::vector<IntVec> hull_cycle(std::vector<IntVec> pts) {
  std::sort(pts.begin(), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<IntVec> lower, upper;
  for (const IntVec& p : pts) {
    while (lower.size() >= 2 && cross(lower[lower.size() - 2], lower.back(), p) <= 0) {
      lower.pop_back();
    }
    lower.push_back(p);
  }
  for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
    while (upper.size() >= 2 && cross(upper[upper.size() - 2], upper.back(), *it) <= 0) {
      upper.pop_back();
    }
    upper.push_back(*it);
  }
  lower.pop_back();
  upper.pop_back();
  lower.insert(lower.end(), upper.begin(), upper.end());
  return lower;
}

}  // namespace

std::string render_svg(const Triangulation& t) {
  if (t.dim != 2) throw DimensionUnsupported("svg rendering needs a 2d triangulation");
  if (t.points.empty()) throw std::invalid_argument("empty triangulation");

  long minx = to_long(t.points[0][0]), maxx = minx;
  long miny = to_long(t.points[0][1]), maxy = miny;
  for (const IntVec& p : t.points) {
    minx = std::min(minx, to_long(p[0]));
    maxx = std::max(maxx, to_long(p[0]));
    miny = std::min(miny, to_long(p[1]));
    maxy = std::max(maxy, to_long(p[1]));
  }
  const long w = kUnit * (maxx - minx) + 2 * kMargin;
  const long h = kUnit * (maxy - miny) + 2 * kMargin;
  auto px = [&](const Int& x) { return kMargin + kUnit * (to_long(x) - minx); };
  auto py = [&](const Int& y) { return kMargin + kUnit * (maxy - to_long(y)); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
  out << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"#ffffff\"/>\n";

  for (long y = maxy; y >= miny; --y) {
    for (long x = minx; x <= maxx; ++x) {
      out << "<circle cx=\"" << (kMargin + kUnit * (x - minx)) << "\" cy=\""
          << (kMargin + kUnit * (maxy - y)) << "\" r=\"2\" fill=\"#c8c8c8\"/>\n";
    }
  }

  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& s : t.simplices) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (std::size_t j = i + 1; j < s.size(); ++j) {
        edges.insert({std::min(s[i], s[j]), std::max(s[i], s[j])});
      }
    }
  }
  for (const auto& [a, b] : edges) {
    out << "<line x1=\"" << px(t.points[a][0]) << "\" y1=\"" << py(t.points[a][1])
        << "\" x2=\"" << px(t.points[b][0]) << "\" y2=\"" << py(t.points[b][1])
        << "\" stroke=\"#3a6ea5\" stroke-width=\"2\"/>\n";
  }

  std::vector<IntVec> cycle = hull_cycle(t.points);
  out << "<path d=\"";
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    out << (i == 0 ? "M" : " L") << px(cycle[i][0]) << " " << py(cycle[i][1]);
  }
  out << " Z\" fill=\"none\" stroke=\"#1f2430\" stroke-width=\"3\"/>\n";

  for (std::size_t i = 0; i < t.points.size(); ++i) {
    if (t.interior[i]) {
      out << "<circle cx=\"" << px(t.points[i][0]) << "\" cy=\"" << py(t.points[i][1])
          << "\" r=\"6\" fill=\"#c0392b\"/>\n";
    } else {
      out << "<circle cx=\"" << px(t.points[i][0]) << "\" cy=\"" << py(t.points[i][1])
          << "\" r=\"4\" fill=\"#1f2430\"/>\n";
    }
  }

  out << "</svg>\n";
  return out.str();
}

}  // namespace crepant
