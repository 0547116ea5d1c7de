#include "nestkit/render.hpp"

#include <cmath>
#include <cstddef>
#include <cstdio>

namespace nestkit {
namespace {

constexpr double kCanvas = 1000.0;
constexpr double kMargin = 60.0;
constexpr double kTau = 6.283185307179586;

struct Pt {
  double x = kCanvas / 2;
  double y = kCanvas / 2;
};

Pt on_circle(std::size_t i, std::size_t count) {
  const double a = kTau * static_cast<double>(i) / static_cast<double>(count);
  const double r = kCanvas / 2 - kMargin;
  return {kCanvas / 2 + r * std::sin(a), kCanvas / 2 - r * std::cos(a)};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s(buf);
  return s == "-0.000" ? "0.000" : s;
}

// Gauss-Seidel relaxation of the barycentric system. The round count is
// fixed so equal inputs give equal bytes.
std::vector<Pt> layout(const PlaneGraph& g, bool* degenerate) {
  const int n = g.n();
  std::vector<Pt> pos(n);
  std::vector<char> pinned(n, 0);
  std::vector<int> ring;
  for (int d : g.face_darts(g.outer_face())) {
    const int v = g.origin(d);
    if (!pinned[v]) {
      pinned[v] = 1;
      ring.push_back(v);
    }
  }
  for (std::size_t i = 0; i < ring.size(); ++i) pos[ring[i]] = on_circle(i, ring.size());

  for (int round = 0; round < 1200; ++round)
    for (int v = 0; v < n; ++v) {
      if (pinned[v] || g.degree(v) == 0) continue;
      double sx = 0, sy = 0;
      for (int d : g.out_darts(v)) {
        sx += pos[g.head(d)].x;
        sy += pos[g.head(d)].y;
      }
      pos[v] = {sx / g.degree(v), sy / g.degree(v)};
    }

  *degenerate = ring.size() < 3;
  for (int u = 0; u < n && !*degenerate; ++u)
    for (int v = u + 1; v < n; ++v) {
      const double dx = pos[u].x - pos[v].x, dy = pos[u].y - pos[v].y;
      if (dx * dx + dy * dy < 1e-6) {
        *degenerate = true;
        break;
      }
    }
  if (*degenerate)
    for (int v = 0; v < n; ++v) pos[v] = on_circle(static_cast<std::size_t>(v), n);
  return pos;
}

const char* kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace

std::string render_svg(const PlaneGraph& g, const std::vector<std::vector<int>>& highlight) {
  for (const auto& walk : highlight)
    for (int v : walk)
      expect(v >= 0 && v < g.n(), Errc::bad_input, "highlight vertex out of range");

  bool degenerate = false;
  const std::vector<Pt> pos = layout(g, &degenerate);

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\">\n";
  if (degenerate) out += "<!-- circular fallback layout -->\n";
  out += "<rect width=\"1000\" height=\"1000\" fill=\"#ffffff\"/>\n";
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto [u, v] = g.edge_ends(e);
    out += "<line x1=\"" + fmt(pos[u].x) + "\" y1=\"" + fmt(pos[u].y) + "\" x2=\"" +
           fmt(pos[v].x) + "\" y2=\"" + fmt(pos[v].y) + "\" stroke=\"#666666\" stroke-width=\"1.5\"/>\n";
  }
  for (std::size_t i = 0; i < highlight.size(); ++i) {
    out += "<polygon fill=\"none\" stroke=\"";
    out += kPalette[i % (sizeof kPalette / sizeof kPalette[0])];
    out += "\" stroke-width=\"4\" stroke-linejoin=\"round\" points=\"";
    for (std::size_t j = 0; j < highlight[i].size(); ++j) {
      if (j) out += ' ';
      out += fmt(pos[highlight[i][j]].x) + "," + fmt(pos[highlight[i][j]].y);
    }
    out += "\"/>\n";
  }
  for (int v = 0; v < g.n(); ++v)
    out += "<circle cx=\"" + fmt(pos[v].x) + "\" cy=\"" + fmt(pos[v].y) +
           "\" r=\"4\" fill=\"#1a1a1a\"/>\n";
  out += "</svg>\n";
  return out;
}

std::string render_svg(const PlaneGraph& g, const Nest& nest) {
  std::vector<std::vector<int>> walks;
  for (const CycleInG& c : nest.cycles) walks.push_back(c.vertices());
  return render_svg(g, walks);
}

std::string render_svg(const PlaneGraph& g, const std::vector<CycleInG>& rings) {
  std::vector<std::vector<int>> walks;
  for (const CycleInG& c : rings) walks.push_back(c.vertices());
  return render_svg(g, walks);
}

}  // namespace nestkit
