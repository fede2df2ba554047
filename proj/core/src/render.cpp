#include "glyphga/render.hpp"

#include <algorithm>
#include <cmath>

namespace glyphga {

namespace {

struct Plotter {
  BinaryRaster& r;

  void dot(double x, double y) {
    const int px = std::clamp(static_cast<int>(std::lround(x)), 0, r.width - 1);
    const int py = std::clamp(static_cast<int>(std::lround(y)), 0, r.height - 1);
    r.set(px, py, true);
  }

  void segment(Point a, Point b) {
    int x0 = std::clamp(static_cast<int>(std::lround(a.x)), 0, r.width - 1);
    int y0 = std::clamp(static_cast<int>(std::lround(a.y)), 0, r.height - 1);
    const int x1 = std::clamp(static_cast<int>(std::lround(b.x)), 0, r.width - 1);
    const int y1 = std::clamp(static_cast<int>(std::lround(b.y)), 0, r.height - 1);
    const int dx = std::abs(x1 - x0), dy = -std::abs(y1 - y0);
    const int sx = x0 < x1 ? 1 : -1, sy = y0 < y1 ? 1 : -1;
    int err = dx + dy;
    while (true) {
      r.set(x0, y0, true);
      if (x0 == x1 && y0 == y1) break;
      const int e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        x0 += sx;
      }
      if (e2 <= dx) {
        err += dx;
        y0 += sy;
      }
    }
  }

  void polyline(const std::vector<Point>& pts) {
    for (std::size_t i = 1; i < pts.size(); ++i) segment(pts[i - 1], pts[i]);
  }
};

}  // namespace

BinaryRaster render_glyph(const Glyph& g, const Params& p) {
  BinaryRaster out(p.canvas_width, p.canvas_height);
  Plotter plot{out};

  for (const Edge& e : g.edges) {
    if (e.kind == EdgeKind::Line) {
      plot.segment(e.start, e.end);
      continue;
    }
    if (squared_distance(e.start, e.end) < 0.25) {
      // Closed curve: the circle through start and the diametric max point.
      const double cx = (e.start.x + e.max_point.x) / 2.0;
      const double cy = (e.start.y + e.max_point.y) / 2.0;
      const double radius = std::sqrt(squared_distance(e.start, e.max_point)) / 2.0;
      const int steps = std::max(16, static_cast<int>(radius * 8));
      std::vector<Point> pts;
      const double phase = std::atan2(e.start.y - cy, e.start.x - cx);
      for (int i = 0; i <= steps; ++i) {
        const double a = phase + 2.0 * 3.14159265358979323846 * i / steps;
        pts.push_back(Point{static_cast<float>(cx + radius * std::cos(a)),
                            static_cast<float>(cy + radius * std::sin(a))});
      }
      plot.polyline(pts);
      continue;
    }
    // Open curve: the circular arc through start, max_point and end; when
    // the three points are nearly collinear the bow collapses to a polyline.
    const double ax = e.start.x, ay = e.start.y;
    const double bx = e.max_point.x, by = e.max_point.y;
    const double cx2 = e.end.x, cy2 = e.end.y;
    const double d = 2.0 * (ax * (by - cy2) + bx * (cy2 - ay) + cx2 * (ay - by));
    if (std::abs(d) < 1e-6) {
      plot.segment(e.start, e.max_point);
      plot.segment(e.max_point, e.end);
      continue;
    }
    const double a2 = ax * ax + ay * ay, b2 = bx * bx + by * by, c2 = cx2 * cx2 + cy2 * cy2;
    const double ux = (a2 * (by - cy2) + b2 * (cy2 - ay) + c2 * (ay - by)) / d;
    const double uy = (a2 * (cx2 - bx) + b2 * (ax - cx2) + c2 * (bx - ax)) / d;
    const double radius = std::hypot(ax - ux, ay - uy);
    double t0 = std::atan2(ay - uy, ax - ux);
    double tm = std::atan2(by - uy, bx - ux);
    double t1 = std::atan2(cy2 - uy, cx2 - ux);
    // Sweep from start to end through the max point.
    auto norm = [](double t) {
      const double tau = 2.0 * 3.14159265358979323846;
      while (t < 0) t += tau;
      while (t >= tau) t -= tau;
      return t;
    };
    const double ccw_m = norm(tm - t0);
    const double ccw_1 = norm(t1 - t0);
    double sweep;
    if (ccw_m <= ccw_1) {
      sweep = ccw_1;  // counterclockwise passes the max point first
    } else {
      sweep = ccw_1 - 2.0 * 3.14159265358979323846;  // go the other way round
    }
    const int steps = std::max(16, static_cast<int>(std::abs(sweep) * radius));
    std::vector<Point> pts;
    bool inside = true;
    for (int i = 0; i <= steps; ++i) {
      const double t = t0 + sweep * i / steps;
      const double px = ux + radius * std::cos(t);
      const double py = uy + radius * std::sin(t);
      if (px < 0 || py < 0 || px > out.width - 1 || py > out.height - 1) inside = false;
      pts.push_back(Point{static_cast<float>(px), static_cast<float>(py)});
    }
    if (!inside) {
      // The arc bulges off the canvas; fall back to the quadratic that still
      // passes through the max point at its midpoint.
      const double qx = 2.0 * bx - (ax + cx2) / 2.0;
      const double qy = 2.0 * by - (ay + cy2) / 2.0;
      pts.clear();
      inside = true;
      for (int i = 0; i <= 48; ++i) {
        const double t = static_cast<double>(i) / 48;
        const double u = 1.0 - t;
        const double px = u * u * ax + 2 * u * t * qx + t * t * cx2;
        const double py = u * u * ay + 2 * u * t * qy + t * t * cy2;
        if (px < 0 || py < 0 || px > out.width - 1 || py > out.height - 1) inside = false;
        pts.push_back(Point{static_cast<float>(px), static_cast<float>(py)});
      }
      if (!inside) {
        // Last resort: the spec's plain polyline through the max point.
        pts = {e.start, e.max_point, e.end};
      }
    }
    plot.polyline(pts);
  }
  return out;
}

}  // namespace glyphga
