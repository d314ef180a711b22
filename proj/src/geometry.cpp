#include "floorgraph/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "floorgraph/error.hpp"

namespace floorgraph {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidBoundary: return "invalid_boundary";
    case ErrorCode::DegenerateDirection: return "degenerate_direction";
    case ErrorCode::Format: return "format_error";
    case ErrorCode::VersionMismatch: return "version_mismatch";
    case ErrorCode::InvalidGraph: return "invalid_graph";
    case ErrorCode::InvalidEdit: return "invalid_edit";
    case ErrorCode::InfeasibleBoundary: return "infeasible_boundary";
    case ErrorCode::NonFiniteLoss: return "non_finite_loss";
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::UnknownSession: return "unknown_session";
    case ErrorCode::UnknownRecord: return "unknown_record";
    case ErrorCode::Io: return "io_error";
  }
  return "unknown";
}

double Segment::length() const { return std::hypot(b.x - a.x, b.y - a.y); }

double Rect::area() const { return std::max(0.0, width()) * std::max(0.0, height()); }

double overlap_area(const Rect& a, const Rect& b) {
  const double w = std::min(a.x1, b.x1) - std::max(a.x0, b.x0);
  const double h = std::min(a.y1, b.y1) - std::max(a.y0, b.y0);
  return (w > 0 && h > 0) ? w * h : 0.0;
}

std::size_t count_set(const Mask& mask) {
  return static_cast<std::size_t>(std::count_if(mask.cells().begin(), mask.cells().end(),
                                                [](std::uint8_t v) { return v != 0; }));
}

double signed_area(const Ring& ring) {
  double twice = 0.0;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = ring[i];
    const Point& q = ring[(i + 1) % n];
    twice += p.x * q.y - q.x * p.y;
  }
  return twice / 2.0;
}

namespace {

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::InvalidBoundary, "invalid boundary: " + what);
}

bool is_integer(double v) { return std::isfinite(v) && std::floor(v) == v; }

// Closed axis-aligned segments.
bool segments_touch(const Segment& s, const Segment& t) {
  auto lo = [](double a, double b) { return std::min(a, b); };
  auto hi = [](double a, double b) { return std::max(a, b); };
  if (s.horizontal() && t.horizontal()) {
    return s.a.y == t.a.y && lo(s.a.x, s.b.x) <= hi(t.a.x, t.b.x) &&
           lo(t.a.x, t.b.x) <= hi(s.a.x, s.b.x);
  }
  if (s.vertical() && t.vertical()) {
    return s.a.x == t.a.x && lo(s.a.y, s.b.y) <= hi(t.a.y, t.b.y) &&
           lo(t.a.y, t.b.y) <= hi(s.a.y, s.b.y);
  }
  const Segment& h = s.horizontal() ? s : t;
  const Segment& v = s.horizontal() ? t : s;
  return v.a.x >= lo(h.a.x, h.b.x) && v.a.x <= hi(h.a.x, h.b.x) &&
         h.a.y >= lo(v.a.y, v.b.y) && h.a.y <= hi(v.a.y, v.b.y);
}

bool on_segment(const Segment& s, Point p) {
  if (s.horizontal()) {
    return p.y == s.a.y && p.x >= std::min(s.a.x, s.b.x) && p.x <= std::max(s.a.x, s.b.x);
  }
  return p.x == s.a.x && p.y >= std::min(s.a.y, s.b.y) && p.y <= std::max(s.a.y, s.b.y);
}

// 0 = E, 1 = S, 2 = W, 3 = N in raster coordinates.
int direction_of(Point from, Point to) {
  if (to.y == from.y) return to.x > from.x ? 0 : 2;
  return to.y > from.y ? 1 : 3;
}

}  // namespace

Boundary Boundary::make(std::vector<Point> vertices, Segment door, int resolution) {
  if (resolution <= 0) invalid("resolution must be positive");
  for (const Point& p : vertices) {
    if (!is_integer(p.x) || !is_integer(p.y)) invalid("vertices must be integer pixel corners");
    if (p.x < 0 || p.y < 0 || p.x >= resolution || p.y >= resolution)
      invalid("vertex outside [0, resolution)");
  }

  // Drop consecutive duplicates, including the closing vertex.
  std::vector<Point> pts;
  for (const Point& p : vertices) {
    if (pts.empty() || !(pts.back() == p)) pts.push_back(p);
  }
  while (pts.size() > 1 && pts.front() == pts.back()) pts.pop_back();
  if (pts.size() < 4) invalid("fewer than four distinct vertices");

  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point& p = pts[i];
    const Point& q = pts[(i + 1) % pts.size()];
    if (p.x != q.x && p.y != q.y) invalid("edge is not axis-aligned");
  }

  // Collinear vertices are merged away; a reversal is a zero-width spike.
  bool changed = true;
  while (changed && pts.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const std::size_t n = pts.size();
      const Point& prev = pts[(i + n - 1) % n];
      const Point& cur = pts[i];
      const Point& next = pts[(i + 1) % n];
      const int din = direction_of(prev, cur);
      const int dout = direction_of(cur, next);
      if (din == dout) {
        pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
      if ((din + 2) % 4 == dout) invalid("edges fold back on themselves");
    }
  }
  if (pts.size() < 4) invalid("fewer than four corners");

  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Segment si{pts[i], pts[(i + 1) % n]};
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent through the wrap-around
      const Segment sj{pts[j], pts[(j + 1) % n]};
      if (segments_touch(si, sj)) invalid("polygon is not simple");
    }
  }

  if (signed_area(pts) < 0) std::reverse(pts.begin(), pts.end());

  if (!is_integer(door.a.x) || !is_integer(door.a.y) || !is_integer(door.b.x) ||
      !is_integer(door.b.y))
    invalid("door endpoints must be integer pixel corners");
  if (door.a == door.b) invalid("door segment is degenerate");
  if (!door.horizontal() && !door.vertical()) invalid("door is not axis-aligned");

  std::size_t found = n;
  int hits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Segment e{pts[i], pts[(i + 1) % n]};
    if (on_segment(e, door.a) && on_segment(e, door.b)) {
      found = i;
      ++hits;
    }
  }
  if (hits != 1) invalid("front door must lie on exactly one boundary edge");

  Boundary b;
  b.vertices_ = std::move(pts);
  b.door_ = door;
  b.resolution_ = resolution;
  b.door_edge_ = found;
  return b;
}

Segment Boundary::edge(std::size_t i) const {
  return {vertices_[i % vertices_.size()], vertices_[(i + 1) % vertices_.size()]};
}

Rect Boundary::bbox() const {
  Rect r{vertices_.front().x, vertices_.front().y, vertices_.front().x, vertices_.front().y};
  for (const Point& p : vertices_) {
    r.x0 = std::min(r.x0, p.x);
    r.y0 = std::min(r.y0, p.y);
    r.x1 = std::max(r.x1, p.x);
    r.y1 = std::max(r.y1, p.y);
  }
  return r;
}

double Boundary::perimeter() const {
  double total = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) total += edge(i).length();
  return total;
}

double TurningFunction::value_at(double s) const {
  auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), s,
                             [](double v, const TurningBreakpoint& bp) { return v < bp.arc_fraction; });
  if (it == breakpoints.begin()) return 0.0;
  return std::prev(it)->cumulative_angle;
}

TurningFunction compute_turning_function(const Boundary& b) {
  const auto& v = b.vertices();
  const std::size_t n = v.size();
  const std::size_t d = b.door_edge();
  const Point edge_start = v[d];

  // Start on the clockwise-first side of the door.
  const Segment& door = b.door();
  auto dist = [](Point p, Point q) { return std::abs(p.x - q.x) + std::abs(p.y - q.y); };
  const Point start = dist(door.a, edge_start) <= dist(door.b, edge_start) ? door.a : door.b;

  const double perimeter = b.perimeter();
  TurningFunction tf;
  tf.total_perimeter = perimeter;
  tf.breakpoints.reserve(n);

  double pos = dist(start, v[(d + 1) % n]);
  double angle = 0.0;
  for (std::size_t step = 0; step < n; ++step) {
    const std::size_t i = (d + 1 + step) % n;
    const Point& prev = v[(i + n - 1) % n];
    const Point& cur = v[i];
    const Point& next = v[(i + 1) % n];
    const double cross = (cur.x - prev.x) * (next.y - cur.y) - (cur.y - prev.y) * (next.x - cur.x);
    angle += cross > 0 ? 90.0 : -90.0;
    tf.breakpoints.push_back({pos / perimeter, angle});
    pos += dist(cur, next);
  }
  // The corner at the door edge's start is reached last; pin it exactly when
  // the door begins at that corner.
  if (start == edge_start) tf.breakpoints.back().arc_fraction = 1.0;
  return tf;
}

double turning_distance(const TurningFunction& a, const TurningFunction& b) {
  const auto& pa = a.breakpoints;
  const auto& pb = b.breakpoints;
  std::size_t i = 0;
  std::size_t j = 0;
  double fa = 0.0;
  double fb = 0.0;
  double cur = 0.0;
  double acc = 0.0;
  while (cur < 1.0) {
    while (i < pa.size() && pa[i].arc_fraction <= cur) fa = pa[i++].cumulative_angle;
    while (j < pb.size() && pb[j].arc_fraction <= cur) fb = pb[j++].cumulative_angle;
    double next = 1.0;
    if (i < pa.size()) next = std::min(next, pa[i].arc_fraction);
    if (j < pb.size()) next = std::min(next, pb[j].arc_fraction);
    const double diff = fa - fb;
    acc += diff * diff * (next - cur);
    cur = next;
  }
  return std::sqrt(acc);
}

Point door_direction(const Boundary& b) {
  const Point c = b.bbox().center();
  const Point m = b.door().midpoint();
  const double dx = m.x - c.x;
  const double dy = c.y - m.y;
  const double len = std::hypot(dx, dy);
  if (len < 1e-12) {
    throw Error(ErrorCode::DegenerateDirection, "door center coincides with the bounding-box center");
  }
  return {dx / len, dy / len};
}

Point rotate_point(Point p, int k, int resolution) {
  k = ((k % 4) + 4) % 4;
  const double span = resolution - 1;
  for (int step = 0; step < k; ++step) p = {span - p.y, p.x};
  return p;
}

Boundary rotate_boundary(const Boundary& b, int k) {
  std::vector<Point> pts;
  pts.reserve(b.vertices().size());
  for (const Point& p : b.vertices()) pts.push_back(rotate_point(p, k, b.resolution()));
  const Segment door{rotate_point(b.door().a, k, b.resolution()),
                     rotate_point(b.door().b, k, b.resolution())};
  return Boundary::make(std::move(pts), door, b.resolution());
}

namespace {

// Scanline fill of pixel centers strictly between crossing pairs.
void fill_scanlines(const std::vector<Ring>& rings, Mask& mask) {
  std::vector<double> xs;
  for (int j = 0; j < mask.height(); ++j) {
    const double y = j + 0.5;
    xs.clear();
    for (const Ring& ring : rings) {
      const std::size_t n = ring.size();
      for (std::size_t i = 0; i < n; ++i) {
        const Point& p = ring[i];
        const Point& q = ring[(i + 1) % n];
        if (p.x != q.x) continue;
        const double lo = std::min(p.y, q.y);
        const double hi = std::max(p.y, q.y);
        if (y >= lo && y < hi) xs.push_back(p.x);
      }
    }
    std::sort(xs.begin(), xs.end());
    for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
      int start = static_cast<int>(std::ceil(xs[k] - 0.5));
      if (start + 0.5 <= xs[k]) ++start;
      const int end = static_cast<int>(std::ceil(xs[k + 1] - 0.5)) - 1;
      for (int i = std::max(start, 0); i <= std::min(end, mask.width() - 1); ++i) {
        mask.at(i, j) ^= 1;
      }
    }
  }
}

// Marks inside pixels adjacent to the given segment.
void mark_along(const Segment& s, const Mask& inside, Mask& out) {
  if (s.horizontal()) {
    const int y = static_cast<int>(s.a.y);
    const int x0 = static_cast<int>(std::min(s.a.x, s.b.x));
    const int x1 = static_cast<int>(std::max(s.a.x, s.b.x));
    for (int x = x0; x < x1; ++x) {
      for (int yy : {y - 1, y}) {
        if (inside.get_or(x, yy, 0)) out.at(x, yy) = 1;
      }
    }
  } else {
    const int x = static_cast<int>(s.a.x);
    const int y0 = static_cast<int>(std::min(s.a.y, s.b.y));
    const int y1 = static_cast<int>(std::max(s.a.y, s.b.y));
    for (int y = y0; y < y1; ++y) {
      for (int xx : {x - 1, x}) {
        if (inside.get_or(xx, y, 0)) out.at(xx, y) = 1;
      }
    }
  }
}

}  // namespace

Mask rasterize_rings(const std::vector<Ring>& rings, int width, int height) {
  Mask mask(width, height, 0);
  fill_scanlines(rings, mask);
  return mask;
}

BoundaryRaster rasterize_boundary(const Boundary& b) {
  const int res = b.resolution();
  BoundaryRaster r{rasterize_rings({b.vertices()}, res, res), Mask(res, res, 0), Mask(res, res, 0)};
  for (std::size_t i = 0; i < b.edge_count(); ++i) mark_along(b.edge(i), r.inside, r.boundary);
  mark_along(b.door(), r.inside, r.door);
  return r;
}

std::vector<Ring> trace_region(int width, int height,
                               const std::function<bool(int, int)>& selected) {
  const int vw = width + 1;
  const int vh = height + 1;
  // state per (vertex, direction): 0 = no edge, 1 = pending, 2 = consumed
  std::vector<std::uint8_t> state(static_cast<std::size_t>(vw) * vh * 4, 0);
  auto slot = [&](int x, int y, int dir) -> std::uint8_t& {
    return state[(static_cast<std::size_t>(y) * vw + x) * 4 + dir];
  };
  auto sel = [&](int x, int y) {
    return x >= 0 && y >= 0 && x < width && y < height && selected(x, y);
  };

  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (!sel(x, y)) continue;
      if (!sel(x, y - 1)) slot(x, y, 0) = 1;
      if (!sel(x + 1, y)) slot(x + 1, y, 1) = 1;
      if (!sel(x, y + 1)) slot(x + 1, y + 1, 2) = 1;
      if (!sel(x - 1, y)) slot(x, y + 1, 3) = 1;
    }
  }

  static constexpr std::array<int, 4> kDx{1, 0, -1, 0};
  static constexpr std::array<int, 4> kDy{0, 1, 0, -1};

  std::vector<Ring> rings;
  for (int y = 0; y < vh; ++y) {
    for (int x = 0; x < vw; ++x) {
      for (int dir = 0; dir < 4; ++dir) {
        if (slot(x, y, dir) != 1) continue;
        std::vector<std::pair<Point, int>> walk;
        int cx = x, cy = y, cd = dir;
        bool open = true;
        while (open) {
          slot(cx, cy, cd) = 2;
          walk.push_back({{static_cast<double>(cx), static_cast<double>(cy)}, cd});
          cx += kDx[cd];
          cy += kDy[cd];
          open = false;
          // Right turn first keeps diagonal-touching pixels in separate rings.
          for (int turn : {1, 0, 3}) {
            const int nd = (cd + turn) % 4;
            if (cx == x && cy == y && nd == dir) break;
            if (slot(cx, cy, nd) == 1) {
              cd = nd;
              open = true;
              break;
            }
          }
        }
        Ring ring;
        const std::size_t m = walk.size();
        for (std::size_t k = 0; k < m; ++k) {
          if (walk[k].second != walk[(k + m - 1) % m].second) ring.push_back(walk[k].first);
        }
        rings.push_back(std::move(ring));
      }
    }
  }
  return rings;
}

}  // namespace floorgraph
