#include "floorgraph/vectorize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>

namespace floorgraph {

namespace {

// Mutable view of one box edge: the coordinate, its flag, and the opposite
// edge used to enforce the minimum side.
struct EdgeRef {
  double* coord;
  bool* fixed;
  double opposite;
  bool low;  // left or top edge
};

struct EdgeBox {
  double l, t, r, b;
  EdgeFlags fixed;

  static EdgeBox from(const AlignedBox& a) {
    return {a.box.left(), a.box.top(), a.box.right(), a.box.bottom(), a.fixed};
  }
  AlignedBox to(int id) const { return {RoomBox::from_edges(l, t, r, b, id), fixed}; }

  EdgeRef left() { return {&l, &fixed.left, r, true}; }
  EdgeRef right() { return {&r, &fixed.right, l, false}; }
  EdgeRef top() { return {&t, &fixed.top, b, true}; }
  EdgeRef bottom() { return {&b, &fixed.bottom, t, false}; }
};

bool keeps_min_side(const EdgeRef& e, double value, double min_side) {
  return e.low ? e.opposite - value >= min_side : value - e.opposite >= min_side;
}

// Nearest boundary line with the given orientation whose span overlaps
// (lo, hi) by more than round-off.
std::optional<double> nearest_line(const Boundary& b, bool vertical, double at, double lo, double hi) {
  std::optional<double> best;
  for (std::size_t i = 0; i < b.edge_count(); ++i) {
    const Segment s = b.edge(i);
    if (vertical != s.vertical()) continue;
    const double pos = vertical ? s.a.x : s.a.y;
    const double s0 = vertical ? std::min(s.a.y, s.b.y) : std::min(s.a.x, s.b.x);
    const double s1 = vertical ? std::max(s.a.y, s.b.y) : std::max(s.a.x, s.b.x);
    if (std::min(s1, hi) - std::max(s0, lo) <= 1e-9) continue;
    if (!best || std::abs(pos - at) < std::abs(*best - at)) best = pos;
  }
  return best;
}

// True when the edge already lies on a parallel boundary line, whatever the
// spans. A snapped edge can lose its overlap once a perpendicular edge moves.
bool on_boundary_line(const Boundary& b, bool vertical, double at) {
  for (std::size_t i = 0; i < b.edge_count(); ++i) {
    const Segment s = b.edge(i);
    if (vertical == s.vertical() && std::abs((vertical ? s.a.x : s.a.y) - at) <= 1e-9) return true;
  }
  return false;
}

bool snap_edge_to_boundary(EdgeBox& box, EdgeRef e, bool vertical, const Boundary& b, const AlignConfig& cfg) {
  if (on_boundary_line(b, vertical, *e.coord)) {
    *e.coord = std::round(*e.coord);
    *e.fixed = true;
    return false;
  }
  const double lo = vertical ? box.t : box.l;
  const double hi = vertical ? box.b : box.r;
  const auto line = nearest_line(b, vertical, *e.coord, lo, hi);
  if (!line) return false;
  const double dist = std::abs(*line - *e.coord);
  if (dist >= cfg.tau) return false;
  if (dist == 0) {
    *e.fixed = true;
    return false;
  }
  if (*e.fixed || !keeps_min_side(e, *line, cfg.min_box_side)) return false;
  *e.coord = *line;
  *e.fixed = true;
  return true;
}

// Brings two edges together following the fixed-edge rule. Returns false
// when nothing could move.
bool join(EdgeRef a, EdgeRef b, const AlignConfig& cfg) {
  if (std::abs(*a.coord - *b.coord) >= cfg.tau) return false;
  if (*a.fixed && *b.fixed) return false;
  double target;
  if (*a.fixed) target = *a.coord;
  else if (*b.fixed) target = *b.coord;
  else target = (*a.coord + *b.coord) / 2;
  if (!keeps_min_side(a, target, cfg.min_box_side) || !keeps_min_side(b, target, cfg.min_box_side)) return false;
  *a.coord = target;
  *b.coord = target;
  *a.fixed = true;
  *b.fixed = true;
  return true;
}

}  // namespace

std::vector<AlignedBox> snap_to_boundary(const std::vector<RoomBox>& boxes, const Boundary& b, const AlignConfig& cfg) {
  std::vector<AlignedBox> out;
  for (const RoomBox& rb : boxes) {
    EdgeBox e = EdgeBox::from({rb, {}});
    // An edge snaps at most once; repeat so span changes from other snaps settle.
    for (int pass = 0; pass < 4; ++pass) {
      bool moved = false;
      moved |= snap_edge_to_boundary(e, e.left(), true, b, cfg);
      moved |= snap_edge_to_boundary(e, e.top(), false, b, cfg);
      moved |= snap_edge_to_boundary(e, e.right(), true, b, cfg);
      moved |= snap_edge_to_boundary(e, e.bottom(), false, b, cfg);
      if (!moved) break;
    }
    out.push_back(e.to(rb.room_id));
  }
  return out;
}

std::vector<AlignedBox> snap_adjacent(std::vector<AlignedBox> boxes, const LayoutGraph& g, const AlignConfig& cfg) {
  std::map<int, std::size_t> index;
  for (std::size_t i = 0; i < boxes.size(); ++i) index[boxes[i].box.room_id] = i;
  std::vector<EdgeBox> eb;
  for (const AlignedBox& a : boxes) eb.push_back(EdgeBox::from(a));

  std::vector<GraphEdge> edges = g.edges;
  std::sort(edges.begin(), edges.end(),
            [](const GraphEdge& a, const GraphEdge& b) { return std::tie(a.src, a.dst) < std::tie(b.src, b.dst); });
  for (const GraphEdge& ge : edges) {
    if (ge.rel == RelationType::Inside || ge.rel == RelationType::Outside) continue;
    const auto si = index.find(ge.src), di = index.find(ge.dst);
    if (si == index.end() || di == index.end()) continue;
    EdgeBox& s = eb[si->second];
    EdgeBox& d = eb[di->second];

    // Facing pair on each axis implied by the relation (src relative to dst).
    std::optional<std::pair<EdgeRef, EdgeRef>> fx, fy;
    switch (ge.rel) {
      case RelationType::LeftOf: fx.emplace(s.right(), d.left()); break;
      case RelationType::RightOf: fx.emplace(s.left(), d.right()); break;
      case RelationType::Above: fy.emplace(s.bottom(), d.top()); break;
      case RelationType::Below: fy.emplace(s.top(), d.bottom()); break;
      case RelationType::LeftAbove: fx.emplace(s.right(), d.left()); fy.emplace(s.bottom(), d.top()); break;
      case RelationType::RightAbove: fx.emplace(s.left(), d.right()); fy.emplace(s.bottom(), d.top()); break;
      case RelationType::LeftBelow: fx.emplace(s.right(), d.left()); fy.emplace(s.top(), d.bottom()); break;
      case RelationType::RightBelow: fx.emplace(s.left(), d.right()); fy.emplace(s.top(), d.bottom()); break;
      default: break;
    }
    if (fx && fy) {
      const double gx = std::abs(*fx->first.coord - *fx->second.coord);
      const double gy = std::abs(*fy->first.coord - *fy->second.coord);
      if (gx <= gy) fy.reset();
      else fx.reset();
    }
    if (fx) {
      join(fx->first, fx->second, cfg);
      join(s.top(), d.top(), cfg);
      join(s.bottom(), d.bottom(), cfg);
    } else if (fy) {
      join(fy->first, fy->second, cfg);
      join(s.left(), d.left(), cfg);
      join(s.right(), d.right(), cfg);
    }
  }
  for (std::size_t i = 0; i < boxes.size(); ++i) boxes[i] = eb[i].to(boxes[i].box.room_id);
  return boxes;
}

std::vector<RoomBox> strip_flags(const std::vector<AlignedBox>& boxes) {
  std::vector<RoomBox> out;
  for (const AlignedBox& a : boxes) out.push_back(a.box);
  return out;
}

std::vector<RoomBox> align_rooms(const std::vector<RoomBox>& boxes, const LayoutGraph& g, const Boundary& b,
                                 const AlignConfig& cfg) {
  return strip_flags(snap_adjacent(snap_to_boundary(boxes, b, cfg), g, cfg));
}

VectorFloorplan clip_and_polygonize(const FloorplanRaster& raster, const LayoutGraph& g, const Boundary& b) {
  VectorFloorplan vf;
  vf.boundary = b;
  const int w = raster.labels.width(), h = raster.labels.height();
  for (const RoomNode& n : g.nodes) {
    auto rings = trace_region(w, h, [&](int x, int y) { return raster.labels.at(x, y) == n.id; });
    if (rings.empty()) {
      vf.dropped_rooms.push_back(n.id);
      continue;
    }
    vf.rooms.push_back({n.id, n.type, std::move(rings)});
  }
  return vf;
}

FloorplanRaster rasterize_floorplan(const VectorFloorplan& vf) {
  const int res = vf.boundary.resolution();
  FloorplanRaster r{Grid<int>(res, res, kExterior)};
  for (const RoomRegion& room : vf.rooms) {
    const Mask m = rasterize_rings(room.rings, res, res);
    for (int y = 0; y < res; ++y)
      for (int x = 0; x < res; ++x)
        if (m.at(x, y)) r.labels.at(x, y) = room.room_id;
  }
  return r;
}

std::vector<WallSegment> wall_segments(const VectorFloorplan& vf) {
  const FloorplanRaster r = rasterize_floorplan(vf);
  const int res = r.resolution();
  auto label = [&](int x, int y) { return r.labels.get_or(x, y, kExterior); };
  auto pair_of = [](int a, int b) -> std::optional<std::pair<int, int>> {
    const bool ra = a >= 0, rb = b >= 0;
    if (!ra && !rb) return std::nullopt;
    if (a == b) return std::nullopt;
    if (!ra) return std::make_pair(b, -1);
    if (!rb) return std::make_pair(a, -1);
    return std::make_pair(std::min(a, b), std::max(a, b));
  };

  std::vector<WallSegment> out;
  // Horizontal walls: line y between rows y-1 and y.
  for (int y = 0; y <= res; ++y) {
    std::optional<std::pair<int, int>> run;
    int start = 0;
    for (int x = 0; x <= res; ++x) {
      const auto p = x < res ? pair_of(label(x, y - 1), label(x, y)) : std::nullopt;
      if (p != run) {
        if (run) out.push_back({{{double(start), double(y)}, {double(x), double(y)}}, run->first, run->second});
        run = p;
        start = x;
      }
    }
  }
  // Vertical walls: line x between columns x-1 and x.
  for (int x = 0; x <= res; ++x) {
    std::optional<std::pair<int, int>> run;
    int start = 0;
    for (int y = 0; y <= res; ++y) {
      const auto p = y < res ? pair_of(label(x - 1, y), label(x, y)) : std::nullopt;
      if (p != run) {
        if (run) out.push_back({{{double(x), double(start)}, {double(x), double(y)}}, run->first, run->second});
        run = p;
        start = y;
      }
    }
  }
  return out;
}

namespace {

Segment centered_piece(const Segment& s, double length) {
  const Point m = s.midpoint();
  const double half = length / 2;
  if (s.horizontal()) return {{m.x - half, m.y}, {m.x + half, m.y}};
  return {{m.x, m.y - half}, {m.x, m.y + half}};
}

// Parts of an axis-aligned segment not covered by `cut` (collinear only).
std::vector<Segment> subtract(const Segment& s, const Segment& cut) {
  const bool h = s.horizontal();
  const bool collinear = h ? (cut.horizontal() && cut.a.y == s.a.y) : (cut.vertical() && cut.a.x == s.a.x);
  if (!collinear) return {s};
  const double s0 = h ? std::min(s.a.x, s.b.x) : std::min(s.a.y, s.b.y);
  const double s1 = h ? std::max(s.a.x, s.b.x) : std::max(s.a.y, s.b.y);
  const double c0 = h ? std::min(cut.a.x, cut.b.x) : std::min(cut.a.y, cut.b.y);
  const double c1 = h ? std::max(cut.a.x, cut.b.x) : std::max(cut.a.y, cut.b.y);
  if (c1 <= s0 || c0 >= s1) return {s};
  auto make = [&](double a, double b) {
    return h ? Segment{{a, s.a.y}, {b, s.a.y}} : Segment{{s.a.x, a}, {s.a.x, b}};
  };
  std::vector<Segment> out;
  if (c0 > s0) out.push_back(make(s0, c0));
  if (c1 < s1) out.push_back(make(c1, s1));
  return out;
}

}  // namespace

VectorFloorplan place_doors_windows(VectorFloorplan vf, const LayoutGraph& g, const OpeningConfig& cfg) {
  vf.doors.clear();
  vf.windows.clear();
  vf.unsatisfied.clear();
  const std::vector<WallSegment> walls = wall_segments(vf);

  std::vector<GraphEdge> edges = g.edges;
  std::sort(edges.begin(), edges.end(),
            [](const GraphEdge& a, const GraphEdge& b) { return std::tie(a.src, a.dst) < std::tie(b.src, b.dst); });
  for (const GraphEdge& e : edges) {
    const int a = std::min(e.src, e.dst), b = std::max(e.src, e.dst);
    const WallSegment* best = nullptr;
    for (const WallSegment& w : walls) {
      if (w.room_a != a || w.room_b != b) continue;
      if (!best || w.segment.length() > best->segment.length()) best = &w;
    }
    if (!best || best->segment.length() < cfg.door_width) {
      vf.unsatisfied.push_back({e.src, e.dst});
      continue;
    }
    vf.doors.push_back({centered_piece(best->segment, cfg.door_width), e.src, e.dst});
  }

  for (const WallSegment& w : walls) {
    if (w.room_b != -1) continue;
    for (const Segment& piece : subtract(w.segment, vf.boundary.door())) {
      const double len = piece.length();
      if (len < cfg.window_min_segment) continue;
      vf.windows.push_back({centered_piece(piece, std::min(len / 2, cfg.window_max_length)), w.room_a});
    }
  }
  return vf;
}

}  // namespace floorgraph
