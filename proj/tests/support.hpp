#pragma once

// Shared fixtures and brute-force reference implementations for the tests
// and the acceptance runner. Nothing here calls the library code it checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "floorgraph/compose.hpp"
#include "floorgraph/corpus.hpp"
#include "floorgraph/geometry.hpp"
#include "floorgraph/room_box.hpp"
#include "floorgraph/vectorize.hpp"

namespace fgtest {

using namespace floorgraph;

inline Boundary rect_boundary(double x0, double y0, double x1, double y1, int res = kDefaultResolution) {
  const double mid = std::floor((x0 + x1) / 2);
  return Boundary::make({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}, {{mid - 2, y0}, {mid + 2, y0}}, res);
}

/// L-shape: rectangle with the bottom-right quadrant removed.
inline Boundary l_boundary(int res = kDefaultResolution) {
  const double a = res / 8.0, b = res * 7 / 8.0, m = res / 2.0;
  return Boundary::make({{a, a}, {b, a}, {b, m}, {m, m}, {m, b}, {a, b}}, {{a + 4, a}, {a + 8, a}}, res);
}

/// Random rectilinear polygon: a rectangle with random stepped corner
/// notches and a door of length >= 2 on a random long-enough edge.
inline Boundary random_boundary(std::mt19937_64& rng, int res = kDefaultResolution) {
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (;;) {
    const int w = uni(res / 3, res - 8), h = uni(res / 3, res - 8);
    const int x0 = uni(2, res - 2 - w), y0 = uni(2, res - 2 - h);
    const int x1 = x0 + w, y1 = y0 + h;
    // Corner notch sizes (0 = none); notch i cuts corner i of TL, TR, BR, BL.
    int nw[4], nh[4];
    for (int i = 0; i < 4; ++i) {
      const bool cut = uni(0, 1) == 1;
      nw[i] = cut ? uni(2, w / 3) : 0;
      nh[i] = cut ? uni(2, h / 3) : 0;
    }
    std::vector<Point> v;
    auto P = [&](int x, int y) { v.push_back({static_cast<double>(x), static_cast<double>(y)}); };
    if (nw[0]) { P(x0, y0 + nh[0]); P(x0 + nw[0], y0 + nh[0]); P(x0 + nw[0], y0); } else P(x0, y0);
    if (nw[1]) { P(x1 - nw[1], y0); P(x1 - nw[1], y0 + nh[1]); P(x1, y0 + nh[1]); } else P(x1, y0);
    if (nw[2]) { P(x1, y1 - nh[2]); P(x1 - nw[2], y1 - nh[2]); P(x1 - nw[2], y1); } else P(x1, y1);
    if (nw[3]) { P(x0 + nw[3], y1); P(x0 + nw[3], y1 - nh[3]); P(x0, y1 - nh[3]); } else P(x0, y1);
    const std::size_t e = static_cast<std::size_t>(uni(0, static_cast<int>(v.size()) - 1));
    const Point a = v[e], b = v[(e + 1) % v.size()];
    const int len = static_cast<int>(std::abs(a.x - b.x) + std::abs(a.y - b.y));
    if (len < 6) continue;
    const int door_len = uni(2, std::min(8, len - 2));
    const int off = uni(1, len - door_len - 1);
    const double dx = (b.x - a.x) / len, dy = (b.y - a.y) / len;
    const Segment door{{a.x + dx * off, a.y + dy * off}, {a.x + dx * (off + door_len), a.y + dy * (off + door_len)}};
    return Boundary::make(v, door, res);
  }
}

/// Even-odd ray casting against a ring list at point p.
inline bool point_in_rings(Point p, const std::vector<Ring>& rings) {
  bool in = false;
  for (const Ring& r : rings) {
    for (std::size_t i = 0, j = r.size() - 1; i < r.size(); j = i++) {
      const Point a = r[i], b = r[j];
      if ((a.y > p.y) != (b.y > p.y)) {
        const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
        if (p.x < x) in = !in;
      }
    }
  }
  return in;
}

inline std::vector<std::vector<bool>> inside_oracle(const Boundary& b) {
  const int res = b.resolution();
  std::vector<std::vector<bool>> m(res, std::vector<bool>(res));
  for (int y = 0; y < res; ++y)
    for (int x = 0; x < res; ++x) m[y][x] = point_in_rings({x + 0.5, y + 0.5}, {b.vertices()});
  return m;
}

/// Share of a 5x5 layout cell's pixel centers inside the outline.
inline double cell_interior_share(const Boundary& b, int row, int col) {
  const auto inside = inside_oracle(b);
  double x0 = 1e9, y0 = 1e9, x1 = -1e9, y1 = -1e9;
  for (const Point& p : b.vertices()) {
    x0 = std::min(x0, p.x), x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y), y1 = std::max(y1, p.y);
  }
  const double cw = (x1 - x0) / 5, ch = (y1 - y0) / 5;
  const double cx0 = x0 + col * cw, cx1 = cx0 + cw, cy0 = y0 + row * ch, cy1 = cy0 + ch;
  int total = 0, in = 0;
  for (int y = 0; y < b.resolution(); ++y)
    for (int x = 0; x < b.resolution(); ++x)
      if (x + 0.5 >= cx0 && x + 0.5 < cx1 && y + 0.5 >= cy0 && y + 0.5 < cy1) {
        ++total;
        in += inside[y][x];
      }
  return total ? static_cast<double>(in) / total : 0.0;
}

inline bool ring_rectilinear(const Ring& r) {
  if (r.size() < 4) return false;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const Point a = r[i], b = r[(i + 1) % r.size()];
    if ((a.x == b.x) == (a.y == b.y)) return false;
  }
  return true;
}

struct PartitionStats {
  long uncovered = 0;       // interior pixels in no room
  long overlapped = 0;      // interior pixels in two or more rooms
  long outside_claims = 0;  // exterior pixels claimed by a room
  bool rectilinear = true;
};

/// Checks that room polygons tile the boundary interior pixel-exactly.
inline PartitionStats check_partition(const VectorFloorplan& vf) {
  PartitionStats s;
  const auto inside = inside_oracle(vf.boundary);
  const int res = vf.boundary.resolution();
  for (const RoomRegion& room : vf.rooms)
    for (const Ring& r : room.rings) s.rectilinear = s.rectilinear && ring_rectilinear(r);
  for (int y = 0; y < res; ++y) {
    for (int x = 0; x < res; ++x) {
      int claims = 0;
      for (const RoomRegion& room : vf.rooms) claims += point_in_rings({x + 0.5, y + 0.5}, room.rings);
      if (inside[y][x]) {
        s.uncovered += claims == 0;
        s.overlapped += claims > 1;
      } else {
        s.outside_claims += claims > 0;
      }
    }
  }
  return s;
}

// ---- naive per-pixel loss oracle ------------------------------------------

struct PixelPiece {
  double area = 0.0;
  Point centroid;
};

/// Part of pixel (i, j) covered by rectangle r.
inline PixelPiece piece(int i, int j, const Rect& r) {
  const double x0 = std::max<double>(i, r.x0), x1 = std::min<double>(i + 1, r.x1);
  const double y0 = std::max<double>(j, r.y0), y1 = std::min<double>(j + 1, r.y1);
  if (x1 <= x0 || y1 <= y0) return {};
  return {(x1 - x0) * (y1 - y0), {(x0 + x1) / 2, (y0 + y1) / 2}};
}

inline double dist_in(Point p, const Rect& r) {
  const double dx = p.x < r.x0 ? r.x0 - p.x : p.x > r.x1 ? p.x - r.x1 : 0.0;
  const double dy = p.y < r.y0 ? r.y0 - p.y : p.y > r.y1 ? p.y - r.y1 : 0.0;
  return std::sqrt(dx * dx + dy * dy);
}

inline double dist_out(Point p, const Rect& r) {
  if (!(p.x > r.x0 && p.x < r.x1 && p.y > r.y0 && p.y < r.y1)) return 0.0;
  return std::min(std::min(p.x - r.x0, r.x1 - p.x), std::min(p.y - r.y0, r.y1 - p.y));
}

struct OracleLosses {
  double coverage = 0, interior = 0, mutex = 0, match = 0;
};

inline OracleLosses oracle_losses(const std::vector<RoomBox>& boxes, const std::vector<RoomBox>& priors,
                                  const Boundary& b) {
  const int res = b.resolution();
  const auto inside = inside_oracle(b);
  double min_x = 1e9, min_y = 1e9, max_x = -1e9, max_y = -1e9;
  for (const Point& p : b.vertices()) {
    min_x = std::min(min_x, p.x), max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y), max_y = std::max(max_y, p.y);
  }
  const Rect bbox{min_x, min_y, max_x, max_y};
  OracleLosses out;
  const std::size_t n = boxes.size();

  double cov = 0;
  long interior_px = 0;
  double int_num = 0, int_den = 0, mut_num = 0, area = 0;
  double m1n = 0, m1d = 0, m2n = 0, m2d = 0;
  for (int j = 0; j < res; ++j) {
    for (int i = 0; i < res; ++i) {
      const Point c{i + 0.5, j + 0.5};
      if (inside[j][i]) {
        ++interior_px;
        double best = 1e300;
        for (const RoomBox& bx : boxes) best = std::min(best, std::pow(dist_in(c, bx.rect()), 2));
        cov += best;
      }
      for (std::size_t k = 0; k < n; ++k) {
        const PixelPiece pk = piece(i, j, boxes[k].rect());
        if (pk.area > 0) {
          int_num += pk.area * std::pow(dist_in(pk.centroid, bbox), 2);
          int_den += pk.area;
          area += pk.area;
          for (std::size_t l = 0; l < n; ++l)
            if (l != k) mut_num += pk.area * std::pow(dist_out(pk.centroid, boxes[l].rect()), 2);
          m1n += pk.area * std::pow(dist_in(pk.centroid, priors[k].rect()), 2);
          m1d += pk.area;
        }
        const PixelPiece pp = piece(i, j, priors[k].rect());
        if (pp.area > 0) {
          m2n += pp.area * std::pow(dist_in(pp.centroid, boxes[k].rect()), 2);
          m2d += pp.area;
        }
      }
    }
  }
  out.coverage = interior_px ? cov / interior_px : 0.0;
  out.interior = int_den > 0 ? int_num / int_den : 0.0;
  out.mutex = (n > 1 && area > 0) ? mut_num / ((n - 1) * area) : 0.0;
  out.match = (m1d > 0 ? m1n / m1d : 0.0) + (m2d > 0 ? m2n / m2d : 0.0);
  return out;
}

/// Random box with fractional edges inside a res x res grid.
inline RoomBox random_box(std::mt19937_64& rng, int res, int id) {
  std::uniform_real_distribution<double> side(2.0, res / 2.0);
  const double w = side(rng), h = side(rng);
  std::uniform_real_distribution<double> cx(w / 2, res - w / 2), cy(h / 2, res - h / 2);
  return {cx(rng), cy(rng), w, h, id};
}

// ---- order graphs -----------------------------------------------------------

/// Number of edges (later -> earlier) whose `earlier` is not drawn before `later`.
inline int order_violations(const OrderGraph& og, const std::vector<int>& order) {
  std::vector<int> pos(og.nodes.empty() ? 0 : *std::max_element(og.nodes.begin(), og.nodes.end()) + 1, -1);
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  int bad = 0;
  for (const OrderEdge& e : og.edges) bad += !(pos[e.earlier] >= 0 && pos[e.later] >= 0 && pos[e.earlier] < pos[e.later]);
  return bad;
}

inline bool is_permutation_of_nodes(const OrderGraph& og, std::vector<int> order) {
  std::vector<int> nodes = og.nodes;
  std::sort(nodes.begin(), nodes.end());
  std::sort(order.begin(), order.end());
  return nodes == order;
}

/// Acyclicity by repeated removal of sink nodes (Kahn on reversed edges).
inline bool acyclic(int n, const std::vector<OrderEdge>& edges) {
  std::vector<bool> gone(n, false);
  for (int removed = 0; removed < n;) {
    int pick = -1;
    for (int v = 0; v < n && pick < 0; ++v) {
      if (gone[v]) continue;
      bool has_out = false;
      for (const OrderEdge& e : edges) has_out = has_out || (e.later == v && !gone[e.earlier]);
      if (!has_out) pick = v;
    }
    if (pick < 0) return false;
    gone[pick] = true;
    ++removed;
  }
  return true;
}

/// Random DAG: a hidden random permutation, edges only from later to earlier.
inline OrderGraph random_dag(std::mt19937_64& rng, int n, double density) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  OrderGraph og;
  og.nodes.resize(n);
  for (int i = 0; i < n; ++i) og.nodes[i] = i;
  std::bernoulli_distribution coin(density);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (coin(rng)) og.edges.push_back({perm[b], perm[a]});
  return og;
}

}  // namespace fgtest
