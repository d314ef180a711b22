#include "floorgraph/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "floorgraph/error.hpp"
#include "floorgraph/solver.hpp"

namespace floorgraph {

double angle_between(Point a, Point b) {
  const double c = std::clamp(a.x * b.x + a.y * b.y, -1.0, 1.0);
  return std::acos(c) * 180.0 / std::numbers::pi;
}

int align_rotation(const Boundary& source, const Boundary& target) {
  const Point want = door_direction(target);
  const Point have = door_direction(source);
  int best_k = 0;
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 4; ++k) {
    // Rotating the plan clockwise in raster space turns a y-up vector clockwise too.
    Point d = have;
    for (int s = 0; s < k; ++s) d = {d.y, -d.x};
    const double angle = angle_between(d, want);
    if (angle < best - 1e-9) {
      best = angle;
      best_k = k;
    }
  }
  return best_k;
}

LayoutGraph transfer_nodes(const LayoutGraph& g, int k) {
  LayoutGraph out = g;
  for (RoomNode& n : out.nodes) n.cell = rotate_cell(n.cell, k);
  for (GraphEdge& e : out.edges) e.rel = rotate_relation(e.rel, k);
  return out;
}

CellMask interior_cells(const Boundary& b) {
  const Mask inside = rasterize_boundary(b).inside;
  const Rect bbox = b.bbox();
  CellMask out{};
  for (int row = 0; row < kGridSize; ++row) {
    for (int col = 0; col < kGridSize; ++col) {
      const Rect r = cell_rect({row, col}, bbox);
      std::size_t total = 0, in = 0;
      for (int y = 0; y < inside.height(); ++y) {
        const double cy = y + 0.5;
        if (cy < r.y0 || cy >= r.y1) continue;
        for (int x = 0; x < inside.width(); ++x) {
          const double cx = x + 0.5;
          if (cx < r.x0 || cx >= r.x1) continue;
          ++total;
          in += inside.at(x, y);
        }
      }
      out[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] = total > 0 && in >= 0.3 * total;
    }
  }
  return out;
}

namespace {

bool is_interior(const CellMask& m, GridCell c) {
  return c.valid() && m[static_cast<std::size_t>(c.row)][static_cast<std::size_t>(c.col)];
}

}  // namespace

LayoutGraph adjust_node_positions(const LayoutGraph& g, const Boundary& target) {
  const CellMask mask = interior_cells(target);
  std::vector<GridCell> interior;
  for (int row = 0; row < kGridSize; ++row)
    for (int col = 0; col < kGridSize; ++col)
      if (is_interior(mask, {row, col})) interior.push_back({row, col});
  if (interior.empty()) {
    throw Error(ErrorCode::InfeasibleBoundary, "boundary has no grid cell that is at least 30% interior");
  }

  LayoutGraph out = g;
  std::vector<std::size_t> order(out.nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return out.nodes[a].id < out.nodes[b].id; });

  for (std::size_t idx : order) {
    const GridCell from = out.nodes[idx].cell;
    if (is_interior(mask, from)) continue;

    // Closest interior cell; `interior` is row-major so the first minimum wins ties.
    GridCell to = interior.front();
    int best = std::numeric_limits<int>::max();
    for (const GridCell& c : interior) {
      const int d2 = (c.row - from.row) * (c.row - from.row) + (c.col - from.col) * (c.col - from.col);
      if (d2 < best) {
        best = d2;
        to = c;
      }
    }
    const int dr = to.row - from.row, dc = to.col - from.col;
    GridCell step{0, 0};
    if (std::abs(dr) >= std::abs(dc)) step.row = dr > 0 ? 1 : -1;
    else step.col = dc > 0 ? 1 : -1;

    out.nodes[idx].cell = to;
    std::vector<std::size_t> moving = {idx};
    GridCell cur = to;
    while (true) {
      std::vector<std::size_t> occupants;
      for (std::size_t j = 0; j < out.nodes.size(); ++j) {
        if (out.nodes[j].cell == cur && std::find(moving.begin(), moving.end(), j) == moving.end()) {
          occupants.push_back(j);
        }
      }
      if (occupants.empty()) break;
      const GridCell next{cur.row + step.row, cur.col + step.col};
      if (!is_interior(mask, next)) break;  // last cell in this direction: share it
      for (std::size_t j : occupants) out.nodes[j].cell = next;
      moving = occupants;
      cur = next;
    }
  }
  return out;
}

RelationType relation_from_cells(GridCell src, GridCell dst, int src_id, int dst_id) {
  return relation_from_offset(src.col - dst.col, src.row - dst.row, src_id, dst_id);
}

namespace {

[[noreturn]] void invalid_edit(const std::string& what) { throw Error(ErrorCode::InvalidEdit, what); }

RoomNode& require_node(LayoutGraph& g, int id) {
  RoomNode* n = g.find_node(id);
  if (!n) invalid_edit("unknown node id " + std::to_string(id));
  return *n;
}

}  // namespace

LayoutGraph apply_edit(const LayoutGraph& g, const Edit& e) {
  LayoutGraph out = g;
  std::visit(
      [&](const auto& op) {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, edit::AddNode>) {
          if (!op.cell.valid()) invalid_edit("add_node: cell outside the grid");
          if (!(op.size_ratio > 0 && op.size_ratio <= 1)) invalid_edit("add_node: size_ratio must be in (0, 1]");
          RoomNode n;
          n.id = out.next_node_id();
          n.type = op.type;
          n.cell = op.cell;
          n.size_ratio = op.size_ratio;
          n.size_bin = size_bin_for(op.size_ratio);
          out.nodes.push_back(n);
        } else if constexpr (std::is_same_v<T, edit::DeleteNode>) {
          require_node(out, op.id);
          std::erase_if(out.nodes, [&](const RoomNode& n) { return n.id == op.id; });
          std::erase_if(out.edges, [&](const GraphEdge& ge) { return ge.src == op.id || ge.dst == op.id; });
        } else if constexpr (std::is_same_v<T, edit::MoveNode>) {
          RoomNode& n = require_node(out, op.id);
          if (!op.cell.valid()) invalid_edit("move_node: cell outside the grid");
          n.cell = op.cell;
          for (GraphEdge& ge : out.edges) {
            if (ge.src != op.id && ge.dst != op.id) continue;
            ge.rel = relation_from_cells(out.find_node(ge.src)->cell, out.find_node(ge.dst)->cell, ge.src, ge.dst);
          }
        } else if constexpr (std::is_same_v<T, edit::AddEdge>) {
          const GridCell s = require_node(out, op.src).cell;
          const GridCell d = require_node(out, op.dst).cell;
          if (op.src == op.dst) invalid_edit("add_edge: self edge");
          if (out.find_edge(op.src, op.dst)) invalid_edit("add_edge: edge already exists");
          out.edges.push_back({op.src, op.dst, relation_from_cells(s, d, op.src, op.dst)});
        } else {
          const auto before = out.edges.size();
          std::erase_if(out.edges, [&](const GraphEdge& ge) {
            return (ge.src == op.src && ge.dst == op.dst) || (ge.src == op.dst && ge.dst == op.src);
          });
          if (out.edges.size() == before) invalid_edit("delete_edge: no such edge");
        }
      },
      e);
  out.validate();
  return out;
}

std::vector<RoomBox> transfer_priors(const FloorplanRecord& source, int k, const Boundary& target) {
  const int res = source.boundary.resolution();
  const Rect sb = source.boundary.bbox();
  const Point c0 = rotate_point({sb.x0, sb.y0}, k, res);
  const Point c1 = rotate_point({sb.x1, sb.y1}, k, res);
  const Rect rs{std::min(c0.x, c1.x), std::min(c0.y, c1.y), std::max(c0.x, c1.x), std::max(c0.y, c1.y)};
  const Rect tb = target.bbox();
  const double sx = tb.width() / rs.width();
  const double sy = tb.height() / rs.height();
  const bool swap = ((k % 4) + 4) % 4 % 2 == 1;

  std::vector<RoomBox> out;
  for (const RoomBox& b : source.gt_boxes) {
    const Point c = rotate_point(b.center(), k, res);
    const double w = swap ? b.h : b.w;
    const double h = swap ? b.w : b.h;
    out.push_back({tb.x0 + (c.x - rs.x0) * sx, tb.y0 + (c.y - rs.y0) * sy, w * sx, h * sy, b.room_id});
  }
  return out;
}

std::vector<RoomBox> priors_for_graph(const LayoutGraph& g, const std::vector<RoomBox>& priors,
                                      const Boundary& target) {
  const Rect bbox = target.bbox();
  const double res = target.resolution();
  const std::vector<RoomBox> init = init_boxes(g, target);
  std::vector<RoomBox> out;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const RoomNode& n = g.nodes[i];
    const RoomBox* p = find_box(priors, n.id);
    if (!p) {
      out.push_back(init[i]);
      continue;
    }
    RoomBox b = *p;
    if (cell_of(b.center(), bbox) != n.cell) {
      const Point c = cell_rect(n.cell, bbox).center();
      b.x = c.x;
      b.y = c.y;
    }
    b.w = std::clamp(b.w, 2.0, res);
    b.h = std::clamp(b.h, 2.0, res);
    b.x = std::clamp(b.x, b.w / 2, res - b.w / 2);
    b.y = std::clamp(b.y, b.h / 2, res - b.h / 2);
    out.push_back(b);
  }
  return out;
}

}  // namespace floorgraph
