#include "floorgraph/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "floorgraph/error.hpp"

namespace floorgraph {

double d_in(Point p, const Rect& box) {
  const double dx = std::max({box.x0 - p.x, 0.0, p.x - box.x1});
  const double dy = std::max({box.y0 - p.y, 0.0, p.y - box.y1});
  return std::hypot(dx, dy);
}

double d_out(Point p, const Rect& box) {
  const double m = std::min({p.x - box.x0, box.x1 - p.x, p.y - box.y0, box.y1 - p.y});
  return m > 0 ? m : 0.0;
}

LossContext LossContext::from_boundary(const Boundary& b) {
  LossContext ctx;
  ctx.resolution = b.resolution();
  ctx.inside = rasterize_boundary(b).inside;
  for (int y = 0; y < ctx.resolution; ++y)
    for (int x = 0; x < ctx.resolution; ++x)
      if (ctx.inside.at(x, y)) ctx.interior_centers.push_back({x + 0.5, y + 0.5});
  ctx.bbox = b.bbox();
  return ctx;
}

namespace {

// Derivatives with respect to the four edges of a box.
struct EdgeGrad {
  double l = 0.0;
  double r = 0.0;
  double t = 0.0;
  double b = 0.0;
};

void to_box_gradient(const std::vector<EdgeGrad>& eg, std::vector<BoxGradient>* grad) {
  if (!grad) return;
  grad->assign(eg.size(), {});
  for (std::size_t i = 0; i < eg.size(); ++i) {
    (*grad)[i] = {eg[i].l + eg[i].r, eg[i].t + eg[i].b, (eg[i].r - eg[i].l) / 2, (eg[i].b - eg[i].t) / 2};
  }
}

// Covered part of pixel column i by the interval [lo, hi], with its midpoint
// and their derivatives with respect to lo and hi.
struct Cover {
  double len = 0.0;
  double q = 0.0;
  double dlen_lo = 0.0;
  double dlen_hi = 0.0;
  double dq_lo = 0.0;
  double dq_hi = 0.0;
};

Cover cover(int i, double lo, double hi) {
  Cover c;
  const double a0 = std::max<double>(i, lo);
  const double a1 = std::min<double>(i + 1, hi);
  c.len = a1 - a0;
  if (c.len <= 0) {
    c.len = 0;
    return c;
  }
  c.q = (a0 + a1) / 2;
  if (lo > i) {
    c.dlen_lo = -1.0;
    c.dq_lo = 0.5;
  }
  if (hi < i + 1) {
    c.dlen_hi = 1.0;
    c.dq_hi = 0.5;
  }
  return c;
}

// Pixel index range [first, last) touched by [lo, hi] on a grid of `res`.
std::pair<int, int> pixel_span(double lo, double hi, int res) {
  const int first = std::max(0, static_cast<int>(std::floor(lo)));
  const int last = std::min(res, static_cast<int>(std::ceil(hi)));
  return {first, std::max(first, last)};
}

// Per-axis sums over the pixels covered by [lo, hi]:
//   s0 = sum of covered lengths, s2 = sum of length * dist(q, [tlo, thi])^2.
struct AxisSums {
  double s0 = 0.0, s2 = 0.0;
  double ds0_lo = 0.0, ds0_hi = 0.0;
  double ds2_lo = 0.0, ds2_hi = 0.0;
  double ds2_tlo = 0.0, ds2_thi = 0.0;
};

AxisSums axis_sums(double lo, double hi, double tlo, double thi, int res) {
  AxisSums s;
  const auto [first, last] = pixel_span(lo, hi, res);
  for (int i = first; i < last; ++i) {
    const Cover c = cover(i, lo, hi);
    if (c.len <= 0) continue;
    double u = 0.0;  // signed excess of q outside [tlo, thi]
    if (c.q < tlo) u = c.q - tlo;
    else if (c.q > thi) u = c.q - thi;
    const double g = u * u;
    s.s0 += c.len;
    s.s2 += c.len * g;
    s.ds0_lo += c.dlen_lo;
    s.ds0_hi += c.dlen_hi;
    s.ds2_lo += c.dlen_lo * g + c.len * 2 * u * c.dq_lo;
    s.ds2_hi += c.dlen_hi * g + c.len * 2 * u * c.dq_hi;
    if (c.q < tlo) s.ds2_tlo += -2 * u * c.len;
    if (c.q > thi) s.ds2_thi += -2 * u * c.len;
  }
  return s;
}

// Area-weighted squared distance of `own`'s covered pixels to `target`:
// numerator N, denominator D (the covered area) and their derivatives.
struct WeightedDistance {
  double n = 0.0;
  double d = 0.0;
  EdgeGrad dn_own, dd_own, dn_target;
};

WeightedDistance weighted_distance(const Rect& own, const Rect& target, int res) {
  const AxisSums sx = axis_sums(own.x0, own.x1, target.x0, target.x1, res);
  const AxisSums sy = axis_sums(own.y0, own.y1, target.y0, target.y1, res);
  WeightedDistance w;
  w.n = sx.s2 * sy.s0 + sx.s0 * sy.s2;
  w.d = sx.s0 * sy.s0;
  w.dn_own = {sx.ds2_lo * sy.s0 + sx.ds0_lo * sy.s2, sx.ds2_hi * sy.s0 + sx.ds0_hi * sy.s2,
              sx.s2 * sy.ds0_lo + sx.s0 * sy.ds2_lo, sx.s2 * sy.ds0_hi + sx.s0 * sy.ds2_hi};
  w.dd_own = {sx.ds0_lo * sy.s0, sx.ds0_hi * sy.s0, sx.s0 * sy.ds0_lo, sx.s0 * sy.ds0_hi};
  w.dn_target = {sx.ds2_tlo * sy.s0, sx.ds2_thi * sy.s0, sx.s0 * sy.ds2_tlo, sx.s0 * sy.ds2_thi};
  return w;
}

void require_boxes(const std::vector<RoomBox>& boxes, const char* what) {
  if (boxes.empty()) throw Error(ErrorCode::InvalidArgument, std::string(what) + ": empty box list");
}

}  // namespace

double loss_coverage(const std::vector<RoomBox>& boxes, const LossContext& ctx, std::vector<BoxGradient>* grad) {
  require_boxes(boxes, "loss_coverage");
  std::vector<Rect> rects;
  for (const RoomBox& b : boxes) rects.push_back(b.rect());
  std::vector<EdgeGrad> eg(boxes.size());
  double sum = 0.0;
  for (const Point& c : ctx.interior_centers) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t i = 0; i < rects.size(); ++i) {
      const Rect& r = rects[i];
      const double dx = std::max({r.x0 - c.x, 0.0, c.x - r.x1});
      const double dy = std::max({r.y0 - c.y, 0.0, c.y - r.y1});
      const double d2 = dx * dx + dy * dy;
      if (d2 < best) {
        best = d2;
        arg = i;
        if (d2 == 0.0) break;
      }
    }
    if (best == 0.0) continue;
    sum += best;
    if (grad) {
      const Rect& r = rects[arg];
      if (c.x < r.x0) eg[arg].l += 2 * (r.x0 - c.x);
      if (c.x > r.x1) eg[arg].r -= 2 * (c.x - r.x1);
      if (c.y < r.y0) eg[arg].t += 2 * (r.y0 - c.y);
      if (c.y > r.y1) eg[arg].b -= 2 * (c.y - r.y1);
    }
  }
  const double n = static_cast<double>(ctx.interior_centers.size());
  if (n == 0) {
    to_box_gradient(std::vector<EdgeGrad>(boxes.size()), grad);
    return 0.0;
  }
  for (EdgeGrad& e : eg) e = {e.l / n, e.r / n, e.t / n, e.b / n};
  to_box_gradient(eg, grad);
  return sum / n;
}

double loss_interior(const std::vector<RoomBox>& boxes, const LossContext& ctx, std::vector<BoxGradient>* grad) {
  require_boxes(boxes, "loss_interior");
  std::vector<WeightedDistance> parts;
  double n = 0.0, d = 0.0;
  for (const RoomBox& b : boxes) {
    parts.push_back(weighted_distance(b.rect(), ctx.bbox, ctx.resolution));
    n += parts.back().n;
    d += parts.back().d;
  }
  if (d <= 0) {
    to_box_gradient(std::vector<EdgeGrad>(boxes.size()), grad);
    return 0.0;
  }
  const double loss = n / d;
  if (grad) {
    std::vector<EdgeGrad> eg(boxes.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const auto& p = parts[i];
      eg[i] = {(p.dn_own.l - loss * p.dd_own.l) / d, (p.dn_own.r - loss * p.dd_own.r) / d,
               (p.dn_own.t - loss * p.dd_own.t) / d, (p.dn_own.b - loss * p.dd_own.b) / d};
    }
    to_box_gradient(eg, grad);
  }
  return loss;
}

double loss_mutex(const std::vector<RoomBox>& boxes, const LossContext& ctx, std::vector<BoxGradient>* grad) {
  require_boxes(boxes, "loss_mutex");
  const std::size_t n = boxes.size();
  if (n < 2) {
    to_box_gradient(std::vector<EdgeGrad>(n), grad);
    return 0.0;
  }
  const int res = ctx.resolution;
  std::vector<Rect> rects;
  for (const RoomBox& b : boxes) rects.push_back(b.rect());

  // Per-box column and row covers, indexed from the first touched pixel.
  struct Covers {
    int x0 = 0, y0 = 0;
    std::vector<Cover> cols, rows;
  };
  std::vector<Covers> cov(n);
  double area = 0.0;
  std::vector<EdgeGrad> d_area(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [cx0, cx1] = pixel_span(rects[i].x0, rects[i].x1, res);
    const auto [cy0, cy1] = pixel_span(rects[i].y0, rects[i].y1, res);
    cov[i].x0 = cx0;
    cov[i].y0 = cy0;
    double sx = 0, sy = 0;
    EdgeGrad g;
    for (int x = cx0; x < cx1; ++x) {
      cov[i].cols.push_back(cover(x, rects[i].x0, rects[i].x1));
      sx += cov[i].cols.back().len;
      g.l += cov[i].cols.back().dlen_lo;
      g.r += cov[i].cols.back().dlen_hi;
    }
    for (int y = cy0; y < cy1; ++y) {
      cov[i].rows.push_back(cover(y, rects[i].y0, rects[i].y1));
      sy += cov[i].rows.back().len;
      g.t += cov[i].rows.back().dlen_lo;
      g.b += cov[i].rows.back().dlen_hi;
    }
    area += sx * sy;
    d_area[i] = {g.l * sy, g.r * sy, sx * g.t, sx * g.b};
  }

  double num = 0.0;
  std::vector<EdgeGrad> dnum(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const Rect& o = rects[j];
      const int x_first = std::max(cov[i].x0, static_cast<int>(std::floor(o.x0)));
      const int x_last = std::min(cov[i].x0 + static_cast<int>(cov[i].cols.size()), static_cast<int>(std::ceil(o.x1)));
      const int y_first = std::max(cov[i].y0, static_cast<int>(std::floor(o.y0)));
      const int y_last = std::min(cov[i].y0 + static_cast<int>(cov[i].rows.size()), static_cast<int>(std::ceil(o.y1)));
      for (int y = y_first; y < y_last; ++y) {
        const Cover& cy = cov[i].rows[static_cast<std::size_t>(y - cov[i].y0)];
        if (cy.len <= 0) continue;
        for (int x = x_first; x < x_last; ++x) {
          const Cover& cx = cov[i].cols[static_cast<std::size_t>(x - cov[i].x0)];
          if (cx.len <= 0) continue;
          const double e[4] = {cx.q - o.x0, o.x1 - cx.q, cy.q - o.y0, o.y1 - cy.q};
          int arg = 0;
          for (int k = 1; k < 4; ++k)
            if (e[k] < e[arg]) arg = k;
          const double m = e[arg];
          if (m <= 0) continue;
          const double a = cx.len * cy.len;
          num += a * m * m;
          if (!grad) continue;
          // Other box: only the nearest side moves the distance.
          switch (arg) {
            case 0: dnum[j].l -= 2 * a * m; break;
            case 1: dnum[j].r += 2 * a * m; break;
            case 2: dnum[j].t -= 2 * a * m; break;
            default: dnum[j].b += 2 * a * m; break;
          }
          // Own box: covered area and centroid.
          const double dm_dqx = arg == 0 ? 1.0 : arg == 1 ? -1.0 : 0.0;
          const double dm_dqy = arg == 2 ? 1.0 : arg == 3 ? -1.0 : 0.0;
          const double m2 = m * m;
          dnum[i].l += cx.dlen_lo * cy.len * m2 + a * 2 * m * dm_dqx * cx.dq_lo;
          dnum[i].r += cx.dlen_hi * cy.len * m2 + a * 2 * m * dm_dqx * cx.dq_hi;
          dnum[i].t += cx.len * cy.dlen_lo * m2 + a * 2 * m * dm_dqy * cy.dq_lo;
          dnum[i].b += cx.len * cy.dlen_hi * m2 + a * 2 * m * dm_dqy * cy.dq_hi;
        }
      }
    }
  }
  const double den = static_cast<double>(n - 1) * area;
  if (den <= 0) {
    to_box_gradient(std::vector<EdgeGrad>(n), grad);
    return 0.0;
  }
  const double loss = num / den;
  if (grad) {
    const double k = static_cast<double>(n - 1);
    std::vector<EdgeGrad> eg(n);
    for (std::size_t i = 0; i < n; ++i) {
      eg[i] = {(dnum[i].l - loss * k * d_area[i].l) / den, (dnum[i].r - loss * k * d_area[i].r) / den,
               (dnum[i].t - loss * k * d_area[i].t) / den, (dnum[i].b - loss * k * d_area[i].b) / den};
    }
    to_box_gradient(eg, grad);
  }
  return loss;
}

double loss_match(const std::vector<RoomBox>& boxes, const std::vector<RoomBox>& priors, const LossContext& ctx,
                  std::vector<BoxGradient>* grad) {
  require_boxes(boxes, "loss_match");
  if (boxes.size() != priors.size()) {
    throw Error(ErrorCode::InvalidArgument, "loss_match: " + std::to_string(boxes.size()) + " boxes but " +
                                                std::to_string(priors.size()) + " priors");
  }
  const std::size_t n = boxes.size();
  std::vector<WeightedDistance> fwd(n), bwd(n);
  double n1 = 0, d1 = 0, n2 = 0, d2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    fwd[i] = weighted_distance(boxes[i].rect(), priors[i].rect(), ctx.resolution);
    bwd[i] = weighted_distance(priors[i].rect(), boxes[i].rect(), ctx.resolution);
    n1 += fwd[i].n;
    d1 += fwd[i].d;
    n2 += bwd[i].n;
    d2 += bwd[i].d;
  }
  const double l1 = d1 > 0 ? n1 / d1 : 0.0;
  const double l2 = d2 > 0 ? n2 / d2 : 0.0;
  if (grad) {
    std::vector<EdgeGrad> eg(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (d1 > 0) {
        const auto& f = fwd[i];
        eg[i].l += (f.dn_own.l - l1 * f.dd_own.l) / d1;
        eg[i].r += (f.dn_own.r - l1 * f.dd_own.r) / d1;
        eg[i].t += (f.dn_own.t - l1 * f.dd_own.t) / d1;
        eg[i].b += (f.dn_own.b - l1 * f.dd_own.b) / d1;
      }
      if (d2 > 0) {
        const auto& g = bwd[i];
        eg[i].l += g.dn_target.l / d2;
        eg[i].r += g.dn_target.r / d2;
        eg[i].t += g.dn_target.t / d2;
        eg[i].b += g.dn_target.b / d2;
      }
    }
    to_box_gradient(eg, grad);
  }
  return l1 + l2;
}

LossBreakdown evaluate_loss(const std::vector<RoomBox>& boxes, const std::vector<RoomBox>& priors,
                            const LossContext& ctx, const LossWeights& w, std::vector<BoxGradient>* grad) {
  LossBreakdown out;
  std::vector<BoxGradient> g_cov, g_int, g_mut, g_mat;
  auto want = [&](std::vector<BoxGradient>& g) { return grad ? &g : nullptr; };
  if (w.coverage != 0) out.coverage = w.coverage * loss_coverage(boxes, ctx, want(g_cov));
  if (w.interior != 0) out.interior = w.interior * loss_interior(boxes, ctx, want(g_int));
  if (w.mutex != 0) out.mutex = w.mutex * loss_mutex(boxes, ctx, want(g_mut));
  if (w.match != 0) out.match = w.match * loss_match(boxes, priors, ctx, want(g_mat));
  out.total = out.coverage + out.interior + out.mutex + out.match;
  if (grad) {
    grad->assign(boxes.size(), {});
    auto add = [&](const std::vector<BoxGradient>& g, double weight) {
      for (std::size_t i = 0; i < g.size(); ++i) {
        (*grad)[i].dx += weight * g[i].dx;
        (*grad)[i].dy += weight * g[i].dy;
        (*grad)[i].dw += weight * g[i].dw;
        (*grad)[i].dh += weight * g[i].dh;
      }
    };
    add(g_cov, w.coverage);
    add(g_int, w.interior);
    add(g_mut, w.mutex);
    add(g_mat, w.match);
  }
  return out;
}

std::vector<RoomBox> init_boxes(const LayoutGraph& g, const Boundary& b, double min_box_side) {
  const double interior = static_cast<double>(count_set(rasterize_boundary(b).inside));
  const Rect bbox = b.bbox();
  const double res = b.resolution();
  std::vector<RoomBox> out;
  for (const RoomNode& node : g.nodes) {
    const Point c = cell_rect(node.cell, bbox).center();
    const double side = std::clamp(std::sqrt(std::max(0.0, node.size_ratio) * interior), min_box_side, res);
    RoomBox box{c.x, c.y, side, side, node.id};
    box.x = std::clamp(box.x, side / 2, res - side / 2);
    box.y = std::clamp(box.y, side / 2, res - side / 2);
    out.push_back(box);
  }
  return out;
}

namespace {

void project(RoomBox& b, double min_side, double res) {
  b.w = std::clamp(b.w, min_side, res);
  b.h = std::clamp(b.h, min_side, res);
  b.x = std::clamp(b.x, b.w / 2, res - b.w / 2);
  b.y = std::clamp(b.y, b.h / 2, res - b.h / 2);
}

bool finite(const std::vector<RoomBox>& boxes) {
  for (const RoomBox& b : boxes)
    if (!std::isfinite(b.x) || !std::isfinite(b.y) || !std::isfinite(b.w) || !std::isfinite(b.h)) return false;
  return true;
}

bool finite(const LossBreakdown& l) {
  return std::isfinite(l.coverage) && std::isfinite(l.interior) && std::isfinite(l.mutex) &&
         std::isfinite(l.match) && std::isfinite(l.total);
}

[[noreturn]] void non_finite(const std::vector<LossBreakdown>& trace, int iter) {
  std::string msg = "solver: non-finite loss at iteration " + std::to_string(iter);
  if (!trace.empty()) {
    const LossBreakdown& l = trace.back();
    msg += "; last finite loss total=" + std::to_string(l.total) + " coverage=" + std::to_string(l.coverage) +
           " interior=" + std::to_string(l.interior) + " mutex=" + std::to_string(l.mutex) +
           " match=" + std::to_string(l.match);
  }
  throw Error(ErrorCode::NonFiniteLoss, msg);
}

}  // namespace

SolveResult solve(const LayoutGraph& g, const Boundary& b, const std::vector<RoomBox>& priors,
                  const SolverConfig& cfg) {
  return solve(g, b, priors, init_boxes(g, b, cfg.min_box_side), cfg);
}

SolveResult solve(const LayoutGraph& g, const Boundary& b, const std::vector<RoomBox>& priors,
                  std::vector<RoomBox> boxes, const SolverConfig& cfg) {
  if (cfg.max_iters < 0 || !(cfg.step_size > 0) || !(cfg.step_decay > 0 && cfg.step_decay < 1) ||
      !(cfg.step_growth >= 1) || !(cfg.min_box_side > 0) || cfg.grid_resolution <= 0) {
    throw Error(ErrorCode::InvalidArgument, "solver: invalid configuration");
  }
  if (cfg.grid_resolution != b.resolution()) {
    throw Error(ErrorCode::InvalidArgument, "solver: grid resolution differs from the boundary resolution");
  }
  if (boxes.size() != g.nodes.size() || priors.size() != g.nodes.size()) {
    throw Error(ErrorCode::InvalidArgument, "solver: need one initial box and one prior per node");
  }
  if (boxes.empty()) return {};
  if (!finite(boxes) || !finite(priors)) non_finite({}, 0);
  const double res = b.resolution();
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    boxes[i].room_id = g.nodes[i].id;
    project(boxes[i], cfg.min_box_side, res);
  }

  // Boxes sharing a center have a symmetric gradient; nudge them apart.
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> jitter(-0.5, 0.5);
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (boxes[i].x == boxes[j].x && boxes[i].y == boxes[j].y) {
        boxes[i].x += jitter(rng);
        boxes[i].y += jitter(rng);
        project(boxes[i], cfg.min_box_side, res);
        break;
      }
    }
  }

  const LossContext ctx = LossContext::from_boundary(b);
  SolveResult result;
  std::vector<BoxGradient> grad, cand_grad;
  LossBreakdown loss = evaluate_loss(boxes, priors, ctx, cfg.weights, &grad);
  if (!finite(loss)) non_finite(result.trace, 0);
  result.trace.push_back(loss);

  double step = cfg.step_size;
  std::vector<RoomBox> cand(boxes.size());
  int it = 0;
  for (; it < cfg.max_iters && loss.total > 0; ++it) {
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      cand[i] = boxes[i];
      cand[i].x -= step * grad[i].dx;
      cand[i].y -= step * grad[i].dy;
      cand[i].w -= step * grad[i].dw;
      cand[i].h -= step * grad[i].dh;
      project(cand[i], cfg.min_box_side, res);
    }
    const LossBreakdown next = evaluate_loss(cand, priors, ctx, cfg.weights, &cand_grad);
    if (!finite(next)) non_finite(result.trace, it + 1);
    if (next.total < loss.total) {
      boxes.swap(cand);
      grad.swap(cand_grad);
      loss = next;
      result.trace.push_back(loss);
      step *= cfg.step_growth;
    } else {
      step *= cfg.step_decay;
      if (step < 1e-9) break;
    }
  }
  result.iterations = it;
  result.boxes = std::move(boxes);
  return result;
}

GradientCheckReport gradient_check(const LossFunction& loss, const std::vector<RoomBox>& boxes, double epsilon,
                                   double margin) {
  if (!(epsilon > 0)) throw Error(ErrorCode::InvalidArgument, "gradient_check: epsilon must be positive");
  GradientCheckReport report;
  std::vector<BoxGradient> analytic;
  const double f0 = loss(boxes, &analytic);

  auto near_kink = [&](double v) {
    const double t = v * 2;
    return std::abs(t - std::round(t)) < 2 * margin;
  };
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const RoomBox& b = boxes[i];
    const bool x_edges_kinked = near_kink(b.left()) || near_kink(b.right());
    const bool y_edges_kinked = near_kink(b.top()) || near_kink(b.bottom());
    for (int p = 0; p < 4; ++p) {
      const bool horizontal = p == 0 || p == 2;
      if (horizontal ? x_edges_kinked : y_edges_kinked) {
        ++report.skipped;
        continue;
      }
      auto eval = [&](double delta) {
        std::vector<RoomBox> moved = boxes;
        double* field[4] = {&moved[i].x, &moved[i].y, &moved[i].w, &moved[i].h};
        *field[p] += delta;
        return loss(moved, nullptr);
      };
      const double fp = eval(epsilon);
      const double fm = eval(-epsilon);
      // Round-off carried by a difference quotient of these values.
      const double noise = 16 * std::numeric_limits<double>::epsilon() *
                           std::max({std::abs(f0), std::abs(fp), std::abs(fm)}) / epsilon;
      const double forward = (fp - f0) / epsilon;
      const double backward = (f0 - fm) / epsilon;
      if (std::abs(forward - backward) > 2 * noise + 1e-4 * std::max(std::abs(forward), std::abs(backward))) {
        ++report.skipped;
        continue;
      }
      const double numeric = (fp - fm) / (2 * epsilon);
      const double a = p == 0 ? analytic[i].dx : p == 1 ? analytic[i].dy : p == 2 ? analytic[i].dw : analytic[i].dh;
      const double excess = std::max(0.0, std::abs(a - numeric) - noise);
      const double rel = excess == 0 ? 0.0 : excess / std::max(std::abs(a), std::abs(numeric));
      report.max_relative_error = std::max(report.max_relative_error, rel);
      ++report.checked;
    }
  }
  return report;
}

}  // namespace floorgraph
