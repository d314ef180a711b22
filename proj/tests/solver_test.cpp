#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "floorgraph/error.hpp"
#include "floorgraph/solver.hpp"
#include "support.hpp"

using namespace floorgraph;

namespace {

// Two rooms splitting a 24 x 24 square on a 32 grid, with priors equal to the boxes.
struct TiledSquare {
  Boundary b = fgtest::rect_boundary(4, 4, 28, 28, 32);
  std::vector<RoomBox> boxes = {RoomBox::from_edges(4, 4, 16, 28, 0), RoomBox::from_edges(16, 4, 28, 28, 1)};
  LayoutGraph g;
  TiledSquare() {
    g.nodes = {{0, RoomType::LivingRoom, {2, 1}, 0.5, size_bin_for(0.5)},
               {1, RoomType::SecondRoom, {2, 3}, 0.5, size_bin_for(0.5)}};
    g.edges = {{0, 1, RelationType::LeftOf}};
  }
};

Boundary small_boundary(std::mt19937_64& rng, int i) {
  return i % 3 == 0 ? fgtest::l_boundary(32) : fgtest::random_boundary(rng, 32);
}

}  // namespace

TEST_CASE("point to box distances") {
  const Rect r{0, 0, 4, 2};
  CHECK(d_in({2, 1}, r) == 0.0);
  CHECK(d_in({4, 2}, r) == 0.0);
  CHECK(d_in({7, 6}, r) == doctest::Approx(5.0));
  CHECK(d_in({-1, 1}, r) == doctest::Approx(1.0));
  CHECK(d_out({2, 1}, r) == doctest::Approx(1.0));
  CHECK(d_out({0.5, 1}, r) == doctest::Approx(0.5));
  CHECK(d_out({4, 1}, r) == 0.0);
  CHECK(d_out({9, 9}, r) == 0.0);
}

TEST_CASE("each loss term vanishes on its zero set") {
  const TiledSquare t;
  const LossContext ctx = LossContext::from_boundary(t.b);
  CHECK(loss_coverage(t.boxes, ctx) == 0.0);
  CHECK(loss_interior(t.boxes, ctx) == 0.0);
  CHECK(loss_mutex(t.boxes, ctx) == 0.0);
  CHECK(loss_match(t.boxes, t.boxes, ctx) == 0.0);
  CHECK(evaluate_loss(t.boxes, t.boxes, ctx).total == 0.0);

  // Leaving a strip uncovered, poking out of the bbox, overlapping or drifting each breaks one term.
  std::vector<RoomBox> gap = t.boxes;
  gap[1] = RoomBox::from_edges(18, 4, 28, 28, 1);
  CHECK(loss_coverage(gap, ctx) > 0);
  CHECK(loss_interior(gap, ctx) == 0.0);
  CHECK(loss_mutex(gap, ctx) == 0.0);

  std::vector<RoomBox> out = t.boxes;
  out[1] = RoomBox::from_edges(16, 4, 31, 28, 1);
  CHECK(loss_interior(out, ctx) > 0);
  CHECK(loss_coverage(out, ctx) == 0.0);

  std::vector<RoomBox> lap = t.boxes;
  lap[1] = RoomBox::from_edges(12, 4, 28, 28, 1);
  CHECK(loss_mutex(lap, ctx) > 0);
  CHECK(loss_coverage(lap, ctx) == 0.0);

  CHECK(loss_match(gap, t.boxes, ctx) > 0);
}

TEST_CASE("loss terms match a per-pixel reference") {
  std::mt19937_64 rng(5);
  double worst = 0;
  for (int i = 0; i < 50; ++i) {
    const Boundary b = small_boundary(rng, i);
    const int n = 1 + static_cast<int>(rng() % 5);
    std::vector<RoomBox> boxes, priors;
    for (int k = 0; k < n; ++k) {
      boxes.push_back(fgtest::random_box(rng, 32, k));
      priors.push_back(fgtest::random_box(rng, 32, k));
    }
    const LossContext ctx = LossContext::from_boundary(b);
    const fgtest::OracleLosses o = fgtest::oracle_losses(boxes, priors, b);
    const double got[4] = {loss_coverage(boxes, ctx), loss_interior(boxes, ctx), loss_mutex(boxes, ctx),
                           loss_match(boxes, priors, ctx)};
    const double want[4] = {o.coverage, o.interior, o.mutex, o.match};
    for (int t = 0; t < 4; ++t) {
      const double err = std::abs(got[t] - want[t]) / std::max(1.0, std::abs(want[t]));
      worst = std::max(worst, err);
      CHECK(err <= 1e-9);
    }
  }
  MESSAGE("worst relative difference " << worst);
}

TEST_CASE("analytic gradients agree with central differences") {
  std::mt19937_64 rng(17);
  int checked = 0, skipped = 0;
  for (int i = 0; i < 100; ++i) {
    const Boundary b = i % 2 ? fgtest::random_boundary(rng) : fgtest::random_boundary(rng, 32);
    const int res = b.resolution();
    const int n = 2 + static_cast<int>(rng() % 4);
    std::vector<RoomBox> boxes, priors;
    for (int k = 0; k < n; ++k) {
      boxes.push_back(fgtest::random_box(rng, res, k));
      priors.push_back(fgtest::random_box(rng, res, k));
    }
    const LossContext ctx = LossContext::from_boundary(b);
    const LossFunction f = [&](const std::vector<RoomBox>& bx, std::vector<BoxGradient>* g) {
      return evaluate_loss(bx, priors, ctx, {}, g).total;
    };
    const GradientCheckReport r = gradient_check(f, boxes, 1e-6);
    CHECK(r.max_relative_error <= 1e-4);
    checked += r.checked;
    skipped += r.skipped;
  }
  MESSAGE("checked " << checked << " skipped " << skipped);
  CHECK(checked >= 9 * (checked + skipped) / 10);
}

TEST_CASE("the gradient check flags a wrong gradient") {
  std::mt19937_64 rng(2);
  const Boundary b = fgtest::l_boundary(64);
  const LossContext ctx = LossContext::from_boundary(b);
  std::vector<RoomBox> boxes, priors;
  for (int k = 0; k < 3; ++k) {
    boxes.push_back(fgtest::random_box(rng, 64, k));
    priors.push_back(fgtest::random_box(rng, 64, k));
  }
  const LossFunction scaled = [&](const std::vector<RoomBox>& bx, std::vector<BoxGradient>* g) {
    const double v = loss_match(bx, priors, ctx, g);
    if (g)
      for (BoxGradient& d : *g) d.dx *= 1.01, d.dy *= 1.01, d.dw *= 1.01, d.dh *= 1.01;
    return v;
  };
  const GradientCheckReport r = gradient_check(scaled, boxes);
  CHECK(r.checked > 0);
  CHECK(r.max_relative_error > 5e-3);
}

TEST_CASE("each term's gradient is checked on its own") {
  std::mt19937_64 rng(23);
  const Boundary b = fgtest::l_boundary(64);
  const LossContext ctx = LossContext::from_boundary(b);
  for (int i = 0; i < 20; ++i) {
    std::vector<RoomBox> boxes, priors;
    for (int k = 0; k < 3; ++k) {
      boxes.push_back(fgtest::random_box(rng, 64, k));
      priors.push_back(fgtest::random_box(rng, 64, k));
    }
    const LossFunction terms[4] = {
        [&](const std::vector<RoomBox>& bx, std::vector<BoxGradient>* g) { return loss_coverage(bx, ctx, g); },
        [&](const std::vector<RoomBox>& bx, std::vector<BoxGradient>* g) { return loss_interior(bx, ctx, g); },
        [&](const std::vector<RoomBox>& bx, std::vector<BoxGradient>* g) { return loss_mutex(bx, ctx, g); },
        [&](const std::vector<RoomBox>& bx, std::vector<BoxGradient>* g) { return loss_match(bx, priors, ctx, g); },
    };
    for (const LossFunction& f : terms) CHECK(gradient_check(f, boxes).max_relative_error <= 1e-4);
  }
}

TEST_CASE("initial boxes") {
  const Boundary b = fgtest::rect_boundary(14, 14, 114, 114);
  LayoutGraph g;
  g.nodes = {{0, RoomType::LivingRoom, {2, 2}, 0.25, size_bin_for(0.25)},
             {1, RoomType::Bathroom, {0, 0}, 0.0, 0}};
  const auto boxes = init_boxes(g, b);
  REQUIRE(boxes.size() == 2);
  CHECK(boxes[0].w == doctest::Approx(50.0));
  CHECK(boxes[0].h == doctest::Approx(50.0));
  CHECK(boxes[0].x == doctest::Approx(64.0));
  CHECK(boxes[0].y == doctest::Approx(64.0));
  CHECK(boxes[1].w == doctest::Approx(2.0));
  CHECK(boxes[1].x == doctest::Approx(24.0));
  CHECK(boxes[1].room_id == 1);
}

TEST_CASE("solve is deterministic and never increases the loss") {
  const Corpus c = generate_synthetic_corpus(8, 3);
  for (const FloorplanRecord& r : c) {
    const SolveResult a = solve(r.graph, r.boundary, r.gt_boxes);
    const SolveResult b = solve(r.graph, r.boundary, r.gt_boxes);
    CHECK(a.boxes == b.boxes);
    REQUIRE_FALSE(a.trace.empty());
    for (std::size_t i = 1; i < a.trace.size(); ++i) CHECK(a.trace[i].total < a.trace[i - 1].total);
    CHECK(a.trace.back().total <= a.trace.front().total);
    for (const RoomBox& bx : a.boxes) {
      CHECK(bx.w >= 2.0);
      CHECK(bx.left() >= 0.0);
      CHECK(bx.right() <= r.boundary.resolution());
    }
  }
}

TEST_CASE("a zero-loss configuration is a fixed point") {
  const TiledSquare t;
  SolverConfig cfg;
  cfg.grid_resolution = 32;
  const SolveResult r = solve(t.g, t.b, t.boxes, t.boxes, cfg);
  CHECK(r.boxes == t.boxes);
  CHECK(r.iterations == 0);
  REQUIRE(r.trace.size() == 1);
  CHECK(r.trace[0].total == 0.0);
}

TEST_CASE("a heavier match weight keeps boxes nearer their priors") {
  const Corpus c = generate_synthetic_corpus(4, 9);
  for (const FloorplanRecord& r : c) {
    std::vector<RoomBox> priors = r.gt_boxes;
    for (RoomBox& p : priors) p.x = std::clamp(p.x + 15, p.w / 2, r.boundary.resolution() - p.w / 2);
    const LossContext ctx = LossContext::from_boundary(r.boundary);
    auto drift = [&](double weight) {
      SolverConfig cfg;
      cfg.weights.match = weight;
      return loss_match(solve(r.graph, r.boundary, priors, cfg).boxes, priors, ctx);
    };
    CHECK(drift(100.0) < drift(1.0));
  }
}

TEST_CASE("solver errors") {
  const TiledSquare t;
  SolverConfig cfg;
  cfg.grid_resolution = 32;
  auto code_of = [&](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Io;
  };
  std::vector<RoomBox> bad = t.boxes;
  bad[0].x = std::numeric_limits<double>::quiet_NaN();
  CHECK(code_of([&] { solve(t.g, t.b, bad, t.boxes, cfg); }) == ErrorCode::NonFiniteLoss);
  CHECK(code_of([&] { solve(t.g, t.b, t.boxes, bad, cfg); }) == ErrorCode::NonFiniteLoss);

  SolverConfig neg = cfg;
  neg.step_size = -1;
  CHECK(code_of([&] { solve(t.g, t.b, t.boxes, t.boxes, neg); }) == ErrorCode::InvalidArgument);
  SolverConfig wrong_res = cfg;
  wrong_res.grid_resolution = 64;
  CHECK(code_of([&] { solve(t.g, t.b, t.boxes, t.boxes, wrong_res); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { solve(t.g, t.b, {t.boxes[0]}, t.boxes, cfg); }) == ErrorCode::InvalidArgument);
  const LossContext ctx = LossContext::from_boundary(t.b);
  CHECK(code_of([&] { loss_match(t.boxes, {t.boxes[0]}, ctx); }) == ErrorCode::InvalidArgument);
}
