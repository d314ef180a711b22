#include <doctest.h>

#include <chrono>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>

#include "floorgraph/corpus.hpp"
#include "floorgraph/error.hpp"
#include "floorgraph/png_io.hpp"
#include "floorgraph/serialization.hpp"
#include "floorgraph/vectorize.hpp"
#include "support.hpp"

using namespace floorgraph;

namespace {

RoomNode node(int id, RoomType t = RoomType::Bathroom) { return {id, t, {2, 2}, 0.1, size_bin_for(0.1)}; }

FloorplanRecord boxes_record(const std::vector<RoomBox>& boxes) {
  FloorplanRecord r;
  r.boundary = fgtest::rect_boundary(4, 4, 124, 124);
  for (const RoomBox& b : boxes) {
    r.graph.nodes.push_back(node(b.room_id));
    r.gt_boxes.push_back(b);
  }
  return r;
}

std::set<std::pair<int, int>> unordered_pairs(const LayoutGraph& g) {
  std::set<std::pair<int, int>> out;
  for (const GraphEdge& e : g.edges) out.insert({std::min(e.src, e.dst), std::max(e.src, e.dst)});
  return out;
}

// Label image with a building over [x0, x1) x [y0, y1) and the front door on
// the top row at columns [dx0, dx1).
LabelImage building_image(int res, int x0, int y0, int x1, int y1, int dx0, int dx1) {
  LabelImage img(res, res);
  for (int y = 0; y < res; ++y) {
    for (int x = 0; x < res; ++x) {
      auto& p = img.at(x, y);
      p[2] = kLabelExterior;
      if (x < x0 || x >= x1 || y < y0 || y >= y1) continue;
      p[0] = 255;
      const bool edge = x == x0 || x == x1 - 1 || y == y0 || y == y1 - 1;
      p[1] = edge ? kExteriorWallMark : 0;
      if (y == y0 && x >= dx0 && x < dx1) p[1] = kFrontDoorMark;
    }
  }
  return img;
}

void paint_room(LabelImage& img, int x0, int y0, int x1, int y1, RoomType t, int instance) {
  for (int y = y0; y < y1; ++y)
    for (int x = x0; x < x1; ++x) {
      img.at(x, y)[2] = static_cast<std::uint8_t>(t);
      img.at(x, y)[3] = static_cast<std::uint8_t>(instance);
    }
}

}  // namespace

TEST_CASE("layout graph validation") {
  LayoutGraph g;
  g.nodes = {node(0), node(1), node(2)};
  g.edges = {{0, 1, RelationType::LeftOf}};
  CHECK_NOTHROW(g.validate());
  auto expect_invalid = [](const LayoutGraph& bad) {
    try {
      bad.validate();
      FAIL("expected InvalidGraph");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidGraph);
    }
  };
  LayoutGraph dup = g;
  dup.nodes.push_back(node(1));
  expect_invalid(dup);
  LayoutGraph dangling = g;
  dangling.edges.push_back({0, 7, RelationType::Above});
  expect_invalid(dangling);
  LayoutGraph loop = g;
  loop.edges.push_back({2, 2, RelationType::Above});
  expect_invalid(loop);
  LayoutGraph multi = g;
  multi.edges.push_back({1, 0, RelationType::RightOf});
  expect_invalid(multi);
  CHECK(g.next_node_id() == 3);
  REQUIRE(g.find_edge(1, 0) != nullptr);
  CHECK(g.find_edge(1, 0)->rel == RelationType::LeftOf);
}

TEST_CASE("relations: inverse, rotation and octants") {
  for (std::size_t i = 0; i < kRelationTypeCount; ++i) {
    const auto r = static_cast<RelationType>(i);
    CHECK(inverse(inverse(r)) == r);
    CHECK(rotate_relation(r, 0) == r);
    CHECK(rotate_relation(rotate_relation(r, 1), 3) == r);
    CHECK(rotate_relation(inverse(r), 1) == inverse(rotate_relation(r, 1)));
    CHECK(parse_relation(to_string(r)) == r);
  }
  CHECK(rotate_relation(RelationType::LeftOf, 1) == RelationType::Above);
  CHECK(rotate_relation(RelationType::Above, 1) == RelationType::RightOf);
  CHECK(rotate_relation(RelationType::LeftAbove, 1) == RelationType::RightAbove);
  CHECK(rotate_relation(RelationType::Inside, 1) == RelationType::Inside);

  CHECK(relation_from_offset(-10, 0, 0, 1) == RelationType::LeftOf);
  CHECK(relation_from_offset(10, 0, 0, 1) == RelationType::RightOf);
  CHECK(relation_from_offset(0, -10, 0, 1) == RelationType::Above);
  CHECK(relation_from_offset(0, 10, 0, 1) == RelationType::Below);
  CHECK(relation_from_offset(-10, -10, 0, 1) == RelationType::LeftAbove);
  CHECK(relation_from_offset(10, 10, 0, 1) == RelationType::RightBelow);
  CHECK(relation_from_offset(-10, 3, 0, 1) == RelationType::LeftOf);
  CHECK(relation_from_offset(0, 0, 0, 1) == inverse(relation_from_offset(0, 0, 1, 0)));
  // Octant boundaries against a tan(22.5 deg) oracle.
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-50, 50);
  for (int i = 0; i < 2000; ++i) {
    const double dx = u(rng), dy = u(rng);
    CHECK(relation_from_offset(dx, dy, 0, 1) == inverse(relation_from_offset(-dx, -dy, 1, 0)));
    const double deg = std::atan2(-dy, dx) * 180 / M_PI;  // y up
    const int sector = static_cast<int>(std::floor((deg + 22.5 + 360) / 45.0)) % 8;
    const RelationType expect[8] = {RelationType::RightOf,   RelationType::RightAbove, RelationType::Above,
                                    RelationType::LeftAbove, RelationType::LeftOf,     RelationType::LeftBelow,
                                    RelationType::Below,     RelationType::RightBelow};
    CHECK(relation_from_offset(dx, dy, 0, 1) == expect[sector]);
  }
}

TEST_CASE("grid cells and size bins") {
  const Rect bbox{0, 0, 100, 100};
  CHECK(cell_of({10, 10}, bbox) == GridCell{0, 0});
  CHECK(cell_of({99, 10}, bbox) == GridCell{0, 4});
  CHECK(cell_of({10, 99}, bbox) == GridCell{4, 0});
  CHECK(cell_of({150, 50}, bbox) == GridCell{2, 4});
  CHECK(rotate_cell({0, 0}, 1) == GridCell{0, 4});
  CHECK(rotate_cell({1, 3}, 4) == GridCell{1, 3});
  CHECK(size_bin_for(0.0) == 0);
  CHECK(size_bin_for(0.25) == 5);
  CHECK(size_bin_for(0.49) == 9);
  CHECK(size_bin_for(0.8) == 9);
}

TEST_CASE("door-connected rooms are adjacent regardless of the proximity rule") {
  // 6 px apart with 20 px sides: the proximity threshold is 3 px.
  const auto rec = boxes_record({RoomBox::from_edges(20, 20, 40, 40, 0), RoomBox::from_edges(46, 20, 66, 40, 1)});
  CHECK(extract_layout_graph(rec, {}).edges.empty());
  const LayoutGraph g = extract_layout_graph(rec, {{{43, 28}, {43, 32}}});
  REQUIRE(g.edges.size() == 1);
  const GraphEdge& e = g.edges[0];
  CHECK(((e.src == 0 && e.rel == RelationType::LeftOf) || (e.src == 1 && e.rel == RelationType::RightOf)));
}

TEST_CASE("proximity adjacency over a 3x3 grid matches a pairwise gap scan") {
  std::vector<RoomBox> boxes;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) boxes.push_back(RoomBox::from_edges(10 + 30 * c, 10 + 30 * r, 40 + 30 * c, 40 + 30 * r, r * 3 + c));
  const auto rec = boxes_record(boxes);
  ExtractionConfig cfg;
  cfg.min_gap_px = 0;
  cfg.gap_fraction = 0;
  const LayoutGraph g = extract_layout_graph(rec, {}, cfg);
  std::set<std::pair<int, int>> oracle;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    for (std::size_t j = i + 1; j < boxes.size(); ++j) {
      const Rect a = boxes[i].rect(), b = boxes[j].rect();
      const double ox = std::min(a.x1, b.x1) - std::max(a.x0, b.x0);
      const double oy = std::min(a.y1, b.y1) - std::max(a.y0, b.y0);
      const bool facing = (ox > 0 && oy >= 0 && oy <= 0) || (oy > 0 && ox >= 0 && ox <= 0);
      if (facing) oracle.insert({static_cast<int>(i), static_cast<int>(j)});
    }
  }
  CHECK(oracle.size() == 12);
  CHECK(unordered_pairs(g) == oracle);
  for (const GraphEdge& e : g.edges) {
    const RoomBox& s = boxes[static_cast<std::size_t>(e.src)];
    const RoomBox& d = boxes[static_cast<std::size_t>(e.dst)];
    CHECK(e.rel == inverse(relation_between(d, s, 0.95)));
  }
}

TEST_CASE("containment gives Inside and Outside") {
  const RoomBox outer = RoomBox::from_edges(10, 10, 60, 60, 0);
  const RoomBox inner = RoomBox::from_edges(20, 20, 30, 30, 1);
  CHECK(relation_between(inner, outer, 0.95) == RelationType::Inside);
  CHECK(relation_between(outer, inner, 0.95) == RelationType::Outside);
  CHECK(facing_gap(RoomBox::from_edges(0, 0, 10, 10, 0).rect(), RoomBox::from_edges(12, 12, 20, 20, 1).rect()) ==
        std::nullopt);
  CHECK(*facing_gap(RoomBox::from_edges(0, 0, 10, 10, 0).rect(), RoomBox::from_edges(12, 5, 20, 20, 1).rect()) == 2.0);
}

TEST_CASE("extraction is symmetric under relabeling rooms") {
  const Corpus c = generate_synthetic_corpus(40, 21);
  for (const FloorplanRecord& rec : c) {
    FloorplanRecord swapped = rec;
    std::reverse(swapped.graph.nodes.begin(), swapped.graph.nodes.end());
    std::reverse(swapped.gt_boxes.begin(), swapped.gt_boxes.end());
    const LayoutGraph g = extract_layout_graph(swapped, {});
    CHECK(unordered_pairs(g) == unordered_pairs(rec.graph));
    for (const GraphEdge& e : g.edges) {
      const GraphEdge* orig = rec.graph.find_edge(e.src, e.dst);
      REQUIRE(orig != nullptr);
      CHECK((orig->src == e.src ? orig->rel == e.rel : orig->rel == inverse(e.rel)));
    }
  }
}

TEST_CASE("synthetic corpus: determinism, invariants and coverage") {
  CHECK(generate_synthetic_corpus(1, 7) == generate_synthetic_corpus(1, 7));
  CHECK_THROWS_AS(generate_synthetic_corpus(0, 7), Error);
  const Corpus c = generate_synthetic_corpus(1000, 7);
  REQUIRE(c.size() == 1000);
  std::map<std::size_t, int> counts;
  for (const FloorplanRecord& r : c) {
    CHECK_NOTHROW(r.validate());
    ++counts[r.graph.nodes.size()];
    CHECK(r.turning == compute_turning_function(r.boundary));
  }
  for (std::size_t n = 3; n <= 8; ++n) CHECK(counts[n] > 0);
  CHECK(counts.begin()->first == 3);
  CHECK(counts.rbegin()->first == 8);

  for (std::size_t k = 0; k < 100; ++k) {
    const FloorplanRecord& r = c[k];
    const auto inside = fgtest::inside_oracle(r.boundary);
    long uncovered = 0, overlapped = 0;
    for (int y = 0; y < 128; ++y) {
      for (int x = 0; x < 128; ++x) {
        if (!inside[y][x]) continue;
        int claims = 0;
        for (const RoomBox& b : r.gt_boxes) claims += b.rect().contains({x + 0.5, y + 0.5});
        uncovered += claims == 0;
        overlapped += claims > 1;
      }
    }
    CHECK(uncovered == 0);
    CHECK(overlapped == 0);
    int living = 0;
    for (const RoomNode& n : r.graph.nodes) living += n.type == RoomType::LivingRoom;
    CHECK(living == 1);
  }
}

TEST_CASE("corpus files round-trip") {
  const Corpus c = generate_synthetic_corpus(25, 3);
  std::stringstream ss;
  save_corpus(c, ss);
  CHECK(load_corpus(ss) == c);

  std::stringstream empty;
  save_corpus({}, empty);
  CHECK(empty.str().empty());
  CHECK(load_corpus(empty).empty());

  std::stringstream bad_version;
  bad_version << R"({"v":99})" << '\n';
  try {
    load_corpus(bad_version);
    FAIL("expected VersionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::VersionMismatch);
  }
  std::stringstream garbage("not json\n");
  try {
    load_corpus(garbage);
    FAIL("expected Format");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Format);
  }
  try {
    load_corpus(std::filesystem::path("/nonexistent/corpus.jsonl"));
    FAIL("expected Io");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Io);
  }
}

TEST_CASE("a 1000-record corpus loads in under two seconds") {
  const auto path = std::filesystem::temp_directory_path() / "floorgraph_corpus_load.jsonl";
  const Corpus c = generate_synthetic_corpus(1000, 5);
  save_corpus(c, path);
  const auto t0 = std::chrono::steady_clock::now();
  const Corpus loaded = load_corpus(path);
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(loaded == c);
  CHECK(s < 2.0);
  std::filesystem::remove(path);
}

TEST_CASE("raster import of a two-room plan") {
  LabelImage img = building_image(32, 4, 4, 24, 14, 8, 12);
  paint_room(img, 4, 4, 14, 14, RoomType::LivingRoom, 1);
  paint_room(img, 14, 4, 24, 14, RoomType::Kitchen, 2);
  const FloorplanRecord r = import_raster_floorplan(img, 9);
  CHECK(r.id == 9);
  CHECK(r.boundary.vertices().size() == 4);
  CHECK(r.boundary.door() == Segment{{8, 4}, {12, 4}});
  REQUIRE(r.graph.nodes.size() == 2);
  CHECK(r.graph.nodes[0].type == RoomType::LivingRoom);
  CHECK(r.graph.nodes[1].type == RoomType::Kitchen);
  CHECK(r.graph.nodes[0].size_ratio == doctest::Approx(0.5));
  REQUIRE(r.graph.edges.size() == 1);
  const auto rel = r.graph.edges[0].rel;
  CHECK((rel == RelationType::LeftOf || rel == RelationType::RightOf));
  CHECK_NOTHROW(r.validate());
}

TEST_CASE("raster import: size ratio, PNG round trip and malformed input") {
  LabelImage img = building_image(24, 2, 2, 12, 12, 4, 8);
  paint_room(img, 2, 2, 7, 7, RoomType::Bathroom, 1);
  paint_room(img, 7, 2, 12, 12, RoomType::LivingRoom, 2);
  paint_room(img, 2, 7, 7, 12, RoomType::Kitchen, 3);
  const FloorplanRecord r = import_raster_floorplan(img, 0);
  REQUIRE(r.graph.nodes.size() == 3);
  CHECK(r.graph.nodes[0].size_ratio == doctest::Approx(0.25));

  const auto path = std::filesystem::temp_directory_path() / "floorgraph_label.png";
  write_label_png(img, path);
  const LabelImage back = read_label_png(path);
  CHECK(back.pixels == img.pixels);
  CHECK(import_raster_floorplan(back, 0) == r);
  std::filesystem::remove(path);

  auto expect_format = [](const LabelImage& bad) {
    try {
      import_raster_floorplan(bad, 0);
      FAIL("expected Format");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Format);
    }
  };
  LabelImage multi = img;
  multi.at(3, 3)[2] = static_cast<std::uint8_t>(RoomType::Storage);
  expect_format(multi);
  expect_format(building_image(24, 0, 0, 12, 12, 4, 8));  // touches the image border
  LabelImage no_door = img;
  for (auto& p : no_door.pixels)
    if (p[1] == kFrontDoorMark) p[1] = kExteriorWallMark;
  expect_format(no_door);
  expect_format(LabelImage(10, 12));
  try {
    read_label_png("/nonexistent.png");
    FAIL("expected Io");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Io);
  }
}

TEST_CASE("imported boxes are regularized by alignment") {
  // Rooms separated by a one-pixel interior wall get their walls closed.
  LabelImage img = building_image(40, 4, 4, 34, 20, 8, 12);
  paint_room(img, 4, 4, 18, 20, RoomType::LivingRoom, 1);
  for (int y = 4; y < 20; ++y) img.at(18, y)[2] = kLabelInteriorWall;
  paint_room(img, 19, 4, 34, 20, RoomType::MasterRoom, 2);
  const FloorplanRecord r = import_raster_floorplan(img, 0);
  REQUIRE(r.gt_boxes.size() == 2);
  CHECK(r.gt_boxes[0].right() == r.gt_boxes[1].left());
  CHECK(r.gt_boxes[0].left() == 4);
  CHECK(r.gt_boxes[1].right() == 34);
  // Most of each original box stays inside its refined box.
  const Rect orig0{4, 4, 18, 20}, orig1{19, 4, 34, 20};
  CHECK(overlap_area(orig0, r.gt_boxes[0].rect()) >= 0.99 * orig0.area());
  CHECK(overlap_area(orig1, r.gt_boxes[1].rect()) >= 0.99 * orig1.area());
}
