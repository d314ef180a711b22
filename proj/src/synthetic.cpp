#include <algorithm>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "floorgraph/corpus.hpp"
#include "floorgraph/error.hpp"
#include "floorgraph/vectorize.hpp"

namespace floorgraph {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t index, std::uint64_t attempt) {
  return splitmix(splitmix(splitmix(seed) ^ index) ^ (attempt * 0xD1B54A32D192ED03ULL));
}

struct IRect {
  int x0, y0, x1, y1;
  int w() const { return x1 - x0; }
  int h() const { return y1 - y0; }
  long area() const { return static_cast<long>(w()) * h(); }
};

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double uniform_real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool coin() { return uniform(0, 1) == 1; }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

struct Outline {
  IRect bbox;
  std::vector<IRect> notches;  // removed corner rectangles, pairwise disjoint
  std::vector<Point> vertices;
};

Outline sample_outline(Sampler& s, int res) {
  Outline o;
  const int w = s.uniform(64, 120);
  const int h = s.uniform(64, 120);
  const int x0 = s.uniform(2, res - 3 - w);
  const int y0 = s.uniform(2, res - 3 - h);
  o.bbox = {x0, y0, x0 + w, y0 + h};
  const int x1 = o.bbox.x1, y1 = o.bbox.y1;

  // Corner order: top-left, top-right, bottom-right, bottom-left.
  bool notched[4] = {false, false, false, false};
  int nw[4] = {0, 0, 0, 0}, nh[4] = {0, 0, 0, 0};
  const int count = s.uniform(0, 4);
  std::vector<int> corners = {0, 1, 2, 3};
  std::shuffle(corners.begin(), corners.end(), s.engine());
  for (int i = 0; i < count; ++i) {
    const int c = corners[static_cast<std::size_t>(i)];
    notched[c] = true;
    nw[c] = s.uniform((w + 5) / 6, w / 3);
    nh[c] = s.uniform((h + 5) / 6, h / 3);
  }

  auto& v = o.vertices;
  if (notched[0]) {
    v.push_back({double(x0), double(y0 + nh[0])});
    v.push_back({double(x0 + nw[0]), double(y0 + nh[0])});
    v.push_back({double(x0 + nw[0]), double(y0)});
    o.notches.push_back({x0, y0, x0 + nw[0], y0 + nh[0]});
  } else {
    v.push_back({double(x0), double(y0)});
  }
  if (notched[1]) {
    v.push_back({double(x1 - nw[1]), double(y0)});
    v.push_back({double(x1 - nw[1]), double(y0 + nh[1])});
    v.push_back({double(x1), double(y0 + nh[1])});
    o.notches.push_back({x1 - nw[1], y0, x1, y0 + nh[1]});
  } else {
    v.push_back({double(x1), double(y0)});
  }
  if (notched[2]) {
    v.push_back({double(x1), double(y1 - nh[2])});
    v.push_back({double(x1 - nw[2]), double(y1 - nh[2])});
    v.push_back({double(x1 - nw[2]), double(y1)});
    o.notches.push_back({x1 - nw[2], y1 - nh[2], x1, y1});
  } else {
    v.push_back({double(x1), double(y1)});
  }
  if (notched[3]) {
    v.push_back({double(x0 + nw[3]), double(y1)});
    v.push_back({double(x0 + nw[3]), double(y1 - nh[3])});
    v.push_back({double(x0), double(y1 - nh[3])});
    o.notches.push_back({x0, y1 - nh[3], x0 + nw[3], y1});
  } else {
    v.push_back({double(x0), double(y1)});
  }
  return o;
}

// Picks an edge of length >= 12 and places a door of 4..10 px at least 3 px
// from both ends.
Segment sample_door(Sampler& s, const std::vector<Point>& v) {
  std::vector<std::size_t> long_edges;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point a = v[i], b = v[(i + 1) % v.size()];
    if (std::abs(b.x - a.x) + std::abs(b.y - a.y) >= 12) long_edges.push_back(i);
  }
  const std::size_t e = long_edges[static_cast<std::size_t>(s.uniform(0, static_cast<int>(long_edges.size()) - 1))];
  const Point a = v[e], b = v[(e + 1) % v.size()];
  const int len = static_cast<int>(std::abs(b.x - a.x) + std::abs(b.y - a.y));
  const int door_len = s.uniform(4, std::min(10, len - 6));
  const int offset = s.uniform(3, len - 3 - door_len);
  const double dx = (b.x - a.x) / len, dy = (b.y - a.y) / len;
  return {{a.x + dx * offset, a.y + dy * offset},
          {a.x + dx * (offset + door_len), a.y + dy * (offset + door_len)}};
}

// Guillotine partition of the bounding box into `rooms` rectangles.
std::vector<IRect> sample_partition(Sampler& s, const IRect& bbox, int rooms) {
  constexpr int kMinSide = 10;
  std::vector<IRect> parts = {bbox};
  while (static_cast<int>(parts.size()) < rooms) {
    std::size_t pick = parts.size();
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (std::max(parts[i].w(), parts[i].h()) < 2 * kMinSide) continue;
      if (pick == parts.size() || parts[i].area() > parts[pick].area()) pick = i;
    }
    if (pick == parts.size()) break;
    const IRect r = parts[pick];
    const bool vertical_cut = r.w() >= r.h();
    const int extent = vertical_cut ? r.w() : r.h();
    int cut = static_cast<int>(std::lround(extent * s.uniform_real(0.35, 0.65)));
    cut = std::clamp(cut, kMinSide, extent - kMinSide);
    IRect a = r, b = r;
    if (vertical_cut) {
      a.x1 = r.x0 + cut;
      b.x0 = r.x0 + cut;
    } else {
      a.y1 = r.y0 + cut;
      b.y0 = r.y0 + cut;
    }
    parts[pick] = a;
    parts.push_back(b);
  }
  return parts;
}

struct Region {
  long area = 0;
  IRect bbox{0, 0, 0, 0};
};

// Part of `r` not covered by any notch, via coordinate compression.
Region region_of(const IRect& r, const std::vector<IRect>& notches) {
  std::vector<int> xs = {r.x0, r.x1}, ys = {r.y0, r.y1};
  for (const IRect& n : notches) {
    for (int x : {n.x0, n.x1})
      if (x > r.x0 && x < r.x1) xs.push_back(x);
    for (int y : {n.y0, n.y1})
      if (y > r.y0 && y < r.y1) ys.push_back(y);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

  Region out;
  bool any = false;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
      const double cx = (xs[i] + xs[i + 1]) / 2.0, cy = (ys[j] + ys[j + 1]) / 2.0;
      const bool removed = std::any_of(notches.begin(), notches.end(), [&](const IRect& n) {
        return cx > n.x0 && cx < n.x1 && cy > n.y0 && cy < n.y1;
      });
      if (removed) continue;
      out.area += static_cast<long>(xs[i + 1] - xs[i]) * (ys[j + 1] - ys[j]);
      const IRect cell{xs[i], ys[j], xs[i + 1], ys[j + 1]};
      if (!any) {
        out.bbox = cell;
        any = true;
      } else {
        out.bbox = {std::min(out.bbox.x0, cell.x0), std::min(out.bbox.y0, cell.y0),
                    std::max(out.bbox.x1, cell.x1), std::max(out.bbox.y1, cell.y1)};
      }
    }
  }
  return out;
}

std::vector<RoomType> assign_types(Sampler& s, std::size_t n) {
  static const RoomType kPool[] = {RoomType::SecondRoom, RoomType::GuestRoom, RoomType::ChildRoom,
                                   RoomType::StudyRoom,  RoomType::DiningRoom, RoomType::Balcony,
                                   RoomType::Storage,    RoomType::Bathroom};
  std::vector<RoomType> types(n);
  for (std::size_t i = 0; i < n; ++i) {
    types[i] = kPool[s.uniform(0, static_cast<int>(std::size(kPool)) - 1)];
  }
  types[1] = RoomType::MasterRoom;
  if (n >= 4) types[n - 2] = RoomType::Kitchen;
  types[n - 1] = RoomType::Bathroom;
  types[0] = RoomType::LivingRoom;
  return types;
}

std::optional<FloorplanRecord> try_generate(std::uint64_t seed, int id) {
  constexpr int kRes = kDefaultResolution;
  constexpr long kMinRoomArea = 80;
  Sampler s(seed);
  const Outline outline = sample_outline(s, kRes);
  const Segment door = sample_door(s, outline.vertices);
  const int target_rooms = s.uniform(3, 8);
  const std::vector<IRect> parts = sample_partition(s, outline.bbox, target_rooms);
  if (static_cast<int>(parts.size()) != target_rooms) return std::nullopt;

  std::vector<Region> regions;
  long building_area = 0;
  for (const IRect& p : parts) {
    regions.push_back(region_of(p, outline.notches));
    if (regions.back().area < kMinRoomArea) return std::nullopt;
    building_area += regions.back().area;
  }

  FloorplanRecord rec;
  rec.id = id;
  rec.boundary = Boundary::make(outline.vertices, door, kRes);
  const Rect bbox = rec.boundary.bbox();

  std::vector<std::size_t> by_area(regions.size());
  for (std::size_t i = 0; i < by_area.size(); ++i) by_area[i] = i;
  std::stable_sort(by_area.begin(), by_area.end(),
                   [&](std::size_t a, std::size_t b) { return regions[a].area > regions[b].area; });
  const std::vector<RoomType> ranked_types = assign_types(s, regions.size());
  std::vector<RoomType> types(regions.size());
  for (std::size_t rank = 0; rank < by_area.size(); ++rank) types[by_area[rank]] = ranked_types[rank];

  for (std::size_t i = 0; i < regions.size(); ++i) {
    const IRect& r = regions[i].bbox;
    const RoomBox box = RoomBox::from_edges(r.x0, r.y0, r.x1, r.y1, static_cast<int>(i));
    RoomNode node;
    node.id = static_cast<int>(i);
    node.type = types[i];
    node.cell = cell_of(box.center(), bbox);
    node.size_ratio = static_cast<double>(regions[i].area) / static_cast<double>(building_area);
    node.size_bin = size_bin_for(node.size_ratio);
    rec.graph.nodes.push_back(node);
    rec.gt_boxes.push_back(box);
  }
  ExtractionConfig cfg;
  cfg.seed = seed;
  rec.graph = extract_layout_graph(rec, {}, cfg);
  // Keep only plans whose boxes alignment leaves untouched, like imported ones,
  // with a pixel of slack so no wall sits right at the snap threshold.
  AlignConfig slack;
  slack.tau += 1.0;
  if (align_rooms(rec.gt_boxes, rec.graph, rec.boundary, slack) != rec.gt_boxes) return std::nullopt;
  rec.turning = compute_turning_function(rec.boundary);
  return rec;
}

}  // namespace

Corpus generate_synthetic_corpus(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "generate_synthetic_corpus: n must be at least 1");
  Corpus out;
  out.reserve(n);
  std::set<std::vector<TurningBreakpoint>, decltype([](const auto& a, const auto& b) {
             return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                                 [](const TurningBreakpoint& p, const TurningBreakpoint& q) {
                                                   return std::pair(p.arc_fraction, p.cumulative_angle) <
                                                          std::pair(q.arc_fraction, q.cumulative_angle);
                                                 });
           })>
      seen;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::uint64_t attempt = 0;; ++attempt) {
      auto rec = try_generate(mix(seed, i, attempt), static_cast<int>(i));
      if (!rec) continue;
      if (!seen.insert(rec->turning.breakpoints).second) continue;
      out.push_back(std::move(*rec));
      break;
    }
  }
  return out;
}

}  // namespace floorgraph
