#include "floorgraph/serialization.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "floorgraph/error.hpp"

namespace floorgraph {

namespace {

template <typename F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Format, std::string(what) + ": " + e.what());
  }
}

RoomType room_type_from(const Json& j) {
  const auto name = j.get<std::string>();
  const auto t = parse_room_type(name);
  if (!t) throw Error(ErrorCode::Format, "unknown room type '" + name + "'");
  return *t;
}

GridCell cell_from(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::Format, "grid cell must be [row, col]");
  return {j.at(0).get<int>(), j.at(1).get<int>()};
}

Json cell_json(GridCell c) { return Json::array({c.row, c.col}); }

Json ring_json(const Ring& ring) {
  Json out = Json::array();
  for (const Point& p : ring) out.push_back(to_json(p));
  return out;
}

}  // namespace

Json to_json(const Point& p) { return Json::array({p.x, p.y}); }
Json to_json(const Segment& s) { return Json::array({to_json(s.a), to_json(s.b)}); }

Json to_json(const Boundary& b) {
  return {{"vertices", ring_json(b.vertices())}, {"door", to_json(b.door())}, {"resolution", b.resolution()}};
}

Json to_json(const TurningFunction& t) {
  Json bps = Json::array();
  for (const TurningBreakpoint& bp : t.breakpoints) bps.push_back(Json::array({bp.arc_fraction, bp.cumulative_angle}));
  return {{"breakpoints", bps}, {"perimeter", t.total_perimeter}};
}

Json to_json(const RoomNode& n) {
  return {{"id", n.id},
          {"type", std::string(to_string(n.type))},
          {"cell", cell_json(n.cell)},
          {"size_ratio", n.size_ratio},
          {"size_bin", n.size_bin}};
}

Json to_json(const GraphEdge& e) { return {{"src", e.src}, {"dst", e.dst}, {"rel", std::string(to_string(e.rel))}}; }

Json to_json(const LayoutGraph& g) {
  Json nodes = Json::array(), edges = Json::array();
  for (const RoomNode& n : g.nodes) nodes.push_back(to_json(n));
  for (const GraphEdge& e : g.edges) edges.push_back(to_json(e));
  return {{"nodes", nodes}, {"edges", edges}};
}

Json to_json(const RoomBox& b) { return {{"id", b.room_id}, {"x", b.x}, {"y", b.y}, {"w", b.w}, {"h", b.h}}; }

Json to_json(const std::vector<RoomBox>& boxes) {
  Json out = Json::array();
  for (const RoomBox& b : boxes) out.push_back(to_json(b));
  return out;
}

Json to_json(const FloorplanRecord& r) {
  return {{"v", kCorpusFormatVersion},       {"id", r.id},
          {"boundary", to_json(r.boundary)}, {"graph", to_json(r.graph)},
          {"gt_boxes", to_json(r.gt_boxes)}, {"turning", to_json(r.turning)}};
}

std::string to_string(const RoomSelector& s) {
  return s.any_bedroom ? std::string("Bedroom") : std::string(to_string(s.type));
}

RoomSelector selector_from_string(const std::string& name) {
  if (name == "Bedroom") return RoomSelector::bedroom();
  const auto t = parse_room_type(name);
  if (!t) throw Error(ErrorCode::Format, "unknown room type '" + name + "'");
  return RoomSelector::of(*t);
}

Json to_json(const Constraints& c) {
  Json counts = Json::object();
  for (const CountConstraint& cc : c.room_counts) {
    counts[to_string(cc.room)] = Json::array({cc.min, cc.max == std::numeric_limits<int>::max() ? Json(nullptr) : Json(cc.max)});
  }
  Json locs = Json::array();
  for (const LocationConstraint& l : c.required_locations) {
    locs.push_back({{"room", to_string(l.room)}, {"cell", cell_json(l.cell)}});
  }
  Json adj = Json::array();
  for (const AdjacencyConstraint& a : c.required_adjacencies) adj.push_back(Json::array({to_string(a.a), to_string(a.b)}));
  return {{"room_counts", counts}, {"required_locations", locs}, {"required_adjacencies", adj}};
}

Json to_json(const LossBreakdown& l) {
  return {{"coverage", l.coverage}, {"interior", l.interior}, {"mutex", l.mutex}, {"match", l.match}, {"total", l.total}};
}

Json to_json(const VectorFloorplan& vf) {
  Json rooms = Json::array();
  for (const RoomRegion& r : vf.rooms) {
    Json rings = Json::array();
    for (const Ring& ring : r.rings) rings.push_back(ring_json(ring));
    rooms.push_back({{"id", r.room_id}, {"type", std::string(to_string(r.type))}, {"rings", rings}});
  }
  Json doors = Json::array();
  for (const Door& d : vf.doors) doors.push_back({{"segment", to_json(d.segment)}, {"rooms", Json::array({d.room_a, d.room_b})}});
  Json windows = Json::array();
  for (const Window& w : vf.windows) windows.push_back({{"segment", to_json(w.segment)}, {"room", w.room_id}});
  Json unsatisfied = Json::array();
  for (const UnsatisfiedAdjacency& u : vf.unsatisfied) unsatisfied.push_back(Json::array({u.room_a, u.room_b}));
  return {{"version", 1},          {"boundary", to_json(vf.boundary)}, {"rooms", rooms},
          {"doors", doors},        {"windows", windows},               {"unsatisfied", unsatisfied},
          {"dropped_rooms", vf.dropped_rooms}};
}

Point point_from_json(const Json& j) {
  return guarded("point", [&] {
    if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::Format, "point must be [x, y]");
    return Point{j.at(0).get<double>(), j.at(1).get<double>()};
  });
}

Segment segment_from_json(const Json& j) {
  return guarded("segment", [&] {
    if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::Format, "segment must be [[x, y], [x, y]]");
    return Segment{point_from_json(j.at(0)), point_from_json(j.at(1))};
  });
}

Boundary boundary_from_json(const Json& j) {
  return guarded("boundary", [&] {
    std::vector<Point> vertices;
    for (const Json& v : j.at("vertices")) vertices.push_back(point_from_json(v));
    const int res = j.contains("resolution") ? j.at("resolution").get<int>() : kDefaultResolution;
    return Boundary::make(std::move(vertices), segment_from_json(j.at("door")), res);
  });
}

TurningFunction turning_from_json(const Json& j) {
  return guarded("turning function", [&] {
    TurningFunction t;
    for (const Json& bp : j.at("breakpoints")) t.breakpoints.push_back({bp.at(0).get<double>(), bp.at(1).get<double>()});
    t.total_perimeter = j.at("perimeter").get<double>();
    return t;
  });
}

LayoutGraph graph_from_json(const Json& j) {
  return guarded("layout graph", [&] {
    LayoutGraph g;
    for (const Json& n : j.at("nodes")) {
      RoomNode node;
      node.id = n.at("id").get<int>();
      node.type = room_type_from(n.at("type"));
      node.cell = cell_from(n.at("cell"));
      node.size_ratio = n.at("size_ratio").get<double>();
      node.size_bin = n.contains("size_bin") ? n.at("size_bin").get<int>() : size_bin_for(node.size_ratio);
      g.nodes.push_back(node);
    }
    for (const Json& e : j.at("edges")) {
      GraphEdge edge;
      edge.src = e.at("src").get<int>();
      edge.dst = e.at("dst").get<int>();
      const auto name = e.at("rel").get<std::string>();
      const auto rel = parse_relation(name);
      if (!rel) throw Error(ErrorCode::Format, "unknown relation '" + name + "'");
      edge.rel = *rel;
      g.edges.push_back(edge);
    }
    return g;
  });
}

RoomBox box_from_json(const Json& j) {
  return guarded("room box", [&] {
    return RoomBox{j.at("x").get<double>(), j.at("y").get<double>(), j.at("w").get<double>(), j.at("h").get<double>(),
                   j.at("id").get<int>()};
  });
}

std::vector<RoomBox> boxes_from_json(const Json& j) {
  return guarded("room boxes", [&] {
    std::vector<RoomBox> out;
    for (const Json& b : j) out.push_back(box_from_json(b));
    return out;
  });
}

FloorplanRecord record_from_json(const Json& j) {
  return guarded("record", [&] {
    FloorplanRecord r;
    r.id = j.at("id").get<int>();
    r.boundary = boundary_from_json(j.at("boundary"));
    r.graph = graph_from_json(j.at("graph"));
    r.gt_boxes = boxes_from_json(j.at("gt_boxes"));
    r.turning = j.contains("turning") ? turning_from_json(j.at("turning")) : compute_turning_function(r.boundary);
    return r;
  });
}

Constraints constraints_from_json(const Json& j) {
  return guarded("constraints", [&] {
    Constraints c;
    if (!j.is_object()) throw Error(ErrorCode::Format, "constraints must be an object");
    if (j.contains("room_counts")) {
      for (const auto& [name, range] : j.at("room_counts").items()) {
        CountConstraint cc;
        cc.room = selector_from_string(name);
        if (!range.is_array() || range.size() != 2) throw Error(ErrorCode::Format, "room count must be [min, max]");
        cc.min = range.at(0).get<int>();
        cc.max = range.at(1).is_null() ? std::numeric_limits<int>::max() : range.at(1).get<int>();
        c.room_counts.push_back(cc);
      }
    }
    if (j.contains("required_locations")) {
      for (const Json& l : j.at("required_locations")) {
        c.required_locations.push_back({selector_from_string(l.at("room").get<std::string>()), cell_from(l.at("cell"))});
      }
    }
    if (j.contains("required_adjacencies")) {
      for (const Json& a : j.at("required_adjacencies")) {
        if (!a.is_array() || a.size() != 2) throw Error(ErrorCode::Format, "adjacency must be [room, room]");
        c.required_adjacencies.push_back(
            {selector_from_string(a.at(0).get<std::string>()), selector_from_string(a.at(1).get<std::string>())});
      }
    }
    return c;
  });
}

Edit edit_from_json(const Json& j) {
  return guarded("edit", [&]() -> Edit {
    const auto op = j.at("op").get<std::string>();
    if (op == "add_node") {
      edit::AddNode e;
      e.type = room_type_from(j.at("type"));
      e.cell = cell_from(j.at("cell"));
      if (j.contains("size_ratio")) e.size_ratio = j.at("size_ratio").get<double>();
      return e;
    }
    if (op == "delete_node") return edit::DeleteNode{j.at("id").get<int>()};
    if (op == "move_node") return edit::MoveNode{j.at("id").get<int>(), cell_from(j.at("cell"))};
    if (op == "add_edge") return edit::AddEdge{j.at("src").get<int>(), j.at("dst").get<int>()};
    if (op == "delete_edge") return edit::DeleteEdge{j.at("src").get<int>(), j.at("dst").get<int>()};
    throw Error(ErrorCode::Format, "unknown edit op '" + op + "'");
  });
}

SolverConfig solver_config_from_json(const Json& j, SolverConfig cfg) {
  return guarded("solver config", [&] {
    if (!j.is_object()) throw Error(ErrorCode::Format, "solver config must be an object");
    if (j.contains("max_iters")) cfg.max_iters = j.at("max_iters").get<int>();
    if (j.contains("step_size")) cfg.step_size = j.at("step_size").get<double>();
    if (j.contains("step_decay")) cfg.step_decay = j.at("step_decay").get<double>();
    if (j.contains("step_growth")) cfg.step_growth = j.at("step_growth").get<double>();
    if (j.contains("min_box_side")) cfg.min_box_side = j.at("min_box_side").get<double>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("weights")) {
      const Json& w = j.at("weights");
      if (w.contains("coverage")) cfg.weights.coverage = w.at("coverage").get<double>();
      if (w.contains("interior")) cfg.weights.interior = w.at("interior").get<double>();
      if (w.contains("mutex")) cfg.weights.mutex = w.at("mutex").get<double>();
      if (w.contains("match")) cfg.weights.match = w.at("match").get<double>();
    }
    return cfg;
  });
}

VectorFloorplan floorplan_from_json(const Json& j) {
  return guarded("floorplan", [&] {
    if (j.at("version").get<int>() != 1) throw Error(ErrorCode::VersionMismatch, "unsupported floorplan version");
    VectorFloorplan vf;
    vf.boundary = boundary_from_json(j.at("boundary"));
    for (const Json& r : j.at("rooms")) {
      RoomRegion room;
      room.room_id = r.at("id").get<int>();
      room.type = room_type_from(r.at("type"));
      for (const Json& ring : r.at("rings")) {
        Ring pts;
        for (const Json& p : ring) pts.push_back(point_from_json(p));
        room.rings.push_back(std::move(pts));
      }
      vf.rooms.push_back(std::move(room));
    }
    for (const Json& d : j.at("doors")) {
      vf.doors.push_back({segment_from_json(d.at("segment")), d.at("rooms").at(0).get<int>(), d.at("rooms").at(1).get<int>()});
    }
    for (const Json& w : j.at("windows")) vf.windows.push_back({segment_from_json(w.at("segment")), w.at("room").get<int>()});
    for (const Json& u : j.at("unsatisfied")) vf.unsatisfied.push_back({u.at(0).get<int>(), u.at(1).get<int>()});
    vf.dropped_rooms = j.at("dropped_rooms").get<std::vector<int>>();
    return vf;
  });
}

void save_corpus(const Corpus& records, std::ostream& out) {
  for (const FloorplanRecord& r : records) out << to_json(r).dump() << '\n';
  if (!out) throw Error(ErrorCode::Io, "failed writing corpus");
}

Corpus load_corpus(std::istream& in) {
  Corpus out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw Error(ErrorCode::Format, "corpus line " + std::to_string(line_no) + ": not a JSON object");
    }
    if (!j.contains("v") || !j.at("v").is_number_integer()) {
      throw Error(ErrorCode::Format, "corpus line " + std::to_string(line_no) + ": missing format version");
    }
    if (j.at("v").get<int>() != kCorpusFormatVersion) {
      throw Error(ErrorCode::VersionMismatch, "corpus line " + std::to_string(line_no) + ": format version " +
                                                  std::to_string(j.at("v").get<int>()) + ", expected " +
                                                  std::to_string(kCorpusFormatVersion));
    }
    try {
      out.push_back(record_from_json(j));
    } catch (const Error& e) {
      throw Error(ErrorCode::Format, "corpus line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

void save_corpus(const Corpus& records, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  save_corpus(records, out);
}

Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  return load_corpus(in);
}

}  // namespace floorgraph
