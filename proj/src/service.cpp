#include "floorgraph/service.hpp"

#include <fstream>

#include "floorgraph/compose.hpp"
#include "floorgraph/transfer.hpp"
#include "floorgraph/vectorize.hpp"

namespace floorgraph {

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownSession:
    case ErrorCode::UnknownRecord: return 404;
    case ErrorCode::InvalidBoundary:
    case ErrorCode::DegenerateDirection:
    case ErrorCode::Format:
    case ErrorCode::VersionMismatch:
    case ErrorCode::InvalidGraph:
    case ErrorCode::InvalidEdit:
    case ErrorCode::InvalidArgument: return 400;
    case ErrorCode::InfeasibleBoundary: return 422;
    case ErrorCode::NonFiniteLoss:
    case ErrorCode::Io: return 500;
  }
  return 500;
}

Json error_body(const Error& e) {
  return {{"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}};
}

namespace {

const Json& field(const Json& body, const char* name) {
  if (!body.is_object() || !body.contains(name)) {
    throw Error(ErrorCode::Format, std::string("request body needs field '") + name + "'");
  }
  return body.at(name);
}

std::string thumbnail_svg(const FloorplanRecord& r) {
  const Mask inside = rasterize_boundary(r.boundary).inside;
  std::vector<int> order;
  for (const RoomBox& b : r.gt_boxes) order.push_back(b.room_id);
  const FloorplanRaster raster = paint_boxes(r.gt_boxes, order, inside);
  return export_floorplan(clip_and_polygonize(raster, r.graph, r.boundary), ExportFormat::Svg);
}

Json session_json(const DesignSession& s) {
  return {{"session", s.id},
          {"boundary", to_json(s.boundary)},
          {"constraints", to_json(s.constraints)},
          {"candidates", s.candidates},
          {"source_record", s.source_record ? Json(*s.source_record) : Json(nullptr)},
          {"graph", to_json(s.working_graph)},
          {"priors", to_json(s.priors)},
          {"has_result", s.last_result.has_value()}};
}

}  // namespace

DesignService::DesignService(std::shared_ptr<const Corpus> corpus, PipelineConfig cfg)
    : corpus_(std::move(corpus)), cfg_(cfg) {
  if (!corpus_) corpus_ = std::make_shared<const Corpus>();
  for (const FloorplanRecord& r : *corpus_) by_id_[r.id] = &r;
}

std::shared_ptr<DesignService::Slot> DesignService::find(const std::string& id) const {
  std::shared_lock lock(sessions_mu_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorCode::UnknownSession, "unknown session '" + id + "'");
  return it->second;
}

const FloorplanRecord& DesignService::record(int id) const {
  const auto it = by_id_.find(id);
  if (it == by_id_.end()) throw Error(ErrorCode::UnknownRecord, "unknown record " + std::to_string(id));
  return *it->second;
}

Json DesignService::create_session(const Json& body) {
  auto slot = std::make_shared<Slot>();
  slot->state.boundary = boundary_from_json(field(body, "boundary"));
  std::unique_lock lock(sessions_mu_);
  slot->state.id = "s" + std::to_string(next_session_++);
  sessions_[slot->state.id] = slot;
  return {{"session", slot->state.id}, {"boundary", to_json(slot->state.boundary)}};
}

Json DesignService::get_session(const std::string& id) const {
  auto slot = find(id);
  std::lock_guard lock(slot->mu);
  return session_json(slot->state);
}

void DesignService::delete_session(const std::string& id) {
  std::unique_lock lock(sessions_mu_);
  if (sessions_.erase(id) == 0) throw Error(ErrorCode::UnknownSession, "unknown session '" + id + "'");
}

Json DesignService::retrieve(const std::string& id, const Json& body) {
  Constraints c;
  if (body.is_object() && body.contains("constraints")) c = constraints_from_json(body.at("constraints"));
  c.validate();
  std::size_t k = 5;
  if (body.is_object() && body.contains("k")) {
    const Json& jk = body.at("k");
    if (!jk.is_number_integer() || jk.get<long long>() < 0) {
      throw Error(ErrorCode::InvalidArgument, "k must be a non-negative integer");
    }
    k = jk.get<std::size_t>();
  }
  auto slot = find(id);
  std::lock_guard lock(slot->mu);
  const auto ranked = floorgraph::retrieve(*corpus_, slot->state.boundary, c, k);
  Json out = Json::array();
  std::vector<int> ids;
  for (const RankedCandidate& rc : ranked) {
    ids.push_back(rc.record->id);
    out.push_back({{"record_id", rc.record->id},
                   {"distance", rc.distance},
                   {"graph", to_json(rc.record->graph)},
                   {"boundary", to_json(rc.record->boundary)},
                   {"thumbnail_svg", thumbnail_svg(*rc.record)}});
  }
  slot->state.constraints = c;
  slot->state.candidates = ids;
  return {{"candidates", out}};
}

Json DesignService::transfer(const std::string& id, const Json& body) {
  const Json& jr = field(body, "record_id");
  if (!jr.is_number_integer()) throw Error(ErrorCode::Format, "record_id must be an integer");
  const FloorplanRecord& src = record(jr.get<int>());
  auto slot = find(id);
  std::lock_guard lock(slot->mu);
  const TransferResult t = transfer_record(src, slot->state.boundary);
  slot->state.source_record = src.id;
  slot->state.working_graph = t.graph;
  slot->state.priors = t.priors;
  slot->state.last_result.reset();
  return {{"graph", to_json(t.graph)}, {"rotation", t.rotation}, {"priors", to_json(t.priors)}};
}

Json DesignService::edit(const std::string& id, const Json& body) {
  const Edit e = edit_from_json(body);
  auto slot = find(id);
  std::lock_guard lock(slot->mu);
  LayoutGraph next = apply_edit(slot->state.working_graph, e);
  slot->state.working_graph = std::move(next);
  return {{"graph", to_json(slot->state.working_graph)}};
}

Json DesignService::generate(const std::string& id, const Json& body) {
  PipelineConfig cfg = cfg_;
  if (body.is_object() && body.contains("solver")) cfg.solver = solver_config_from_json(body.at("solver"), cfg.solver);
  auto slot = find(id);
  std::lock_guard lock(slot->mu);
  if (slot->state.working_graph.nodes.empty()) {
    throw Error(ErrorCode::InvalidGraph, "the working graph is empty; transfer a record first");
  }
  const GenerateResult gen = generate_floorplan(slot->state.working_graph, slot->state.boundary, slot->state.priors, cfg);
  slot->state.last_result = gen.plan;
  Json trace = Json::array();
  for (const LossBreakdown& l : gen.trace) trace.push_back(to_json(l));
  return {{"floorplan", to_json(gen.plan)},
          {"svg", export_floorplan(gen.plan, ExportFormat::Svg)},
          {"boxes", to_json(gen.aligned)},
          {"trace", trace},
          {"timings",
           {{"solve_ms", gen.timings.solve_ms},
            {"compose_ms", gen.timings.compose_ms},
            {"vectorize_ms", gen.timings.vectorize_ms}}}};
}

std::string DesignService::export_plan(const std::string& id, const std::string& format) const {
  ExportFormat f;
  if (format == "svg") f = ExportFormat::Svg;
  else if (format == "json") f = ExportFormat::Json;
  else throw Error(ErrorCode::InvalidArgument, "export format must be 'svg' or 'json'");
  auto slot = find(id);
  std::lock_guard lock(slot->mu);
  if (!slot->state.last_result) throw Error(ErrorCode::InvalidArgument, "nothing generated yet in this session");
  return export_floorplan(*slot->state.last_result, f);
}

std::size_t DesignService::session_count() const {
  std::shared_lock lock(sessions_mu_);
  return sessions_.size();
}

void DesignService::save_snapshot(const std::filesystem::path& path) const {
  Json sessions = Json::array();
  {
    std::shared_lock lock(sessions_mu_);
    for (const auto& [id, slot] : sessions_) {
      std::lock_guard slot_lock(slot->mu);
      Json s = session_json(slot->state);
      s["last_result"] = slot->state.last_result ? to_json(*slot->state.last_result) : Json(nullptr);
      sessions.push_back(std::move(s));
    }
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write snapshot " + path.string());
  out << Json{{"version", 1}, {"next_session", next_session_}, {"sessions", sessions}}.dump() << '\n';
}

void DesignService::load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read snapshot " + path.string());
  const Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw Error(ErrorCode::Format, "snapshot is not a JSON object");
  std::map<std::string, std::shared_ptr<Slot>> loaded;
  std::uint64_t next = 1;
  try {
    if (j.at("version").get<int>() != 1) throw Error(ErrorCode::VersionMismatch, "unsupported snapshot version");
    next = j.at("next_session").get<std::uint64_t>();
    for (const Json& s : j.at("sessions")) {
      auto slot = std::make_shared<Slot>();
      DesignSession& st = slot->state;
      st.id = s.at("session").get<std::string>();
      st.boundary = boundary_from_json(s.at("boundary"));
      st.constraints = constraints_from_json(s.at("constraints"));
      st.candidates = s.at("candidates").get<std::vector<int>>();
      if (!s.at("source_record").is_null()) st.source_record = s.at("source_record").get<int>();
      st.working_graph = graph_from_json(s.at("graph"));
      st.priors = boxes_from_json(s.at("priors"));
      if (!s.at("last_result").is_null()) st.last_result = floorplan_from_json(s.at("last_result"));
      loaded[st.id] = slot;
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Format, std::string("snapshot: ") + e.what());
  }
  std::unique_lock lock(sessions_mu_);
  sessions_ = std::move(loaded);
  next_session_ = next;
}

}  // namespace floorgraph
