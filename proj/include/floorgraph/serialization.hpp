#pragma once

// JSON encodings shared by the corpus file, the exporter and the service.
// Decoders throw Error(Format) on malformed input (Error(InvalidBoundary)
// when a well-formed boundary fails validation).

#include <json.hpp>

#include "floorgraph/corpus.hpp"
#include "floorgraph/geometry.hpp"
#include "floorgraph/layout_graph.hpp"
#include "floorgraph/retrieval.hpp"
#include "floorgraph/room_box.hpp"
#include "floorgraph/solver.hpp"
#include "floorgraph/transfer.hpp"
#include "floorgraph/vectorize.hpp"

namespace floorgraph {

using Json = nlohmann::json;

Json to_json(const Point& p);
Json to_json(const Segment& s);
Json to_json(const Boundary& b);
Json to_json(const TurningFunction& t);
Json to_json(const RoomNode& n);
Json to_json(const GraphEdge& e);
Json to_json(const LayoutGraph& g);
Json to_json(const RoomBox& b);
Json to_json(const std::vector<RoomBox>& boxes);
Json to_json(const FloorplanRecord& r);
Json to_json(const Constraints& c);
Json to_json(const LossBreakdown& l);
Json to_json(const VectorFloorplan& vf);

Point point_from_json(const Json& j);
Segment segment_from_json(const Json& j);
Boundary boundary_from_json(const Json& j);
TurningFunction turning_from_json(const Json& j);
LayoutGraph graph_from_json(const Json& j);
RoomBox box_from_json(const Json& j);
std::vector<RoomBox> boxes_from_json(const Json& j);
FloorplanRecord record_from_json(const Json& j);
Constraints constraints_from_json(const Json& j);
Edit edit_from_json(const Json& j);
SolverConfig solver_config_from_json(const Json& j, SolverConfig base = {});
VectorFloorplan floorplan_from_json(const Json& j);

/// Room type name, or "Bedroom" for the bedroom cluster.
RoomSelector selector_from_string(const std::string& name);
std::string to_string(const RoomSelector& s);

}  // namespace floorgraph
