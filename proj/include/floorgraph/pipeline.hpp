#pragma once

#include <vector>

#include "floorgraph/compose.hpp"
#include "floorgraph/corpus.hpp"
#include "floorgraph/geometry.hpp"
#include "floorgraph/layout_graph.hpp"
#include "floorgraph/room_box.hpp"
#include "floorgraph/solver.hpp"
#include "floorgraph/vectorize.hpp"

namespace floorgraph {

struct PipelineConfig {
  SolverConfig solver;
  AlignConfig align;
  OpeningConfig openings;
  /// When false the priors are used as the solved boxes.
  bool run_solver = true;
  /// When false the solved boxes go to composition without snapping.
  bool run_alignment = true;
};

/// A retrieved record moved into a target boundary.
struct TransferResult {
  int rotation = 0;
  LayoutGraph graph;
  std::vector<RoomBox> priors;
};

/// align_rotation, transfer_nodes, adjust_node_positions and transfer_priors.
TransferResult transfer_record(const FloorplanRecord& source, const Boundary& target);

struct StageTimings {
  double solve_ms = 0.0;
  double compose_ms = 0.0;
  double vectorize_ms = 0.0;
};

struct GenerateResult {
  std::vector<RoomBox> priors;   // one per node, after priors_for_graph
  std::vector<RoomBox> solved;   // solver output
  std::vector<RoomBox> aligned;  // after boundary and adjacency snapping
  std::vector<int> order;        // drawing order, first drawn first
  FloorplanRaster raster;
  VectorFloorplan plan;
  std::vector<LossBreakdown> trace;
  StageTimings timings;
};

/// Solve, align, order, resolve, polygonize and place openings.
/// Throws Error(InvalidGraph) for an empty or invalid graph.
GenerateResult generate_floorplan(const LayoutGraph& g, const Boundary& b, const std::vector<RoomBox>& priors,
                                  const PipelineConfig& cfg = {});

}  // namespace floorgraph
