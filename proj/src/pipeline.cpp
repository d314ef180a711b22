#include "floorgraph/pipeline.hpp"

#include <chrono>

#include "floorgraph/error.hpp"
#include "floorgraph/transfer.hpp"

namespace floorgraph {

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

TransferResult transfer_record(const FloorplanRecord& source, const Boundary& target) {
  TransferResult out;
  out.rotation = align_rotation(source.boundary, target);
  out.graph = adjust_node_positions(transfer_nodes(source.graph, out.rotation), target);
  out.priors = transfer_priors(source, out.rotation, target);
  return out;
}

GenerateResult generate_floorplan(const LayoutGraph& g, const Boundary& b, const std::vector<RoomBox>& priors,
                                  const PipelineConfig& cfg) {
  g.validate();
  if (g.nodes.empty()) throw Error(ErrorCode::InvalidGraph, "cannot generate a plan from an empty graph");
  GenerateResult out;

  auto t0 = std::chrono::steady_clock::now();
  out.priors = priors_for_graph(g, priors, b);
  if (cfg.run_solver) {
    SolverConfig solver_cfg = cfg.solver;
    solver_cfg.grid_resolution = b.resolution();
    SolveResult solved = solve(g, b, out.priors, solver_cfg);
    out.solved = std::move(solved.boxes);
    out.trace = std::move(solved.trace);
  } else {
    out.solved = out.priors;
  }
  out.timings.solve_ms = ms_since(t0);

  t0 = std::chrono::steady_clock::now();
  out.aligned = cfg.run_alignment ? align_rooms(out.solved, g, b, cfg.align) : out.solved;
  const Mask inside = rasterize_boundary(b).inside;
  const FloorplanRaster reference = reference_raster(out.priors, inside);
  out.order = drawing_order(build_order_graph(out.aligned, reference));
  out.raster = resolve(out.aligned, out.order, b);
  out.timings.compose_ms = ms_since(t0);

  t0 = std::chrono::steady_clock::now();
  out.plan = place_doors_windows(clip_and_polygonize(out.raster, g, b), g, cfg.openings);
  out.timings.vectorize_ms = ms_since(t0);
  return out;
}

}  // namespace floorgraph
