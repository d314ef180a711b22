#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "floorgraph/corpus.hpp"
#include "floorgraph/geometry.hpp"
#include "floorgraph/pipeline.hpp"
#include "floorgraph/room_box.hpp"

namespace floorgraph {

/// Exact rectangle IoU; 0 when both boxes are empty.
double iou(const RoomBox& a, const RoomBox& b);
/// Pixel IoU of two masks of equal size; 0 when both are empty.
double iou(const Mask& a, const Mask& b);
/// Pixel IoU of two ring sets rasterized at `resolution`.
double iou(const std::vector<Ring>& a, const std::vector<Ring>& b, int resolution);

/// Pixels whose centers lie strictly inside the box and inside `inside`.
Mask box_mask(const RoomBox& box, const Mask& inside);

enum class EvalMode {
  /// gt boxes stand in for the solver output.
  Identity,
  /// Each record's own boundary, graph and gt boxes as priors.
  SelfReconstruction,
  /// Best other record retrieved for each boundary, transferred in; scored
  /// against the transferred priors.
  CrossReconstruction,
};

struct EvalConfig {
  PipelineConfig pipeline;
  EvalMode mode = EvalMode::SelfReconstruction;
  std::uint64_t seed = 0;
  /// Held-out share evaluated; 1.0 evaluates every record.
  double test_fraction = 0.15;
  /// Evaluate at most this many test records (0 = all).
  std::size_t limit = 0;
};

struct RecordReport {
  int id = 0;
  int source_id = -1;
  /// Mean over rooms of IoU(solved box clipped to the interior, reference region).
  double pre_iou = 0.0;
  /// Mean over rooms of IoU(final room pixels, reference region).
  double post_iou = 0.0;
  /// Share of interior pixels labeled by a room after resolution.
  double coverage = 0.0;
  /// Share of interior pixels claimed by two or more solved boxes.
  double overlap = 0.0;
  double final_loss = 0.0;
  StageTimings timings;
};

struct EvalReport {
  std::vector<RecordReport> records;
  double mean_pre_iou = 0.0;
  double mean_post_iou = 0.0;
  double mean_coverage = 0.0;
  double mean_overlap = 0.0;
  double mean_total_ms = 0.0;
};

/// Deterministic 85/15-style split: returns the indices of the held-out part.
std::vector<std::size_t> held_out_indices(std::size_t n, double test_fraction, std::uint64_t seed);

EvalReport evaluate_corpus(const Corpus& corpus, const EvalConfig& cfg);

/// Objective ablations, one per loss-term combination.
struct AblationSetting {
  std::string name;
  LossWeights weights;
};
std::vector<AblationSetting> ablation_settings();

struct AblationRow {
  AblationSetting setting;
  EvalReport report;
};
std::vector<AblationRow> run_ablation(const Corpus& corpus, const EvalConfig& cfg);

std::string report_json(const EvalReport& r);
std::string report_csv(const EvalReport& r);

}  // namespace floorgraph
