#include "floorgraph/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "floorgraph/compose.hpp"
#include "floorgraph/retrieval.hpp"
#include "floorgraph/serialization.hpp"
#include "floorgraph/transfer.hpp"

namespace floorgraph {

double iou(const RoomBox& a, const RoomBox& b) {
  const double inter = overlap_area(a.rect(), b.rect());
  const double uni = std::max(0.0, a.area()) + std::max(0.0, b.area()) - inter;
  return uni > 0 ? inter / uni : 0.0;
}

double iou(const Mask& a, const Mask& b) {
  std::size_t inter = 0, uni = 0;
  for (std::size_t i = 0; i < a.cells().size(); ++i) {
    const bool x = a.cells()[i] != 0, y = b.cells()[i] != 0;
    inter += x && y;
    uni += x || y;
  }
  return uni > 0 ? static_cast<double>(inter) / static_cast<double>(uni) : 0.0;
}

double iou(const std::vector<Ring>& a, const std::vector<Ring>& b, int resolution) {
  return iou(rasterize_rings(a, resolution, resolution), rasterize_rings(b, resolution, resolution));
}

Mask box_mask(const RoomBox& box, const Mask& inside) {
  Mask m(inside.width(), inside.height(), 0);
  const PixelRegion r = pixel_region(box, inside.width());
  for (int y = r.y0; y < r.y1; ++y)
    for (int x = r.x0; x < r.x1; ++x) m.at(x, y) = inside.at(x, y);
  return m;
}

std::vector<std::size_t> held_out_indices(std::size_t n, double test_fraction, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  if (test_fraction >= 1.0) return idx;
  std::mt19937_64 rng(seed);
  std::shuffle(idx.begin(), idx.end(), rng);
  const auto keep = static_cast<std::size_t>(std::ceil(static_cast<double>(n) * std::max(0.0, test_fraction)));
  idx.resize(std::min(keep, n));
  std::sort(idx.begin(), idx.end());
  return idx;
}

namespace {

RecordReport score_record(const FloorplanRecord& target, const LayoutGraph& g, const std::vector<RoomBox>& priors,
                          bool reference_is_gt, const PipelineConfig& pcfg) {
  const GenerateResult gen = generate_floorplan(g, target.boundary, priors, pcfg);
  const Mask inside = rasterize_boundary(target.boundary).inside;
  RecordReport rr;
  rr.id = target.id;
  rr.timings = gen.timings;
  rr.final_loss = gen.trace.empty() ? 0.0 : gen.trace.back().total;

  double pre = 0, post = 0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const int id = g.nodes[i].id;
    const RoomBox* ref = reference_is_gt ? find_box(target.gt_boxes, id) : find_box(gen.priors, id);
    const Mask ref_mask = box_mask(*ref, inside);
    pre += iou(box_mask(gen.solved[i], inside), ref_mask);
    Mask room(inside.width(), inside.height(), 0);
    for (std::size_t p = 0; p < room.cells().size(); ++p) room.cells()[p] = gen.raster.labels.cells()[p] == id;
    post += iou(room, ref_mask);
  }
  rr.pre_iou = pre / static_cast<double>(g.nodes.size());
  rr.post_iou = post / static_cast<double>(g.nodes.size());

  std::size_t interior = 0, labeled = 0, overlapped = 0;
  Grid<int> claims(inside.width(), inside.height(), 0);
  for (const RoomBox& b : gen.solved) {
    const PixelRegion r = pixel_region(b, inside.width());
    for (int y = r.y0; y < r.y1; ++y)
      for (int x = r.x0; x < r.x1; ++x) ++claims.at(x, y);
  }
  for (int y = 0; y < inside.height(); ++y) {
    for (int x = 0; x < inside.width(); ++x) {
      if (!inside.at(x, y)) continue;
      ++interior;
      labeled += gen.raster.labels.at(x, y) >= 0;
      overlapped += claims.at(x, y) >= 2;
    }
  }
  rr.coverage = interior ? static_cast<double>(labeled) / static_cast<double>(interior) : 0.0;
  rr.overlap = interior ? static_cast<double>(overlapped) / static_cast<double>(interior) : 0.0;
  return rr;
}

}  // namespace

EvalReport evaluate_corpus(const Corpus& corpus, const EvalConfig& cfg) {
  EvalReport report;
  std::vector<std::size_t> test = held_out_indices(corpus.size(), cfg.test_fraction, cfg.seed);
  if (cfg.limit > 0 && test.size() > cfg.limit) test.resize(cfg.limit);

  for (std::size_t idx : test) {
    const FloorplanRecord& rec = corpus[idx];
    RecordReport rr;
    switch (cfg.mode) {
      case EvalMode::Identity: {
        PipelineConfig p = cfg.pipeline;
        p.run_solver = false;
        p.run_alignment = false;
        rr = score_record(rec, rec.graph, rec.gt_boxes, true, p);
        break;
      }
      case EvalMode::SelfReconstruction:
        rr = score_record(rec, rec.graph, rec.gt_boxes, true, cfg.pipeline);
        break;
      case EvalMode::CrossReconstruction: {
        const auto ranked = retrieve(corpus, rec.boundary, {}, 2);
        const FloorplanRecord* source = nullptr;
        for (const RankedCandidate& c : ranked) {
          if (c.record->id != rec.id) {
            source = c.record;
            break;
          }
        }
        if (!source) continue;
        const TransferResult t = transfer_record(*source, rec.boundary);
        rr = score_record(rec, t.graph, t.priors, false, cfg.pipeline);
        rr.source_id = source->id;
        break;
      }
    }
    report.records.push_back(rr);
  }

  const double n = static_cast<double>(report.records.size());
  if (n > 0) {
    for (const RecordReport& r : report.records) {
      report.mean_pre_iou += r.pre_iou / n;
      report.mean_post_iou += r.post_iou / n;
      report.mean_coverage += r.coverage / n;
      report.mean_overlap += r.overlap / n;
      report.mean_total_ms += (r.timings.solve_ms + r.timings.compose_ms + r.timings.vectorize_ms) / n;
    }
  }
  return report;
}

std::vector<AblationSetting> ablation_settings() {
  return {
      {"match", {0, 0, 0, 1}},
      {"match+coverage", {1, 0, 0, 1}},
      {"match+interior", {0, 1, 0, 1}},
      {"match+mutex", {0, 0, 1, 1}},
      {"all", {1, 1, 1, 1}},
  };
}

std::vector<AblationRow> run_ablation(const Corpus& corpus, const EvalConfig& cfg) {
  std::vector<AblationRow> rows;
  for (const AblationSetting& s : ablation_settings()) {
    EvalConfig c = cfg;
    c.pipeline.solver.weights = s.weights;
    rows.push_back({s, evaluate_corpus(corpus, c)});
  }
  return rows;
}

std::string report_json(const EvalReport& r) {
  Json records = Json::array();
  for (const RecordReport& rr : r.records) {
    records.push_back({{"id", rr.id},
                       {"source_id", rr.source_id},
                       {"pre_iou", rr.pre_iou},
                       {"post_iou", rr.post_iou},
                       {"coverage", rr.coverage},
                       {"overlap", rr.overlap},
                       {"final_loss", rr.final_loss},
                       {"solve_ms", rr.timings.solve_ms},
                       {"compose_ms", rr.timings.compose_ms},
                       {"vectorize_ms", rr.timings.vectorize_ms}});
  }
  const Json j = {{"records", records},
                  {"count", r.records.size()},
                  {"mean_pre_iou", r.mean_pre_iou},
                  {"mean_post_iou", r.mean_post_iou},
                  {"mean_coverage", r.mean_coverage},
                  {"mean_overlap", r.mean_overlap},
                  {"mean_total_ms", r.mean_total_ms}};
  return j.dump(2);
}

std::string report_csv(const EvalReport& r) {
  std::ostringstream os;
  os << "id,source_id,pre_iou,post_iou,coverage,overlap,final_loss,solve_ms,compose_ms,vectorize_ms\n";
  for (const RecordReport& rr : r.records) {
    os << rr.id << ',' << rr.source_id << ',' << rr.pre_iou << ',' << rr.post_iou << ',' << rr.coverage << ','
       << rr.overlap << ',' << rr.final_loss << ',' << rr.timings.solve_ms << ',' << rr.timings.compose_ms << ','
       << rr.timings.vectorize_ms << '\n';
  }
  return os.str();
}

}  // namespace floorgraph
