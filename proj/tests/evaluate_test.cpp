#include <doctest.h>

#include <set>
#include <sstream>

#include "floorgraph/evaluate.hpp"
#include "floorgraph/serialization.hpp"
#include "support.hpp"

using namespace floorgraph;

TEST_CASE("box IoU") {
  const RoomBox a = RoomBox::from_edges(0, 0, 2, 2, 0);
  const RoomBox b = RoomBox::from_edges(1, 0, 3, 2, 1);
  CHECK(iou(a, b) == doctest::Approx(1.0 / 3.0));
  CHECK(iou(b, a) == iou(a, b));
  CHECK(iou(a, a) == 1.0);
  CHECK(iou(a, RoomBox::from_edges(5, 5, 6, 6, 2)) == 0.0);
  CHECK(iou(RoomBox{}, RoomBox{}) == 0.0);
}

TEST_CASE("mask and ring IoU") {
  Mask a(8, 8, 0), b(8, 8, 0);
  for (int x = 0; x < 4; ++x) a.at(x, 0) = 1;
  for (int x = 2; x < 6; ++x) b.at(x, 0) = 1;
  CHECK(iou(a, b) == doctest::Approx(2.0 / 6.0));
  CHECK(iou(b, a) == iou(a, b));
  CHECK(iou(Mask(8, 8, 0), Mask(8, 8, 0)) == 0.0);

  const Ring sq = {{0, 0}, {4, 0}, {4, 4}, {0, 4}};
  const Ring half = {{2, 0}, {6, 0}, {6, 4}, {2, 4}};
  CHECK(iou({sq}, {half}, 16) == doctest::Approx(1.0 / 3.0));

  const Mask inside(16, 16, 1);
  const Mask m = box_mask(RoomBox::from_edges(1.2, 2, 4, 3, 0), inside);
  CHECK(count_set(m) == 3);
  CHECK(m.at(1, 2));
  CHECK_FALSE(m.at(0, 2));
}

TEST_CASE("held-out split") {
  const auto a = held_out_indices(100, 0.15, 3);
  CHECK(a.size() == 15);
  CHECK(a == held_out_indices(100, 0.15, 3));
  CHECK(a != held_out_indices(100, 0.15, 4));
  CHECK(std::is_sorted(a.begin(), a.end()));
  CHECK(std::set<std::size_t>(a.begin(), a.end()).size() == a.size());
  CHECK(a.back() < 100);
  CHECK(held_out_indices(10, 1.0, 0).size() == 10);
  CHECK(held_out_indices(10, 0.0, 0).empty());
}

TEST_CASE("identity evaluation scores perfectly") {
  const Corpus c = generate_synthetic_corpus(20, 2);
  EvalConfig cfg;
  cfg.mode = EvalMode::Identity;
  cfg.test_fraction = 1.0;
  const EvalReport r = evaluate_corpus(c, cfg);
  REQUIRE(r.records.size() == 20);
  CHECK(r.mean_pre_iou == doctest::Approx(1.0));
  CHECK(r.mean_coverage == doctest::Approx(1.0));
  for (const RecordReport& rr : r.records) CHECK(rr.pre_iou == doctest::Approx(1.0));
}

TEST_CASE("evaluation is deterministic and bounded") {
  const Corpus c = generate_synthetic_corpus(30, 8);
  for (EvalMode mode : {EvalMode::SelfReconstruction, EvalMode::CrossReconstruction}) {
    EvalConfig cfg;
    cfg.mode = mode;
    cfg.test_fraction = 0.3;
    cfg.seed = 1;
    const EvalReport a = evaluate_corpus(c, cfg);
    const EvalReport b = evaluate_corpus(c, cfg);
    REQUIRE(a.records.size() == 9);
    for (std::size_t i = 0; i < a.records.size(); ++i) {
      CHECK(a.records[i].id == b.records[i].id);
      CHECK(a.records[i].pre_iou == b.records[i].pre_iou);
      CHECK(a.records[i].post_iou == b.records[i].post_iou);
      CHECK(a.records[i].pre_iou >= 0.0);
      CHECK(a.records[i].post_iou <= 1.0);
      CHECK(a.records[i].coverage == doctest::Approx(1.0));
      if (mode == EvalMode::CrossReconstruction) CHECK(a.records[i].source_id != a.records[i].id);
      else CHECK(a.records[i].source_id == -1);
    }
    cfg.limit = 4;
    CHECK(evaluate_corpus(c, cfg).records.size() == 4);
  }
}

TEST_CASE("self reconstruction is close to the ground truth") {
  const Corpus c = generate_synthetic_corpus(40, 7);
  EvalConfig cfg;
  cfg.test_fraction = 1.0;
  const EvalReport r = evaluate_corpus(c, cfg);
  CHECK(r.mean_pre_iou >= 0.85);
  CHECK(r.mean_post_iou >= r.mean_pre_iou);
}

TEST_CASE("ablation settings") {
  const auto settings = ablation_settings();
  REQUIRE(settings.size() == 5);
  std::set<std::string> names;
  for (const AblationSetting& s : settings) {
    names.insert(s.name);
    CHECK(s.weights.match == 1.0);
  }
  CHECK(names.size() == 5);
  CHECK(settings.back().weights.coverage == 1.0);
  CHECK(settings.back().weights.interior == 1.0);
  CHECK(settings.back().weights.mutex == 1.0);

  const Corpus c = generate_synthetic_corpus(10, 5);
  EvalConfig cfg;
  cfg.test_fraction = 0.2;
  const auto rows = run_ablation(c, cfg);
  REQUIRE(rows.size() == 5);
  for (const AblationRow& row : rows) CHECK(row.report.records.size() == 2);
}

TEST_CASE("report formats") {
  const Corpus c = generate_synthetic_corpus(10, 5);
  EvalConfig cfg;
  cfg.test_fraction = 0.3;
  const EvalReport r = evaluate_corpus(c, cfg);
  const Json j = Json::parse(report_json(r));
  CHECK(j.at("count").get<std::size_t>() == r.records.size());
  CHECK(j.at("mean_pre_iou").get<double>() == doctest::Approx(r.mean_pre_iou));
  CHECK(j.at("records").size() == r.records.size());

  std::istringstream csv(report_csv(r));
  std::string line;
  std::getline(csv, line);
  CHECK(line.rfind("id,source_id,pre_iou,post_iou", 0) == 0);
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 9);
  }
  CHECK(rows == static_cast<int>(r.records.size()));
}
