#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "floorgraph/geometry.hpp"
#include "floorgraph/layout_graph.hpp"
#include "floorgraph/room_box.hpp"

namespace floorgraph {

/// One template plan: boundary, layout graph and the room boxes it was
/// extracted from. gt_boxes[i].room_id == graph.nodes[i].id.
struct FloorplanRecord {
  int id = 0;
  Boundary boundary;
  LayoutGraph graph;
  std::vector<RoomBox> gt_boxes;
  TurningFunction turning;

  /// Throws Error(InvalidGraph) when the record breaks its invariants.
  void validate() const;

  friend bool operator==(const FloorplanRecord&, const FloorplanRecord&) = default;
};

using Corpus = std::vector<FloorplanRecord>;

/// Annotated raster plan with four 8-bit channels per pixel.
///
///   channel 0: inside mask (non-zero = inside the building)
///   channel 1: boundary (0 = none, 127 = exterior wall, 255 = front door)
///   channel 2: pixel label (0..12 room types, 13 exterior, 14 exterior wall,
///              15 front door, 16 interior wall, 17 interior door)
///   channel 3: room instance index (0 = no room)
struct LabelImage {
  int width = 0;
  int height = 0;
  std::vector<std::array<std::uint8_t, 4>> pixels;

  LabelImage() = default;
  LabelImage(int w, int h) : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, {0, 0, 0, 0}) {}

  std::array<std::uint8_t, 4>& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
  const std::array<std::uint8_t, 4>& at(int x, int y) const {
    return pixels[static_cast<std::size_t>(y) * width + x];
  }
};

inline constexpr std::uint8_t kFrontDoorMark = 255;
inline constexpr std::uint8_t kExteriorWallMark = 127;
inline constexpr std::uint8_t kLabelExterior = 13;
inline constexpr std::uint8_t kLabelExteriorWall = 14;
inline constexpr std::uint8_t kLabelFrontDoor = 15;
inline constexpr std::uint8_t kLabelInteriorWall = 16;
inline constexpr std::uint8_t kLabelInteriorDoor = 17;

struct ExtractionConfig {
  /// Proximity adjacency: gap <= max(min_gap_px, gap_fraction * shorter side
  /// of the smaller room's box).
  double min_gap_px = 3.0;
  double gap_fraction = 0.10;
  /// One box holding at least this fraction of the other gives Inside/Outside.
  double containment = 0.95;
  /// Seeds the per-edge direction sampling.
  std::uint64_t seed = 0;
  /// Snap threshold used to regularize imported boxes.
  double tau = 6.0;
};

/// Gap between two boxes whose projections overlap on one axis; nullopt
/// when they only meet diagonally (no facing walls).
std::optional<double> facing_gap(const Rect& a, const Rect& b);

/// Relation of room a (src) relative to room b (dst) from their boxes.
RelationType relation_between(const RoomBox& a, const RoomBox& b, double containment);

/// Adjacency edges from doors and proximity. `record.graph.nodes` and
/// `record.gt_boxes` must already be filled; existing edges are ignored.
LayoutGraph extract_layout_graph(const FloorplanRecord& record,
                                 const std::vector<Segment>& door_segments,
                                 const ExtractionConfig& cfg = {});

/// Builds a record from a 4-channel annotated raster. Throws Error(Format).
FloorplanRecord import_raster_floorplan(const LabelImage& image, int record_id,
                                        const ExtractionConfig& cfg = {});

/// Deterministic synthetic corpus of gap-free rectilinear plans.
Corpus generate_synthetic_corpus(std::size_t n, std::uint64_t seed);

/// Versioned JSON lines, one record per line.
inline constexpr int kCorpusFormatVersion = 1;
void save_corpus(const Corpus& records, std::ostream& out);
Corpus load_corpus(std::istream& in);
void save_corpus(const Corpus& records, const std::filesystem::path& path);
Corpus load_corpus(const std::filesystem::path& path);

}  // namespace floorgraph
