#pragma once

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "floorgraph/corpus.hpp"
#include "floorgraph/geometry.hpp"
#include "floorgraph/layout_graph.hpp"

namespace floorgraph {

/// A specific room type, or any bedroom kind (master, second, guest, child, study).
struct RoomSelector {
  RoomType type = RoomType::LivingRoom;
  bool any_bedroom = false;

  static RoomSelector of(RoomType t) { return {t, false}; }
  static RoomSelector bedroom() { return {RoomType::MasterRoom, true}; }

  bool matches(RoomType t) const { return any_bedroom ? is_bedroom(t) : t == type; }
  friend bool operator==(const RoomSelector&, const RoomSelector&) = default;
};

struct CountConstraint {
  RoomSelector room;
  int min = 0;
  int max = std::numeric_limits<int>::max();
};

struct LocationConstraint {
  RoomSelector room;
  GridCell cell;
};

struct AdjacencyConstraint {
  RoomSelector a;
  RoomSelector b;
};

struct Constraints {
  std::vector<CountConstraint> room_counts;
  std::vector<LocationConstraint> required_locations;
  std::vector<AdjacencyConstraint> required_adjacencies;

  bool empty() const {
    return room_counts.empty() && required_locations.empty() && required_adjacencies.empty();
  }
  /// Throws Error(InvalidArgument) on min > max, negative counts or cells off the grid.
  void validate() const;
};

bool satisfies(const LayoutGraph& g, const Constraints& c);

/// Records meeting every clause; empty constraints keep the whole corpus.
std::vector<const FloorplanRecord*> filter(const Corpus& corpus, const Constraints& c);

struct RankedCandidate {
  const FloorplanRecord* record = nullptr;
  double distance = 0.0;
};

/// Ascending turning distance to the query, ties by record id.
std::vector<RankedCandidate> rank(const std::vector<const FloorplanRecord*>& candidates, const Boundary& query);

/// filter, rank, keep the first k.
std::vector<RankedCandidate> retrieve(const Corpus& corpus, const Boundary& query, const Constraints& c,
                                      std::size_t k);

}  // namespace floorgraph
