#include "floorgraph/retrieval.hpp"

#include <algorithm>

#include "floorgraph/error.hpp"

namespace floorgraph {

void Constraints::validate() const {
  for (const CountConstraint& c : room_counts) {
    if (c.min < 0 || c.max < 0) throw Error(ErrorCode::InvalidArgument, "room count bounds must be non-negative");
    if (c.min > c.max) throw Error(ErrorCode::InvalidArgument, "room count min exceeds max");
  }
  for (const LocationConstraint& l : required_locations) {
    if (!l.cell.valid()) throw Error(ErrorCode::InvalidArgument, "required location outside the 5x5 grid");
  }
}

bool satisfies(const LayoutGraph& g, const Constraints& c) {
  for (const CountConstraint& cc : c.room_counts) {
    const auto n = std::count_if(g.nodes.begin(), g.nodes.end(),
                                 [&](const RoomNode& node) { return cc.room.matches(node.type); });
    if (n < cc.min || n > cc.max) return false;
  }
  for (const LocationConstraint& lc : c.required_locations) {
    const bool found = std::any_of(g.nodes.begin(), g.nodes.end(), [&](const RoomNode& node) {
      return lc.room.matches(node.type) && node.cell == lc.cell;
    });
    if (!found) return false;
  }
  for (const AdjacencyConstraint& ac : c.required_adjacencies) {
    const bool found = std::any_of(g.edges.begin(), g.edges.end(), [&](const GraphEdge& e) {
      const RoomType s = g.find_node(e.src)->type;
      const RoomType d = g.find_node(e.dst)->type;
      return (ac.a.matches(s) && ac.b.matches(d)) || (ac.a.matches(d) && ac.b.matches(s));
    });
    if (!found) return false;
  }
  return true;
}

std::vector<const FloorplanRecord*> filter(const Corpus& corpus, const Constraints& c) {
  std::vector<const FloorplanRecord*> out;
  out.reserve(corpus.size());
  const bool skip = c.empty();
  for (const FloorplanRecord& r : corpus) {
    if (skip || satisfies(r.graph, c)) out.push_back(&r);
  }
  return out;
}

namespace {

bool ranked_before(const RankedCandidate& a, const RankedCandidate& b) {
  if (a.distance != b.distance) return a.distance < b.distance;
  return a.record->id < b.record->id;
}

std::vector<RankedCandidate> score(const std::vector<const FloorplanRecord*>& candidates, const Boundary& query) {
  const TurningFunction tq = compute_turning_function(query);
  std::vector<RankedCandidate> out;
  out.reserve(candidates.size());
  for (const FloorplanRecord* r : candidates) out.push_back({r, turning_distance(tq, r->turning)});
  return out;
}

}  // namespace

std::vector<RankedCandidate> rank(const std::vector<const FloorplanRecord*>& candidates, const Boundary& query) {
  auto out = score(candidates, query);
  std::sort(out.begin(), out.end(), ranked_before);
  return out;
}

std::vector<RankedCandidate> retrieve(const Corpus& corpus, const Boundary& query, const Constraints& c,
                                      std::size_t k) {
  c.validate();
  if (k == 0) return {};
  auto out = score(filter(corpus, c), query);
  const std::size_t keep = std::min(k, out.size());
  std::partial_sort(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(keep), out.end(), ranked_before);
  out.resize(keep);
  return out;
}

}  // namespace floorgraph
