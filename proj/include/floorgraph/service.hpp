#pragma once

// Design sessions behind the HTTP API and the CLI.
//
// Every request and response body is JSON. Failures surface as Error; the
// HTTP layer maps Error::code() to a status and a structured body
// {"error": {"code": ..., "message": ...}}.

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include "floorgraph/corpus.hpp"
#include "floorgraph/error.hpp"
#include "floorgraph/pipeline.hpp"
#include "floorgraph/retrieval.hpp"
#include "floorgraph/serialization.hpp"

namespace floorgraph {

struct DesignSession {
  std::string id;
  Boundary boundary;
  Constraints constraints;
  std::vector<int> candidates;
  std::optional<int> source_record;
  LayoutGraph working_graph;
  /// Transferred prior boxes keyed by node id.
  std::vector<RoomBox> priors;
  std::optional<VectorFloorplan> last_result;
};

class DesignService {
 public:
  explicit DesignService(std::shared_ptr<const Corpus> corpus, PipelineConfig cfg = {});

  /// {"boundary": {...}} -> {"session": id, "boundary": {...}}
  Json create_session(const Json& body);
  Json get_session(const std::string& id) const;
  void delete_session(const std::string& id);

  /// {"constraints": {...}, "k": 5} -> {"candidates": [...]}
  Json retrieve(const std::string& id, const Json& body);
  /// {"record_id": n} -> {"graph": {...}, "rotation": k, "priors": [...]}
  Json transfer(const std::string& id, const Json& body);
  /// {"op": "move_node", ...} -> {"graph": {...}}; the session is unchanged on error.
  Json edit(const std::string& id, const Json& body);
  /// {} or {"solver": {...}} -> floorplan JSON, SVG, loss trace and timings.
  Json generate(const std::string& id, const Json& body);
  /// "svg" or "json" rendering of the last generated plan.
  std::string export_plan(const std::string& id, const std::string& format) const;

  std::size_t session_count() const;
  void save_snapshot(const std::filesystem::path& path) const;
  void load_snapshot(const std::filesystem::path& path);

  const Corpus& corpus() const { return *corpus_; }

 private:
  struct Slot {
    mutable std::mutex mu;
    DesignSession state;
  };

  std::shared_ptr<Slot> find(const std::string& id) const;
  const FloorplanRecord& record(int id) const;

  std::shared_ptr<const Corpus> corpus_;
  std::map<int, const FloorplanRecord*> by_id_;
  PipelineConfig cfg_;
  mutable std::shared_mutex sessions_mu_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
  std::uint64_t next_session_ = 1;
};

/// HTTP status for an error code (4xx for caller mistakes, 5xx otherwise).
int http_status(ErrorCode code);
Json error_body(const Error& e);

}  // namespace floorgraph
