// Command-line front end: build corpora, query them, generate plans,
// evaluate the pipeline and serve the HTTP API.

#include <CLI11.hpp>

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "floorgraph/corpus.hpp"
#include "floorgraph/error.hpp"
#include "floorgraph/evaluate.hpp"
#include "floorgraph/http_server.hpp"
#include "floorgraph/pipeline.hpp"
#include "floorgraph/png_io.hpp"
#include "floorgraph/retrieval.hpp"
#include "floorgraph/serialization.hpp"
#include "floorgraph/service.hpp"

namespace fg = floorgraph;
using fg::Json;

namespace {

struct Settings {
  fg::PipelineConfig pipeline;
  fg::ExtractionConfig extraction;
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw fg::Error(fg::ErrorCode::Io, "cannot open " + path);
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded()) throw fg::Error(fg::ErrorCode::Format, path + " is not valid JSON");
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw fg::Error(fg::ErrorCode::Io, "cannot write " + path);
  out << text;
}

// --config file: {"pipeline": {...}, "solver": {...}, "align": {...}, "openings": {...}, "extraction": {...}}
Settings load_settings(const std::string& path, std::uint64_t seed) {
  Settings s;
  s.pipeline.solver.seed = seed;
  s.extraction.seed = seed;
  if (path.empty()) return s;
  const Json j = read_json_file(path);
  try {
    if (j.contains("solver")) s.pipeline.solver = fg::solver_config_from_json(j.at("solver"), s.pipeline.solver);
    if (j.contains("pipeline")) {
      const Json& p = j.at("pipeline");
      s.pipeline.run_solver = p.value("run_solver", s.pipeline.run_solver);
      s.pipeline.run_alignment = p.value("run_alignment", s.pipeline.run_alignment);
    }
    if (j.contains("align")) {
      const Json& a = j.at("align");
      s.pipeline.align.tau = a.value("tau", s.pipeline.align.tau);
      s.pipeline.align.min_box_side = a.value("min_box_side", s.pipeline.align.min_box_side);
    }
    if (j.contains("openings")) {
      const Json& o = j.at("openings");
      s.pipeline.openings.door_width = o.value("door_width", s.pipeline.openings.door_width);
      s.pipeline.openings.window_min_segment = o.value("window_min_segment", s.pipeline.openings.window_min_segment);
      s.pipeline.openings.window_max_length = o.value("window_max_length", s.pipeline.openings.window_max_length);
    }
    if (j.contains("extraction")) {
      const Json& e = j.at("extraction");
      s.extraction.min_gap_px = e.value("min_gap_px", s.extraction.min_gap_px);
      s.extraction.gap_fraction = e.value("gap_fraction", s.extraction.gap_fraction);
      s.extraction.containment = e.value("containment", s.extraction.containment);
      s.extraction.tau = e.value("tau", s.extraction.tau);
    }
  } catch (const nlohmann::json::exception& e) {
    throw fg::Error(fg::ErrorCode::Format, "config: " + std::string(e.what()));
  }
  return s;
}

fg::Corpus load_corpus_arg(const std::string& path) {
  std::string p = path;
  if (p.empty()) {
    const char* env = std::getenv("FLOORGRAPH_CORPUS");
    if (!env) throw fg::Error(fg::ErrorCode::InvalidArgument, "no corpus given (--corpus or FLOORGRAPH_CORPUS)");
    p = env;
  }
  return fg::load_corpus(std::filesystem::path(p));
}

fg::Constraints load_constraints(const std::string& path) {
  if (path.empty()) return {};
  fg::Constraints c = fg::constraints_from_json(read_json_file(path));
  c.validate();
  return c;
}

fg::HttpServer* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"floorplan generation from boundaries and layout graphs"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = 0;
  std::string config_path;
  app.add_option("--seed", seed, "random seed")->capture_default_str();
  app.add_option("--config", config_path, "JSON configuration file")->check(CLI::ExistingFile);

  auto* synth = app.add_subcommand("synth", "generate a synthetic corpus");
  std::size_t synth_n = 1000;
  std::string synth_out;
  synth->add_option("--n", synth_n, "number of records")->capture_default_str();
  synth->add_option("-o,--output", synth_out, "corpus file (JSON lines)")->required();

  auto* ingest = app.add_subcommand("ingest", "import annotated 4-channel PNG plans");
  std::vector<std::string> ingest_files;
  std::string ingest_out;
  int ingest_first_id = 0;
  bool ingest_skip_bad = false;
  ingest->add_option("images", ingest_files, "PNG files")->required()->check(CLI::ExistingFile);
  ingest->add_option("-o,--output", ingest_out, "corpus file (JSON lines)")->required();
  ingest->add_option("--first-id", ingest_first_id, "id of the first record")->capture_default_str();
  ingest->add_flag("--skip-invalid", ingest_skip_bad, "skip images that fail to import");

  auto* retrieve = app.add_subcommand("retrieve", "rank corpus records against a boundary");
  std::string corpus_path, boundary_path, constraints_path;
  std::size_t k = 5;
  retrieve->add_option("--corpus", corpus_path, "corpus file (default: $FLOORGRAPH_CORPUS)");
  retrieve->add_option("--boundary", boundary_path, "boundary JSON")->required()->check(CLI::ExistingFile);
  retrieve->add_option("--constraints", constraints_path, "constraints JSON")->check(CLI::ExistingFile);
  retrieve->add_option("-k", k, "number of candidates")->capture_default_str();

  auto* generate = app.add_subcommand("generate", "generate a vector floorplan for a boundary");
  std::string out_prefix;
  int record_id = -1;
  generate->add_option("--corpus", corpus_path, "corpus file (default: $FLOORGRAPH_CORPUS)");
  generate->add_option("--boundary", boundary_path, "boundary JSON")->required()->check(CLI::ExistingFile);
  generate->add_option("--constraints", constraints_path, "constraints JSON")->check(CLI::ExistingFile);
  generate->add_option("--record", record_id, "use this record instead of the best match");
  generate->add_option("-o,--output", out_prefix, "output prefix; writes <prefix>.svg and <prefix>.json")->required();

  auto* eval = app.add_subcommand("eval", "evaluate the pipeline on a corpus");
  std::string mode = "self", report_path, csv_path;
  double fraction = 0.15;
  std::size_t limit = 0;
  bool ablation = false;
  eval->add_option("--corpus", corpus_path, "corpus file (default: $FLOORGRAPH_CORPUS)");
  eval->add_option("--mode", mode, "identity, self or cross")
      ->check(CLI::IsMember({"identity", "self", "cross"}))
      ->capture_default_str();
  eval->add_option("--fraction", fraction, "held-out share of the corpus")->capture_default_str();
  eval->add_option("--limit", limit, "evaluate at most this many records (0 = all)");
  eval->add_flag("--ablation", ablation, "run every loss-term setting");
  eval->add_option("--report", report_path, "JSON report path (default: stdout)");
  eval->add_option("--csv", csv_path, "CSV report path");

  auto* serve = app.add_subcommand("serve", "serve the HTTP API");
  std::string host = "127.0.0.1", snapshot;
  int port = 8080;
  serve->add_option("--corpus", corpus_path, "corpus file (default: $FLOORGRAPH_CORPUS)");
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--port", port)->capture_default_str();
  serve->add_option("--snapshot", snapshot, "session snapshot loaded at start and saved on exit");

  CLI11_PARSE(app, argc, argv);

  try {
    const Settings settings = load_settings(config_path, seed);

    if (*synth) {
      fg::save_corpus(fg::generate_synthetic_corpus(synth_n, seed), std::filesystem::path(synth_out));
      std::cerr << "wrote " << synth_n << " records to " << synth_out << '\n';
    } else if (*ingest) {
      fg::Corpus corpus;
      int id = ingest_first_id;
      for (const std::string& file : ingest_files) {
        try {
          corpus.push_back(fg::import_raster_floorplan(fg::read_label_png(file), id, settings.extraction));
          ++id;
        } catch (const fg::Error& e) {
          if (!ingest_skip_bad) throw;
          std::cerr << "skipped " << file << ": " << e.what() << '\n';
        }
      }
      fg::save_corpus(corpus, std::filesystem::path(ingest_out));
      std::cerr << "wrote " << corpus.size() << " records to " << ingest_out << '\n';
    } else if (*retrieve) {
      const fg::Corpus corpus = load_corpus_arg(corpus_path);
      const fg::Boundary b = fg::boundary_from_json(read_json_file(boundary_path));
      Json out = Json::array();
      for (const fg::RankedCandidate& c : fg::retrieve(corpus, b, load_constraints(constraints_path), k)) {
        out.push_back({{"record_id", c.record->id}, {"distance", c.distance}, {"graph", fg::to_json(c.record->graph)}});
      }
      std::cout << out.dump(2) << '\n';
    } else if (*generate) {
      const fg::Corpus corpus = load_corpus_arg(corpus_path);
      const fg::Boundary b = fg::boundary_from_json(read_json_file(boundary_path));
      const fg::FloorplanRecord* source = nullptr;
      if (record_id >= 0) {
        for (const fg::FloorplanRecord& r : corpus)
          if (r.id == record_id) source = &r;
        if (!source) throw fg::Error(fg::ErrorCode::UnknownRecord, "no record " + std::to_string(record_id));
      } else {
        const auto ranked = fg::retrieve(corpus, b, load_constraints(constraints_path), 1);
        if (ranked.empty()) throw fg::Error(fg::ErrorCode::InvalidArgument, "no record satisfies the constraints");
        source = ranked.front().record;
      }
      const fg::TransferResult t = fg::transfer_record(*source, b);
      const fg::GenerateResult gen = fg::generate_floorplan(t.graph, b, t.priors, settings.pipeline);
      write_text(out_prefix + ".svg", fg::export_floorplan(gen.plan, fg::ExportFormat::Svg));
      write_text(out_prefix + ".json", fg::export_floorplan(gen.plan, fg::ExportFormat::Json));
      std::cerr << "record " << source->id << ", " << gen.plan.rooms.size() << " rooms, "
                << gen.timings.solve_ms + gen.timings.compose_ms + gen.timings.vectorize_ms << " ms\n";
    } else if (*eval) {
      const fg::Corpus corpus = load_corpus_arg(corpus_path);
      fg::EvalConfig cfg;
      cfg.pipeline = settings.pipeline;
      cfg.mode = mode == "identity" ? fg::EvalMode::Identity
                 : mode == "cross"  ? fg::EvalMode::CrossReconstruction
                                    : fg::EvalMode::SelfReconstruction;
      cfg.seed = seed;
      cfg.test_fraction = fraction;
      cfg.limit = limit;
      std::string text;
      std::string csv;
      if (ablation) {
        Json rows = Json::array();
        for (const fg::AblationRow& row : fg::run_ablation(corpus, cfg)) {
          Json r = Json::parse(fg::report_json(row.report));
          r.erase("records");
          r["setting"] = row.setting.name;
          rows.push_back(r);
          std::istringstream lines(fg::report_csv(row.report));
          std::string line;
          std::getline(lines, line);
          if (csv.empty()) csv = "setting," + line + '\n';
          while (std::getline(lines, line)) csv += row.setting.name + ',' + line + '\n';
        }
        text = rows.dump(2);
      } else {
        const fg::EvalReport report = fg::evaluate_corpus(corpus, cfg);
        text = fg::report_json(report);
        csv = fg::report_csv(report);
      }
      if (report_path.empty()) std::cout << text << '\n';
      else write_text(report_path, text + '\n');
      if (!csv_path.empty()) write_text(csv_path, csv);
    } else if (*serve) {
      auto corpus = std::make_shared<const fg::Corpus>(load_corpus_arg(corpus_path));
      fg::DesignService service(corpus, settings.pipeline);
      if (!snapshot.empty() && std::filesystem::exists(snapshot)) service.load_snapshot(snapshot);
      fg::HttpServer server(service);
      g_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cerr << "serving " << corpus->size() << " records on http://" << host << ':' << port << "/api/v1\n";
      const bool ok = server.listen(host, port);
      g_server = nullptr;
      if (!snapshot.empty()) service.save_snapshot(snapshot);
      if (!ok) throw fg::Error(fg::ErrorCode::Io, "cannot listen on " + host + ':' + std::to_string(port));
    }
  } catch (const fg::Error& e) {
    std::cerr << "error (" << fg::to_string(e.code()) << "): " << e.what() << '\n';
    return e.code() == fg::ErrorCode::Io ? 3 : 2;
  }
  return 0;
}
