// Copyright 2026 The Sketchguide Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sketchguide/control/branch.hpp"
#include "sketchguide/control/config.hpp"
#include "sketchguide/control/fusion.hpp"
#include "sketchguide/control/residual_io.hpp"
#include "sketchguide/dataset/annotations.hpp"
#include "sketchguide/dataset/builder.hpp"
#include "sketchguide/llm/gateway.hpp"
#include "sketchguide/llm/prompt.hpp"
#include "sketchguide/llm/tally.hpp"
#include "sketchguide/llm/transport.hpp"
#include "sketchguide/metrics/position_size.hpp"
#include "sketchguide/metrics/report.hpp"
#include "sketchguide/metrics/visor.hpp"
#include "sketchguide/numfmt.hpp"
#include "sketchguide/raster/components.hpp"
#include "sketchguide/raster/rasterize.hpp"
#include "sketchguide/tikz/parser.hpp"

namespace sketchguide::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string read_text(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw IoError("file not found: '" + path.string() + "'");
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open '" + path.string() + "'");
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot write '" + path.string() + "'");
  os << text;
  if (!os) throw IoError("failed writing '" + path.string() + "'");
}

nlohmann::json read_json_file(const fs::path& path) {
  try {
    return nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error("SchemaError", path.string() + ": " + e.what());
  }
}

void log_warnings(const std::vector<Diagnostic>& warnings) {
  for (const auto& w : warnings) {
    std::cerr << "warning: " << w.code;
    if (w.line > 0) std::cerr << " at " << w.line << ":" << w.column;
    std::cerr << ": " << w.message << '\n';
  }
}

ordered_json diag_json(const std::vector<Diagnostic>& ds) {
  auto arr = ordered_json::array();
  for (const auto& d : ds) {
    arr.push_back({{"code", d.code}, {"message", d.message}, {"line", d.line}, {"column", d.column}});
  }
  return arr;
}

ordered_json program_json(const tikz::SketchProgram& p) {
  ordered_json j;
  const auto& b = p.bounding_box;
  j["bounding_box"] = {b.min.x, b.min.y, b.max.x, b.max.y};
  j["bounding_box_defaulted"] = p.bounding_box_defaulted;
  auto cmds = ordered_json::array();
  for (std::size_t i = 0; i < p.commands.size(); ++i) {
    const auto& c = p.commands[i];
    ordered_json jc;
    jc["kind"] = tikz::to_string(c.kind);
    auto pts = ordered_json::array();
    for (const auto& pt : c.points) pts.push_back({pt.x, pt.y});
    jc["points"] = std::move(pts);
    if (c.kind == tikz::CommandKind::kFillCircle || c.kind == tikz::CommandKind::kStrokeCircle) {
      jc["radius"] = c.radius;
    }
    jc["stroke"] = c.style.stroke_color ? ordered_json(*c.style.stroke_color) : ordered_json(nullptr);
    jc["fill"] = c.style.fill_color ? ordered_json(*c.style.fill_color) : ordered_json(nullptr);
    jc["line_width_pt"] = c.style.line_width_pt;
    if (i < p.spans.size()) jc["span"] = {p.spans[i].line, p.spans[i].column};
    cmds.push_back(std::move(jc));
  }
  j["commands"] = std::move(cmds);
  j["warnings"] = diag_json(p.warnings);
  return j;
}

std::string program_summary(const tikz::SketchProgram& p) {
  std::ostringstream os;
  const auto& b = p.bounding_box;
  os << "bounding box (" << format_shortest(b.min.x) << "," << format_shortest(b.min.y) << ") ("
     << format_shortest(b.max.x) << "," << format_shortest(b.max.y) << ")"
     << (p.bounding_box_defaulted ? " [default]" : "") << '\n';
  os << p.commands.size() << " command" << (p.commands.size() == 1 ? "" : "s") << '\n';
  for (std::size_t i = 0; i < p.commands.size(); ++i) {
    os << "  " << (i + 1) << ". " << tikz::to_string(p.commands[i].kind);
    if (i < p.spans.size()) os << " @" << p.spans[i].line << ":" << p.spans[i].column;
    os << "  " << tikz::print_command(p.commands[i]) << '\n';
  }
  return os.str();
}

ordered_json components_json(const raster::ComponentSet& cs) {
  auto arr = ordered_json::array();
  for (const auto& c : cs.components) {
    arr.push_back({{"id", c.id},
                   {"area_px", c.area_px},
                   {"centroid_px", {c.centroid_x, c.centroid_y}},
                   {"bbox_px", {c.bbox.x, c.bbox.y, c.bbox.w, c.bbox.h}}});
  }
  return arr;
}

ordered_json matches_json(const std::vector<raster::Assignment>& as, const GroundingSet& g) {
  auto arr = ordered_json::array();
  for (const auto& a : as) {
    ordered_json j;
    j["name"] = g.entries[a.grounding_index].name;
    j["component_id"] = a.component_id ? ordered_json(*a.component_id) : ordered_json(nullptr);
    j["distance_px"] = a.component_id ? ordered_json(a.distance_px) : ordered_json(nullptr);
    arr.push_back(std::move(j));
  }
  return arr;
}

struct SpecArgs {
  std::string text;
  std::string file;

  void add(CLI::App* sub) {
    auto* t = sub->add_option("--spec", text, "Short spec, e.g. \"tv above surfboard\"");
    auto* f = sub->add_option("--spec-file", file, "JSON prompt spec {objects, relation}");
    t->excludes(f);
  }

  llm::PromptSpec resolve() const {
    if (!file.empty()) return llm::prompt_spec_from_json(read_json_file(file));
    if (!text.empty()) return llm::parse_spec_text(text);
    throw CLI::RequiredError("one of --spec or --spec-file");
  }
};

struct TransportArgs {
  std::string replay;
  std::string record;
  bool live = false;

  void add(CLI::App* sub) {
    auto* r = sub->add_option("--replay", replay, "Replay recorded fixtures from this directory");
    auto* rec = sub->add_option("--record", record,
                                "Query the live endpoint and record fixtures into this directory");
    auto* l = sub->add_flag("--live", live, "Query the endpoint from SKETCHGUIDE_LLM_* variables");
    r->excludes(rec)->excludes(l);
    rec->excludes(l);
  }

  // Keeps the inner transport alive for the recording wrapper.
  struct Handle {
    std::unique_ptr<llm::Transport> inner;
    std::unique_ptr<llm::Transport> outer;
    llm::Transport& get() { return outer ? *outer : *inner; }
  };

  Handle open() const {
    Handle h;
    if (!replay.empty()) {
      h.inner = std::make_unique<llm::FixtureTransport>(replay);
    } else if (!record.empty()) {
      h.inner = std::make_unique<llm::HttpTransport>(llm::HttpConfig::from_env());
      h.outer = std::make_unique<llm::RecordingTransport>(*h.inner, record);
    } else if (live) {
      h.inner = std::make_unique<llm::HttpTransport>(llm::HttpConfig::from_env());
    } else {
      throw llm::TransportError("MissingConfig", "choose --replay DIR, --record DIR or --live");
    }
    return h;
  }
};

ordered_json query_json(const llm::QueryResult& r) {
  ordered_json j;
  j["status"] = llm::to_string(r.status);
  j["prompt_sha256"] = llm::prompt_sha256(r.prompt);
  j["response"] = llm::to_json(r.response);
  if (r.parse_error) {
    j["parse_error"] = {{"code", r.parse_error->code},
                        {"message", r.parse_error->message},
                        {"line", r.parse_error->line},
                        {"column", r.parse_error->column}};
  }
  if (r.groundings) j["groundings"] = sketchguide::to_json(*r.groundings);
  return j;
}

ordered_json ground_report(const raster::SketchBitmap& sketch, const GroundingSet& groundings,
                         const control::ControlConfig& cfg, const std::string& residual_path) {
  const auto comps = raster::label_components(sketch);
  const auto matches = raster::match_components(comps, groundings);
  const control::ToyControlBranch branch(cfg.branch);
  const control::TokenFusion fusion(cfg.fusion_seed, {},
                                    std::make_shared<control::SeededNameEmbedder>(cfg.name_seed),
                                    cfg.branch.d_model);
  const auto tokens = fusion.fuse(groundings, branch.image_tokens(sketch), cfg.pad_to);
  const auto residuals = branch.forward(sketch, tokens);
  if (!residual_path.empty()) control::write_residuals(residual_path, residuals);

  ordered_json j;
  j["components"] = components_json(comps);
  j["matches"] = matches_json(matches, groundings);
  j["tokens"] = {{"grounding_rows", tokens.grounding_rows()},
                 {"image_rows", tokens.image_rows()},
                 {"fused_shape", {tokens.fused.rows(), tokens.fused.cols()}}};
  auto stages = ordered_json::array();
  for (std::size_t s = 0; s < residuals.size(); ++s) {
    double max_abs = 0.0;
    for (double v : residuals[s].data) max_abs = std::max(max_abs, std::abs(v));
    stages.push_back({{"stage", branch.stages()[s].name},
                      {"shape", {residuals[s].h, residuals[s].w, residuals[s].c}},
                      {"max_abs", max_abs}});
  }
  j["residuals"] = std::move(stages);
  return j;
}

}  // namespace

void add_parse(CLI::App& app, const GlobalFlags& flags) {
  auto* sub = app.add_subcommand("parse", "Parse a TikZ sketch and print its AST summary");
  auto input = std::make_shared<std::string>();
  auto pretty = std::make_shared<bool>(false);
  sub->add_option("input", *input, "TikZ file")->required();
  sub->add_flag("--pretty", *pretty, "Print the canonical TikZ instead of the summary");
  sub->callback([&flags, input, pretty] {
    const auto program = tikz::parse_source(read_text(*input));
    log_warnings(program.warnings);
    if (*pretty) {
      std::cout << tikz::pretty_print(program, tikz::Layout::kMultiline);
    } else if (flags.json) {
      std::cout << program_json(program).dump(2) << '\n';
    } else {
      std::cout << program_summary(program);
    }
  });
}

void add_rasterize(CLI::App& app, const GlobalFlags& flags) {
  auto* sub = app.add_subcommand("rasterize", "Render a TikZ sketch to a binary PGM");
  struct Args {
    std::string input;
    std::string output;
    double scale = kDefaultScale;
    int segments = 64;
  };
  auto a = std::make_shared<Args>();
  sub->add_option("input", a->input, "TikZ file")->required();
  sub->add_option("-o,--output", a->output, "Output PGM (default: input with .pgm)");
  sub->add_option("--scale", a->scale, "Pixels per cm")->capture_default_str();
  sub->add_option("--circle-segments", a->segments, "Polygon sides per circle")->capture_default_str();
  sub->callback([&flags, a] {
    const auto program = tikz::parse_source(read_text(a->input));
    log_warnings(program.warnings);
    raster::RasterOptions opts;
    opts.scale = a->scale;
    opts.circle_segments = a->segments;
    opts.provenance = a->input;
    const auto result = raster::rasterize(program, opts);
    log_warnings(result.warnings);
    const fs::path out = a->output.empty() ? fs::path(a->input).replace_extension(".pgm") : fs::path(a->output);
    raster::write_pgm(result.bitmap, out);
    const auto comps = raster::label_components(result.bitmap);
    if (flags.json) {
      ordered_json j;
      j["output"] = out.string();
      j["size"] = {result.bitmap.width, result.bitmap.height};
      j["ink_px"] = result.bitmap.ink_count();
      j["components"] = components_json(comps);
      j["warnings"] = diag_json(result.warnings);
      std::cout << j.dump(2) << '\n';
    } else {
      std::cout << out.string() << ": " << result.bitmap.width << "x" << result.bitmap.height << ", "
                << result.bitmap.ink_count() << " ink px, " << comps.components.size()
                << " components\n";
    }
  });
}

void add_prompt(CLI::App& app, const GlobalFlags& flags) {
  auto* sub = app.add_subcommand("prompt", "Print the LLM prompt for a spec");
  auto spec = std::make_shared<SpecArgs>();
  spec->add(sub);
  sub->callback([&flags, spec] {
    const std::string prompt = llm::build_prompt(spec->resolve());
    if (flags.json) {
      std::cout << ordered_json{{"prompt", prompt}, {"prompt_sha256", llm::prompt_sha256(prompt)}}.dump(2)
                << '\n';
    } else {
      std::cout << prompt << '\n';
    }
  });
}

void add_query(CLI::App& app, const GlobalFlags& flags) {
  auto* sub = app.add_subcommand("query", "Send one prompt to the LLM (or replay it) and classify the answer");
  auto spec = std::make_shared<SpecArgs>();
  auto transport = std::make_shared<TransportArgs>();
  auto out = std::make_shared<std::string>();
  spec->add(sub);
  transport->add(sub);
  sub->add_option("-o,--output", *out, "Write the response JSON here");
  sub->callback([&flags, spec, transport, out] {
    auto handle = transport->open();
    const auto result = llm::run_query(spec->resolve(), handle.get());
    const auto j = query_json(result);
    if (!out->empty()) write_text(*out, j.dump(2) + "\n");
    if (flags.json) {
      std::cout << j.dump(2) << '\n';
    } else {
      std::cout << "status: " << llm::to_string(result.status) << '\n';
      if (result.program) std::cout << result.program->commands.size() << " commands\n";
      if (result.groundings) std::cout << result.groundings->size() << " summary entries\n";
    }
  });
}

void add_build_dataset(CLI::App& app, const GlobalFlags& flags) {
  auto* sub = app.add_subcommand("build-dataset", "Build caption/sketch/grounding triplets from COCO and LVIS");
  struct Args {
    std::string captions;
    std::string lvis;
    std::string out;
    std::size_t limit = 0;
    bool all_captions = false;
    bool outline = false;
    unsigned jobs = 1;
  };
  auto a = std::make_shared<Args>();
  sub->add_option("--coco-captions", a->captions, "COCO captions JSON")->required();
  sub->add_option("--lvis", a->lvis, "LVIS instances JSON")->required();
  sub->add_option("--out", a->out, "Output directory")->required();
  sub->add_option("--limit", a->limit, "Only the first N images by id (0 = all)")->capture_default_str();
  sub->add_flag("--all-captions", a->all_captions, "One row per caption instead of the first");
  sub->add_flag("--outline", a->outline, "Draw polygon outlines instead of filled masks");
  sub->add_option("--jobs", a->jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  sub->callback([&flags, a] {
    const auto src = dataset::load_annotations(fs::path(a->captions), fs::path(a->lvis));
    log_warnings(src.report.warnings);
    std::cerr << "loaded " << src.images.size() << " images (" << src.report.dropped_no_caption
              << " without caption, " << src.report.dropped_no_instances << " without instances, "
              << src.report.dropped_crowd << " crowd instances dropped)\n";
    dataset::BuildOptions opts;
    opts.limit = a->limit;
    opts.all_captions = a->all_captions;
    opts.jobs = a->jobs;
    opts.mode = a->outline ? raster::PolygonMode::kOutline : raster::PolygonMode::kFill;
    const auto rep = dataset::build_triplets(src, a->out, opts);
    log_warnings(rep.errors);
    if (flags.json) {
      ordered_json j;
      j["manifest"] = rep.manifest.string();
      j["images"] = rep.images;
      j["rows"] = rep.rows;
      j["skipped"] = rep.skipped;
      std::cout << j.dump(2) << '\n';
    } else {
      std::cout << rep.manifest.string() << ": " << rep.rows << " rows from " << rep.images
                << " images, " << rep.skipped << " skipped\n";
    }
  });
}

void add_ground(CLI::App& app, const GlobalFlags& flags) {
  auto* sub = app.add_subcommand(
      "ground", "Match groundings to sketch components and run the reference control branch");
  struct Args {
    std::string sketch;
    std::string groundings;
    std::string config;
    std::string residuals;
  };
  auto a = std::make_shared<Args>();
  sub->add_option("--sketch", a->sketch, "Sketch PGM")->required();
  sub->add_option("--groundings", a->groundings, "Grounding JSON (set or entry list)")->required();
  sub->add_option("--config", a->config, "Seed/shape config (key = value)");
  sub->add_option("--residuals", a->residuals, "Dump per-stage residuals (SGRS binary)");
  sub->callback([&flags, a] {
    const auto sketch = raster::read_pgm(a->sketch);
    const auto groundings = grounding_set_from_json(read_json_file(a->groundings));
    const control::ControlConfig cfg =
        a->config.empty() ? control::ControlConfig{} : control::load_control_config(a->config);
    const auto j = ground_report(sketch, groundings, cfg, a->residuals);
    if (flags.json) {
      std::cout << j.dump(2) << '\n';
    } else {
      for (const auto& m : j["matches"]) {
        std::cout << m["name"].get<std::string>() << " -> "
                  << (m["component_id"].is_null() ? std::string("none")
                                                  : std::to_string(m["component_id"].get<int>()))
                  << '\n';
      }
      std::cout << "fused tokens " << j["tokens"]["fused_shape"].dump() << '\n';
      for (const auto& s : j["residuals"]) {
        std::cout << s["stage"].get<std::string>() << " " << s["shape"].dump() << " max|r| "
                  << s["max_abs"].get<double>() << '\n';
      }
    }
  });
}

void add_evaluate(CLI::App& app, const GlobalFlags& flags) {
  auto* sub = app.add_subcommand("evaluate", "Compute Visor and position/size metrics from detections");
  struct Args {
    std::string detections;
    std::string ground_truth;
    double eps = 0.039;
    int samples = 4;
    double threshold = 0.1;
    bool euclidean = false;
    std::string out;
    std::string format = "csv";
    std::string label = "model";
    unsigned jobs = 1;
  };
  auto a = std::make_shared<Args>();
  sub->add_option("--detections", a->detections, "Detections JSONL")->required();
  sub->add_option("--ground-truth", a->ground_truth, "Ground truth JSONL")->required();
  sub->add_option("--eps", a->eps, "Position/size tolerance as a fraction of the canvas")->capture_default_str();
  sub->add_option("--samples", a->samples, "Samples per prompt")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--threshold", a->threshold, "Detection score threshold")->capture_default_str();
  sub->add_flag("--euclidean", a->euclidean, "Position test on centre distance instead of per axis");
  sub->add_option("--out", a->out, "Write report tables into this directory");
  sub->add_option("--format", a->format, "csv, tsv or text")
      ->check(CLI::IsMember({"csv", "tsv", "text"}))
      ->capture_default_str();
  sub->add_option("--label", a->label, "Row label in the tables")->capture_default_str();
  sub->add_option("--jobs", a->jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  sub->callback([&flags, a] {
    const auto dets = metrics::read_detections(a->detections);
    const auto gts = metrics::read_ground_truth(a->ground_truth);
    metrics::VisorOptions vo;
    vo.samples = a->samples;
    vo.correctness.score_threshold = a->threshold;
    vo.jobs = a->jobs;

    metrics::MetricsReport rep;
    rep.label = a->label;
    rep.visor = metrics::visor(dets, gts, vo);
    rep.relations = metrics::per_relation(dets, gts, vo);
    const bool have_spec = !gts.empty() && std::all_of(gts.begin(), gts.end(),
                                                       [](const auto& g) { return g.spec.has_value(); });
    if (have_spec) {
      metrics::PositionSizeOptions po;
      po.eps_frac = a->eps;
      po.euclidean = a->euclidean;
      po.correctness = vo.correctness;
      rep.position_size = metrics::position_size(dets, gts, po);
    }
    const std::vector<metrics::MetricsReport> reports{rep};
    if (!a->out.empty()) {
      const auto fmt = a->format == "tsv"    ? metrics::ReportFormat::kTsv
                       : a->format == "text" ? metrics::ReportFormat::kText
                                             : metrics::ReportFormat::kCsv;
      for (const auto& p : metrics::emit_report(reports, a->out, fmt)) std::cerr << "wrote " << p.string() << '\n';
    }
    std::vector<metrics::Table> tables{metrics::visor_table(reports), metrics::relation_table(reports)};
    if (rep.position_size) tables.push_back(metrics::position_table(reports));
    if (flags.json) {
      auto arr = ordered_json::array();
      for (const auto& t : tables) {
        ordered_json jt;
        jt["header"] = t.header;
        jt["rows"] = t.rows;
        arr.push_back(std::move(jt));
      }
      std::cout << ordered_json{{"tables", arr}}.dump(2) << '\n';
    } else {
      for (std::size_t i = 0; i < tables.size(); ++i) {
        if (i) std::cout << '\n';
        std::cout << metrics::to_text(tables[i]);
      }
    }
  });
}

void add_pipeline(CLI::App& app, const GlobalFlags& flags) {
  auto* sub = app.add_subcommand("pipeline", "prompt -> query -> parse -> rasterize -> ground, into a run directory");
  auto spec = std::make_shared<SpecArgs>();
  auto transport = std::make_shared<TransportArgs>();
  auto run_dir = std::make_shared<std::string>();
  auto config = std::make_shared<std::string>();
  spec->add(sub);
  transport->add(sub);
  sub->add_option("--config", *config, "Seed/shape config for the control branch");
  sub->add_option("--run-dir", *run_dir, "Run directory (default: run-<first 12 hex of prompt sha256>)");
  sub->callback([&flags, spec, transport, run_dir, config] {
    const auto ps = spec->resolve();
    const std::string prompt = llm::build_prompt(ps);
    const fs::path dir = run_dir->empty() ? fs::path("run-" + llm::prompt_sha256(prompt).substr(0, 12))
                                          : fs::path(*run_dir);
    fs::create_directories(dir);
    write_text(dir / "prompt.txt", prompt + "\n");

    auto handle = transport->open();
    const auto result = llm::run_query(ps, handle.get());
    write_text(dir / "response.json", query_json(result).dump(2) + "\n");
    if (!result.program) {
      if (result.parse_error) {
        throw Error(result.parse_error->code, "response code does not parse: " + result.parse_error->message,
                    result.parse_error->line, result.parse_error->column);
      }
      throw Error("EmptyResponse", "response contains no TikZ code");
    }
    log_warnings(result.program->warnings);
    write_text(dir / "sketch.tikz", tikz::pretty_print(*result.program, tikz::Layout::kMultiline));

    raster::RasterOptions ro;
    ro.provenance = (dir / "sketch.tikz").string();
    const auto raster_result = raster::rasterize(*result.program, ro);
    log_warnings(raster_result.warnings);
    raster::write_pgm(raster_result.bitmap, dir / "sketch.pgm");

    const GroundingSet groundings = result.groundings.value_or(GroundingSet{{}, GroundingSource::kLlm});
    write_text(dir / "groundings.json", sketchguide::to_json(groundings).dump(2) + "\n");
    const control::ControlConfig cfg =
        config->empty() ? control::ControlConfig{} : control::load_control_config(*config);
    const auto m = ground_report(raster_result.bitmap, groundings, cfg, (dir / "residuals.sgrs").string());
    write_text(dir / "ground.json", m.dump(2) + "\n");

    if (flags.json) {
      std::cout << ordered_json{{"run_dir", dir.string()},
                                {"status", llm::to_string(result.status)},
                                {"components", m["components"].size()},
                                {"matches", m["matches"]}}
                       .dump(2)
                << '\n';
    } else {
      std::cout << dir.string() << ": status " << llm::to_string(result.status) << ", "
                << m["components"].size() << " components, " << groundings.size()
                << " groundings\n";
    }
  });
}

void add_tally(CLI::App& app, const GlobalFlags& flags) {
  auto* sub = app.add_subcommand("tally", "Count empty and non-runnable answers over recorded fixtures");
  struct Args {
    std::string fixtures;
    std::string annotations;
    std::string label = "model";
    std::string out;
  };
  auto a = std::make_shared<Args>();
  sub->add_option("--fixtures", a->fixtures, "Directory of {prompt_sha256, raw_response} files")->required();
  sub->add_option("--annotations", a->annotations, "JSON object: query id -> instruction error");
  sub->add_option("--label", a->label, "Row label")->capture_default_str();
  sub->add_option("-o,--output", a->out, "Write the CSV here");
  sub->callback([&flags, a] {
    std::error_code ec;
    if (!fs::is_directory(a->fixtures, ec)) throw IoError("fixture directory '" + a->fixtures + "' does not exist");
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(a->fixtures)) {
      if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<llm::TallyEntry> entries;
    for (const auto& f : files) {
      const auto j = read_json_file(f);
      if (!j.is_object() || !j.contains("raw_response") || !j["raw_response"].is_string()) {
        throw llm::TransportError("InvalidFixture", f.string() + ": expected {prompt_sha256, raw_response}");
      }
      const std::string id = j.contains("query_id") && j["query_id"].is_string()
                                 ? j["query_id"].get<std::string>()
                                 : f.stem().string();
      entries.push_back({id, llm::classify_response({}, j["raw_response"].get<std::string>()).status});
    }
    std::optional<llm::InstructionAnnotations> ann;
    if (!a->annotations.empty()) ann = llm::load_instruction_annotations(a->annotations);
    const std::vector<llm::TallyRow> rows{llm::tally(entries, ann, a->label)};
    const std::string csv = llm::tally_csv(rows);
    if (!a->out.empty()) write_text(a->out, csv);
    if (flags.json) {
      const auto& r = rows.front();
      ordered_json j;
      j["label"] = r.label;
      j["queries"] = r.queries;
      j["ok"] = r.ok;
      j["no_summary"] = r.no_summary;
      j["empty"] = r.empty;
      j["non_runnable"] = r.non_runnable;
      j["empty_or_non_runnable"] = r.failed_runs;
      j["instruction_errors"] = r.instruction_errors ? ordered_json(*r.instruction_errors) : ordered_json(nullptr);
      std::cout << j.dump(2) << '\n';
    } else {
      std::cout << csv;
    }
  });
}

}  // namespace sketchguide::cli
