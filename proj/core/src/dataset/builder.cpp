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
#include "sketchguide/dataset/builder.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <optional>
#include <thread>

namespace sketchguide::dataset {

namespace {

std::string sketch_name(std::int64_t id) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%012lld", static_cast<long long>(id));
  return std::string("sketches/") + buf + ".pgm";
}

struct ImageOutput {
  std::vector<TripletRecord> rows;
  std::optional<Diagnostic> error;
};

ImageOutput process_image(const ImageEntry& image, const AnnotationSource& src,
                          const std::filesystem::path& out_dir, const BuildOptions& options) {
  ImageOutput out;
  try {
    const auto sketch = image_sketch(image, options.mode);
    const std::string rel = sketch_name(image.info.id);
    raster::write_pgm(sketch.bitmap, out_dir / rel);
    const GroundingSet groundings = image_groundings(image, src);
    const std::size_t n_captions = options.all_captions ? image.captions.size() : 1;
    for (std::size_t c = 0; c < n_captions; ++c) {
      TripletRecord r;
      r.image_id = image.info.id;
      r.file_name = image.info.file_name;
      r.caption = image.captions[c].caption;
      r.sketch_path = rel;
      r.src_width = image.info.width;
      r.src_height = image.info.height;
      r.groundings = groundings;
      out.rows.push_back(std::move(r));
    }
  } catch (const Error& e) {
    out.error = Diagnostic{"RenderError",
                           "image " + std::to_string(image.info.id) + ": " + e.what(), 0, 0};
  }
  return out;
}

}  // namespace

GroundingSet image_groundings(const ImageEntry& image, const AnnotationSource& src) {
  const auto lb = raster::letterbox(image.info.width, image.info.height);
  std::vector<const InstanceAnnotation*> order;
  for (const auto& inst : image.instances) order.push_back(&inst);
  std::stable_sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
    if (a->area != b->area) return a->area > b->area;
    return a->id < b->id;
  });
  if (order.size() > kMaxGroundings) order.resize(kMaxGroundings);

  const double canvas_cm = lb.canvas / kDefaultScale;
  GroundingSet set;
  set.source = GroundingSource::kDataset;
  for (const auto* inst : order) {
    const auto& b = inst->bbox;
    const auto px = lb.map(b[0] + b[2] / 2.0, b[1] + b[3] / 2.0);
    GroundingEntry e;
    e.name = src.category_name(inst->category_id);
    e.center.x = std::clamp(px.x / kDefaultScale, 0.0, canvas_cm);
    e.center.y = std::clamp((lb.canvas - px.y) / kDefaultScale, 0.0, canvas_cm);
    e.size = Size2{lb.scale * b[2] / kDefaultScale, lb.scale * b[3] / kDefaultScale};
    set.entries.push_back(std::move(e));
  }
  return set;
}

raster::RasterResult image_sketch(const ImageEntry& image, raster::PolygonMode mode) {
  std::vector<raster::Ring> rings;
  for (const auto& inst : image.instances) {
    rings.insert(rings.end(), inst.segmentation.begin(), inst.segmentation.end());
  }
  return raster::render_polygons(rings, image.info.width, image.info.height, kCanvasPx, mode,
                                 image.info.file_name);
}

BuildReport build_triplets(const AnnotationSource& src, const std::filesystem::path& out_dir,
                           const BuildOptions& options) {
  std::filesystem::create_directories(out_dir / "sketches");

  std::vector<const ImageEntry*> work;
  for (const auto& [id, entry] : src.images) {
    if (options.limit && work.size() >= options.limit) break;
    work.push_back(&entry);
  }

  std::vector<ImageOutput> results(work.size());
  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(work.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < work.size(); i = next++) {
      results[i] = process_image(*work[i], src, out_dir, options);
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  BuildReport report;
  report.images = work.size();
  report.manifest = out_dir / "manifest.jsonl";
  std::ofstream os(report.manifest, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot write '" + report.manifest.string() + "'");
  for (auto& r : results) {
    if (r.error) {
      ++report.skipped;
      report.errors.push_back(std::move(*r.error));
      continue;
    }
    for (const auto& row : r.rows) {
      os << to_json(row).dump() << '\n';
      ++report.rows;
    }
  }
  if (!os) throw IoError("failed writing '" + report.manifest.string() + "'");
  return report;
}

nlohmann::ordered_json to_json(const TripletRecord& record) {
  nlohmann::ordered_json j;
  j["image_id"] = record.image_id;
  j["file_name"] = record.file_name;
  j["caption"] = record.caption;
  j["sketch_path"] = record.sketch_path;
  j["src_size"] = {record.src_width, record.src_height};
  j["groundings"] = sketchguide::to_json(record.groundings);
  return j;
}

TripletRecord triplet_from_json(const nlohmann::json& j) {
  try {
    TripletRecord r;
    r.image_id = j.at("image_id").get<std::int64_t>();
    r.file_name = j.at("file_name").get<std::string>();
    r.caption = j.at("caption").get<std::string>();
    r.sketch_path = j.at("sketch_path").get<std::string>();
    r.src_width = j.at("src_size").at(0).get<int>();
    r.src_height = j.at("src_size").at(1).get<int>();
    r.groundings = grounding_set_from_json(j.at("groundings"));
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("manifest row: ") + e.what());
  }
}

std::vector<TripletRecord> read_manifest(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open '" + path.string() + "'");
  std::vector<TripletRecord> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    try {
      rows.push_back(triplet_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::parse_error& e) {
      throw SchemaError(path.string() + ": line " + std::to_string(rows.size() + 1) + ": " + e.what());
    }
  }
  return rows;
}

}  // namespace sketchguide::dataset
