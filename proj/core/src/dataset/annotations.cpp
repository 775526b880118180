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
#include "sketchguide/dataset/annotations.hpp"

#include <algorithm>
#include <fstream>

namespace sketchguide::dataset {

namespace {

using nlohmann::json;

class Reader {
 public:
  explicit Reader(std::string label) : label_(std::move(label)) {}

  [[noreturn]] void fail(const std::string& path, const std::string& what) const {
    throw SchemaError(label_ + ": " + path + " " + what);
  }

  const json& field(const json& obj, const std::string& path, const char* key) const {
    if (!obj.is_object()) fail(path, "must be an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(path + "." + key, "is missing");
    return *it;
  }

  std::int64_t integer(const json& obj, const std::string& path, const char* key) const {
    const json& v = field(obj, path, key);
    if (!v.is_number_integer()) fail(path + "." + key, "must be an integer");
    return v.get<std::int64_t>();
  }

  double number(const json& v, const std::string& path) const {
    if (!v.is_number()) fail(path, "must be a number");
    return v.get<double>();
  }

  std::string string(const json& obj, const std::string& path, const char* key) const {
    const json& v = field(obj, path, key);
    if (!v.is_string()) fail(path + "." + key, "must be a string");
    return v.get<std::string>();
  }

  const json& array(const json& root, const char* key) const {
    const json& v = field(root, "$", key);
    if (!v.is_array()) fail(std::string("$.") + key, "must be an array");
    return v;
  }

  bool flag(const json& obj, const char* key) const {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return false;
    if (it->is_boolean()) return it->get<bool>();
    if (it->is_number()) return it->get<double>() != 0.0;
    return false;
  }

  const std::string& label() const { return label_; }

 private:
  std::string label_;
};

std::string item(const char* list, std::size_t i) {
  return std::string("$.") + list + "[" + std::to_string(i) + "]";
}

void merge_images(const Reader& r, const json& root, std::map<std::int64_t, ImageInfo>& images,
                  LoadReport& report) {
  if (!root.contains("images")) return;
  const json& list = r.array(root, "images");
  std::map<std::int64_t, bool> seen_here;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string path = item("images", i);
    const json& img = list[i];
    ImageInfo info;
    info.id = r.integer(img, path, "id");
    info.width = static_cast<int>(r.integer(img, path, "width"));
    info.height = static_cast<int>(r.integer(img, path, "height"));
    if (img.contains("file_name")) {
      info.file_name = r.string(img, path, "file_name");
    } else if (img.contains("coco_url")) {
      const std::string url = r.string(img, path, "coco_url");
      info.file_name = url.substr(url.find_last_of('/') + 1);
    }
    if (!seen_here.emplace(info.id, true).second) {
      throw IdCollision(r.label() + ": image id " + std::to_string(info.id) + " listed twice");
    }
    auto [it, inserted] = images.emplace(info.id, info);
    if (!inserted) {
      ImageInfo& prev = it->second;
      if (prev.width != info.width || prev.height != info.height) {
        throw IdCollision(r.label() + ": image id " + std::to_string(info.id) +
                          " has a different size in the other annotation file");
      }
      if (prev.file_name.empty()) prev.file_name = info.file_name;
    } else {
      ++report.images_seen;
    }
  }
}

std::vector<raster::Ring> read_polygons(const Reader& r, const json& seg, const std::string& path) {
  std::vector<raster::Ring> rings;
  for (std::size_t k = 0; k < seg.size(); ++k) {
    const std::string rp = path + "[" + std::to_string(k) + "]";
    const json& flat = seg[k];
    if (!flat.is_array()) r.fail(rp, "must be a flat coordinate list");
    if (flat.size() % 2 != 0) r.fail(rp, "has an odd number of coordinates");
    raster::Ring ring;
    ring.reserve(flat.size() / 2);
    for (std::size_t c = 0; c + 1 < flat.size(); c += 2) {
      ring.push_back({r.number(flat[c], rp), r.number(flat[c + 1], rp)});
    }
    rings.push_back(std::move(ring));
  }
  return rings;
}

json read_json(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open '" + path.string() + "'");
  try {
    return json::parse(is);
  } catch (const json::exception& e) {
    throw SchemaError(path.string() + ": invalid JSON: " + e.what());
  }
}

}  // namespace

const std::string& AnnotationSource::category_name(std::int64_t id) const {
  auto it = categories.find(id);
  if (it == categories.end()) throw SchemaError("unknown category id " + std::to_string(id));
  return it->second.name;
}

AnnotationSource load_annotations(const nlohmann::json& coco_captions, const nlohmann::json& lvis,
                                  const std::string& captions_label,
                                  const std::string& lvis_label) {
  const Reader cr(captions_label);
  const Reader lr(lvis_label);
  AnnotationSource src;
  LoadReport& report = src.report;

  std::map<std::int64_t, ImageInfo> images;
  merge_images(cr, coco_captions, images, report);
  merge_images(lr, lvis, images, report);
  for (const auto& [id, info] : images) {
    if (info.file_name.empty()) {
      throw SchemaError("image " + std::to_string(id) + " has neither file_name nor coco_url in either file");
    }
  }

  const json& cats = lr.array(lvis, "categories");
  for (std::size_t i = 0; i < cats.size(); ++i) {
    const std::string path = item("categories", i);
    Category c{lr.integer(cats[i], path, "id"), lr.string(cats[i], path, "name")};
    if (!src.categories.emplace(c.id, c).second) {
      throw IdCollision(lvis_label + ": category id " + std::to_string(c.id) + " listed twice");
    }
  }

  std::map<std::int64_t, std::vector<CaptionAnnotation>> captions;
  {
    const json& anns = cr.array(coco_captions, "annotations");
    std::map<std::int64_t, bool> ids;
    for (std::size_t i = 0; i < anns.size(); ++i) {
      const std::string path = item("annotations", i);
      CaptionAnnotation a;
      a.id = cr.integer(anns[i], path, "id");
      a.image_id = cr.integer(anns[i], path, "image_id");
      a.caption = cr.string(anns[i], path, "caption");
      if (!ids.emplace(a.id, true).second) {
        throw IdCollision(captions_label + ": caption annotation id " + std::to_string(a.id) +
                          " listed twice");
      }
      if (!images.count(a.image_id)) {
        cr.fail(path + ".image_id", "references unknown image id " + std::to_string(a.image_id));
      }
      captions[a.image_id].push_back(std::move(a));
    }
  }

  std::map<std::int64_t, std::vector<InstanceAnnotation>> instances;
  {
    const json& anns = lr.array(lvis, "annotations");
    std::map<std::int64_t, bool> ids;
    for (std::size_t i = 0; i < anns.size(); ++i) {
      const std::string path = item("annotations", i);
      const json& a = anns[i];
      InstanceAnnotation inst;
      inst.id = lr.integer(a, path, "id");
      inst.image_id = lr.integer(a, path, "image_id");
      inst.category_id = lr.integer(a, path, "category_id");
      if (!ids.emplace(inst.id, true).second) {
        throw IdCollision(lvis_label + ": instance annotation id " + std::to_string(inst.id) +
                          " listed twice");
      }
      if (!images.count(inst.image_id)) {
        lr.fail(path + ".image_id", "references unknown image id " + std::to_string(inst.image_id));
      }
      if (!src.categories.count(inst.category_id)) {
        lr.fail(path + ".category_id",
                "references unknown category id " + std::to_string(inst.category_id));
      }
      const json& bbox = lr.field(a, path, "bbox");
      if (!bbox.is_array() || bbox.size() != 4) lr.fail(path + ".bbox", "must be [x, y, w, h]");
      for (std::size_t k = 0; k < 4; ++k) {
        inst.bbox[k] = lr.number(bbox[k], path + ".bbox[" + std::to_string(k) + "]");
      }
      if (lr.flag(a, "iscrowd") || lr.flag(a, "ignore")) {
        ++report.dropped_crowd;
        continue;
      }
      const json& seg = lr.field(a, path, "segmentation");
      if (seg.is_object()) {
        ++report.skipped_rle;
        report.warnings.push_back({"RleSegmentation",
                                   lvis_label + ": " + path +
                                       " uses RLE; only polygon masks are rendered",
                                   0, 0});
        continue;
      }
      if (!seg.is_array()) lr.fail(path + ".segmentation", "must be a list of polygons");
      inst.segmentation = read_polygons(lr, seg, path + ".segmentation");
      inst.area = a.contains("area") ? lr.number(a["area"], path + ".area")
                                     : inst.bbox[2] * inst.bbox[3];
      instances[inst.image_id].push_back(std::move(inst));
    }
  }

  for (const auto& [id, info] : images) {
    auto c = captions.find(id);
    auto n = instances.find(id);
    if (c == captions.end()) {
      ++report.dropped_no_caption;
      continue;
    }
    if (n == instances.end()) {
      ++report.dropped_no_instances;
      continue;
    }
    ImageEntry entry;
    entry.info = info;
    entry.captions = std::move(c->second);
    entry.instances = std::move(n->second);
    std::sort(entry.captions.begin(), entry.captions.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });
    std::sort(entry.instances.begin(), entry.instances.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });
    src.images.emplace(id, std::move(entry));
  }
  if (src.images.empty()) {
    report.warnings.push_back({"NoImages", "no image has both a caption and an instance", 0, 0});
  }
  return src;
}

AnnotationSource load_annotations(const std::filesystem::path& coco_captions_path,
                                  const std::filesystem::path& lvis_path) {
  return load_annotations(read_json(coco_captions_path), read_json(lvis_path),
                          coco_captions_path.filename().string(), lvis_path.filename().string());
}

}  // namespace sketchguide::dataset
