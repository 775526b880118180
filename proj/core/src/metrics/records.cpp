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
#include "sketchguide/metrics/records.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>

namespace sketchguide::metrics {

namespace {

using nlohmann::json;

[[noreturn]] void schema(const std::string& msg) { throw MetricsError("SchemaError", msg); }

const json& need(const json& j, const char* key) {
  if (!j.is_object()) schema("record must be a JSON object");
  auto it = j.find(key);
  if (it == j.end()) schema(std::string("$.") + key + " is missing");
  return *it;
}

std::string need_string(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_string()) schema(std::string("$.") + key + " must be a string");
  return v.get<std::string>();
}

std::array<double, 2> pair_of(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    schema(path + " must be [number, number]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

template <typename T, typename F>
std::vector<T> read_jsonl(const std::filesystem::path& path, F parse) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open '" + path.string() + "'");
  std::vector<T> out;
  std::string line;
  int n = 0;
  while (std::getline(is, line)) {
    ++n;
    if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); })) continue;
    try {
      out.push_back(parse(json::parse(line)));
    } catch (const json::exception& e) {
      throw MetricsError("SchemaError", path.string() + ":" + std::to_string(n) + ": " + e.what(), n);
    } catch (const MetricsError& e) {
      throw MetricsError(e.code(), path.string() + ":" + std::to_string(n) + ": " + e.what(), n);
    }
  }
  return out;
}

}  // namespace

std::string normalize_label(std::string_view label) {
  std::size_t b = 0;
  std::size_t e = label.size();
  while (b < e && std::isspace(static_cast<unsigned char>(label[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(label[e - 1]))) --e;
  std::string out(label.substr(b, e - b));
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::array<double, 4> clamp_bbox(const std::array<double, 4>& bbox, double canvas) {
  const double x0 = std::clamp(bbox[0], 0.0, canvas);
  const double y0 = std::clamp(bbox[1], 0.0, canvas);
  const double x1 = std::clamp(bbox[0] + std::max(0.0, bbox[2]), 0.0, canvas);
  const double y1 = std::clamp(bbox[1] + std::max(0.0, bbox[3]), 0.0, canvas);
  return {x0, y0, x1 - x0, y1 - y0};
}

DetectionRecord detection_from_json(const json& j) {
  DetectionRecord r;
  r.prompt_id = need_string(j, "prompt_id");
  const json& idx = need(j, "sample_index");
  if (!idx.is_number_integer() || idx.get<long long>() < 0) {
    schema("$.sample_index must be a non-negative integer");
  }
  r.sample_index = idx.get<int>();
  const json& dets = need(j, "detections");
  if (!dets.is_array()) schema("$.detections must be an array");
  for (std::size_t i = 0; i < dets.size(); ++i) {
    const std::string path = "$.detections[" + std::to_string(i) + "]";
    const json& d = dets[i];
    Detection det;
    if (!d.is_object() || !d.contains("label") || !d["label"].is_string()) {
      schema(path + ".label must be a string");
    }
    det.label = d["label"].get<std::string>();
    if (!d.contains("score") || !d["score"].is_number()) schema(path + ".score must be a number");
    det.score = d["score"].get<double>();
    if (!(det.score >= 0.0 && det.score <= 1.0)) schema(path + ".score must lie in [0, 1]");
    if (!d.contains("bbox") || !d["bbox"].is_array() || d["bbox"].size() != 4) {
      schema(path + ".bbox must be [x, y, w, h]");
    }
    for (std::size_t k = 0; k < 4; ++k) {
      if (!d["bbox"][k].is_number()) schema(path + ".bbox[" + std::to_string(k) + "] must be a number");
      det.bbox[k] = d["bbox"][k].get<double>();
      if (!std::isfinite(det.bbox[k])) schema(path + ".bbox must be finite");
    }
    r.detections.push_back(std::move(det));
  }
  return r;
}

PromptGroundTruth ground_truth_from_json(const json& j) {
  PromptGroundTruth g;
  g.prompt_id = need_string(j, "prompt_id");
  g.object_a = need_string(j, "object_a");
  g.object_b = need_string(j, "object_b");
  const std::string rel = need_string(j, "relation");
  const auto r = relation_from_string(rel);
  if (!r) schema("$.relation: unknown relation '" + rel + "'");
  g.relation = *r;
  if (normalize_label(g.object_a) == normalize_label(g.object_b)) {
    schema("$.object_a and $.object_b must differ");
  }
  if (j.contains("spec") && !j["spec"].is_null()) {
    const json& s = j["spec"];
    if (!s.is_array() || s.size() != 2) schema("$.spec must list two objects");
    std::array<ObjectSpec, 2> spec;
    for (std::size_t i = 0; i < 2; ++i) {
      const std::string path = "$.spec[" + std::to_string(i) + "]";
      if (!s[i].is_object() || !s[i].contains("center") || !s[i].contains("size")) {
        schema(path + " needs center and size");
      }
      const auto c = pair_of(s[i]["center"], path + ".center");
      const auto z = pair_of(s[i]["size"], path + ".size");
      spec[i] = ObjectSpec{{c[0], c[1]}, {z[0], z[1]}};
    }
    g.spec = spec;
  }
  return g;
}

nlohmann::ordered_json to_json(const DetectionRecord& record) {
  nlohmann::ordered_json j;
  j["prompt_id"] = record.prompt_id;
  j["sample_index"] = record.sample_index;
  auto dets = nlohmann::ordered_json::array();
  for (const auto& d : record.detections) {
    nlohmann::ordered_json jd;
    jd["label"] = d.label;
    jd["score"] = d.score;
    jd["bbox"] = {d.bbox[0], d.bbox[1], d.bbox[2], d.bbox[3]};
    dets.push_back(std::move(jd));
  }
  j["detections"] = std::move(dets);
  return j;
}

nlohmann::ordered_json to_json(const PromptGroundTruth& gt) {
  nlohmann::ordered_json j;
  j["prompt_id"] = gt.prompt_id;
  j["object_a"] = gt.object_a;
  j["object_b"] = gt.object_b;
  j["relation"] = to_string(gt.relation);
  if (gt.spec) {
    auto s = nlohmann::ordered_json::array();
    for (const auto& o : *gt.spec) {
      s.push_back({{"center", {o.center.x, o.center.y}}, {"size", {o.size.w, o.size.h}}});
    }
    j["spec"] = std::move(s);
  }
  return j;
}

std::vector<DetectionRecord> read_detections(const std::filesystem::path& path) {
  return read_jsonl<DetectionRecord>(path, detection_from_json);
}

std::vector<PromptGroundTruth> read_ground_truth(const std::filesystem::path& path) {
  return read_jsonl<PromptGroundTruth>(path, ground_truth_from_json);
}

}  // namespace sketchguide::metrics
