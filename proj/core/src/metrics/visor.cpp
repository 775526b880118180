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
#include "sketchguide/metrics/visor.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <thread>

namespace sketchguide::metrics {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? kNaN : static_cast<double>(num) / static_cast<double>(den);
}

double center_x(const Detection& d) { return d.bbox[0] + d.bbox[2] / 2.0; }
double center_y(const Detection& d) { return d.bbox[1] + d.bbox[3] / 2.0; }

}  // namespace

std::optional<Detection> best_detection(const DetectionRecord& record, const std::string& name,
                                        const CorrectnessOptions& options) {
  const std::string want = normalize_label(name);
  std::optional<Detection> best;
  for (const auto& d : record.detections) {
    if (d.score < options.score_threshold || normalize_label(d.label) != want) continue;
    Detection c = d;
    c.bbox = clamp_bbox(d.bbox, options.canvas);
    if (!best || c.score > best->score || (c.score == best->score && c.bbox < best->bbox)) {
      best = std::move(c);
    }
  }
  return best;
}

bool relation_holds(Relation relation, const Detection& a, const Detection& b) {
  switch (relation) {
    case Relation::kLeft: return center_x(a) < center_x(b);
    case Relation::kRight: return center_x(a) > center_x(b);
    case Relation::kAbove: return center_y(a) < center_y(b);
    case Relation::kBelow: return center_y(a) > center_y(b);
  }
  return false;
}

ImageCorrectness image_correctness(const DetectionRecord& record, const PromptGroundTruth& gt,
                                   const CorrectnessOptions& options) {
  const auto a = best_detection(record, gt.object_a, options);
  const auto b = best_detection(record, gt.object_b, options);
  ImageCorrectness out;
  out.has_a = a.has_value();
  out.has_b = b.has_value();
  out.relation_ok = a && b && relation_holds(gt.relation, *a, *b);
  return out;
}

std::map<std::string, std::vector<ImageCorrectness>> evaluate_prompts(
    std::span<const DetectionRecord> records, std::span<const PromptGroundTruth> gts,
    const VisorOptions& options) {
  if (options.samples <= 0) throw MetricsError("InvalidOption", "samples per prompt must be positive");
  std::map<std::string, const PromptGroundTruth*> gt_by_id;
  for (const auto& g : gts) {
    if (!gt_by_id.emplace(g.prompt_id, &g).second) {
      throw MetricsError("SchemaError", "prompt '" + g.prompt_id + "' has two ground-truth rows");
    }
  }
  std::map<std::string, std::vector<const DetectionRecord*>> slots;
  for (const auto& [id, g] : gt_by_id) {
    slots[id].assign(static_cast<std::size_t>(options.samples), nullptr);
  }
  for (const auto& r : records) {
    auto it = slots.find(r.prompt_id);
    if (it == slots.end()) {
      throw MetricsError("MissingGroundTruth", "no ground truth for prompt '" + r.prompt_id + "'");
    }
    if (r.sample_index < 0 || r.sample_index >= options.samples) {
      throw MetricsError("IncompleteGroup", "prompt '" + r.prompt_id + "' has sample index " +
                                                std::to_string(r.sample_index) + " outside 0.." +
                                                std::to_string(options.samples - 1));
    }
    auto& slot = it->second[static_cast<std::size_t>(r.sample_index)];
    if (slot) {
      throw MetricsError("IncompleteGroup", "prompt '" + r.prompt_id + "' repeats sample " +
                                                std::to_string(r.sample_index));
    }
    slot = &r;
  }
  for (const auto& [id, s] : slots) {
    const auto have = std::count_if(s.begin(), s.end(), [](const auto* p) { return p != nullptr; });
    if (have != options.samples) {
      throw MetricsError("IncompleteGroup", "prompt '" + id + "' has " + std::to_string(have) +
                                                " records, expected " +
                                                std::to_string(options.samples));
    }
  }

  std::vector<std::pair<std::string, const std::vector<const DetectionRecord*>*>> work;
  for (const auto& [id, s] : slots) work.emplace_back(id, &s);
  std::vector<std::vector<ImageCorrectness>> results(work.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < work.size(); i = next++) {
      const PromptGroundTruth& g = *gt_by_id.at(work[i].first);
      for (const auto* r : *work[i].second) {
        results[i].push_back(image_correctness(*r, g, options.correctness));
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(work.size())));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::map<std::string, std::vector<ImageCorrectness>> out;
  for (std::size_t i = 0; i < work.size(); ++i) out.emplace(work[i].first, std::move(results[i]));
  return out;
}

VisorReport summarize(const std::vector<const std::vector<ImageCorrectness>*>& groups, int samples) {
  VisorReport rep;
  rep.prompts = groups.size();
  rep.visor_k_count.assign(static_cast<std::size_t>(samples), 0);
  for (const auto* g : groups) {
    std::size_t full = 0;
    for (const auto& ic : *g) {
      ++rep.images;
      if (ic.objects_ok()) ++rep.oa_count;
      if (ic.full_ok()) ++full;
    }
    rep.uncond_count += full;
    for (std::size_t k = 1; k <= rep.visor_k_count.size(); ++k) {
      if (full >= k) ++rep.visor_k_count[k - 1];
    }
  }
  rep.oa = rep.images ? ratio(rep.oa_count, rep.images) : 0.0;
  rep.uncond = rep.images ? ratio(rep.uncond_count, rep.images) : 0.0;
  rep.cond = ratio(rep.uncond_count, rep.oa_count);
  for (std::size_t c : rep.visor_k_count) {
    rep.visor_k.push_back(rep.prompts ? ratio(c, rep.prompts) : 0.0);
  }
  return rep;
}

VisorReport visor(std::span<const DetectionRecord> records, std::span<const PromptGroundTruth> gts,
                  const VisorOptions& options) {
  const auto per_prompt = evaluate_prompts(records, gts, options);
  std::vector<const std::vector<ImageCorrectness>*> groups;
  for (const auto& [id, v] : per_prompt) groups.push_back(&v);
  return summarize(groups, options.samples);
}

std::array<RelationRow, 4> per_relation(std::span<const DetectionRecord> records,
                                        std::span<const PromptGroundTruth> gts,
                                        const VisorOptions& options) {
  const auto per_prompt = evaluate_prompts(records, gts, options);
  std::array<std::vector<const std::vector<ImageCorrectness>*>, 4> parts;
  for (const auto& g : gts) {
    parts[static_cast<std::size_t>(g.relation)].push_back(&per_prompt.at(g.prompt_id));
  }
  std::array<RelationRow, 4> out;
  for (std::size_t r = 0; r < 4; ++r) {
    const VisorReport rep = summarize(parts[r], options.samples);
    out[r].relation = static_cast<Relation>(r);
    out[r].prompts = rep.prompts;
    out[r].visor_score = rep.cond;
    out[r].object_accuracy = rep.images ? rep.oa : kNaN;
  }
  return out;
}

}  // namespace sketchguide::metrics
