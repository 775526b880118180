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
#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sketchguide/metrics/records.hpp"

namespace sketchguide::metrics {

struct CorrectnessOptions {
  double score_threshold = 0.1;
  double canvas = kCanvasPx;
};

struct ImageCorrectness {
  bool has_a = false;
  bool has_b = false;
  bool relation_ok = false;

  bool objects_ok() const { return has_a && has_b; }
  bool full_ok() const { return has_a && has_b && relation_ok; }
};

/// Highest-score detection with the normalized name at or above the
/// threshold, ties broken by the lexicographically smallest clamped bbox so
/// the result does not depend on list order. The bbox is returned clamped.
std::optional<Detection> best_detection(const DetectionRecord& record, const std::string& name,
                                        const CorrectnessOptions& options = {});

/// Centre comparison in image coordinates: left is a.x < b.x, above is
/// a.y < b.y (rows grow downwards).
bool relation_holds(Relation relation, const Detection& a, const Detection& b);

ImageCorrectness image_correctness(const DetectionRecord& record, const PromptGroundTruth& gt,
                                   const CorrectnessOptions& options = {});

struct VisorOptions {
  int samples = 4;
  CorrectnessOptions correctness;
  unsigned jobs = 1;
};

/// Counts are kept next to the rates so identities can be checked exactly.
/// cond is NaN when no image has both objects.
struct VisorReport {
  std::size_t prompts = 0;
  std::size_t images = 0;
  std::size_t oa_count = 0;
  std::size_t uncond_count = 0;
  double oa = 0.0;
  double uncond = 0.0;
  double cond = 0.0;
  std::vector<double> visor_k;             // k = 1..samples
  std::vector<std::size_t> visor_k_count;  // prompts with >= k fully correct samples
};

struct RelationRow {
  Relation relation = Relation::kLeft;
  std::size_t prompts = 0;
  double visor_score = 0.0;      // relation accuracy given both objects, NaN if undefined
  double object_accuracy = 0.0;  // OA of the partition
};

/// Per-prompt image results in sample order, grouped and validated: every
/// ground-truth prompt must have exactly `samples` records with distinct
/// sample indices below `samples` (IncompleteGroup), and every record must
/// have a ground truth (MissingGroundTruth).
std::map<std::string, std::vector<ImageCorrectness>> evaluate_prompts(
    std::span<const DetectionRecord> records, std::span<const PromptGroundTruth> gts,
    const VisorOptions& options = {});

VisorReport visor(std::span<const DetectionRecord> records, std::span<const PromptGroundTruth> gts,
                  const VisorOptions& options = {});

/// Left, right, above, below, in that order; empty partitions report 0
/// prompts and NaN rates.
std::array<RelationRow, 4> per_relation(std::span<const DetectionRecord> records,
                                        std::span<const PromptGroundTruth> gts,
                                        const VisorOptions& options = {});

/// Aggregation step shared by visor() and per_relation().
VisorReport summarize(const std::vector<const std::vector<ImageCorrectness>*>& groups, int samples);

}  // namespace sketchguide::metrics
