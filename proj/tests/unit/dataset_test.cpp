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
#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>

#include "sketchguide/dataset/annotations.hpp"
#include "sketchguide/dataset/builder.hpp"
#include "sketchguide/raster/components.hpp"
#include "test_support.hpp"

namespace sketchguide::dataset {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using sketchguide::testing::data_dir;
using sketchguide::testing::scratch_dir;
using sketchguide::testing::slurp;

const AnnotationSource& slice() {
  static const AnnotationSource src =
      load_annotations(data_dir() / "coco_slice" / "captions.json", data_dir() / "coco_slice" / "lvis.json");
  return src;
}

const ImageEntry* find_caption(const std::string& text) {
  for (const auto& [id, e] : slice().images) {
    for (const auto& c : e.captions) {
      if (c.caption == text) return &e;
    }
  }
  return nullptr;
}

json minimal_captions() {
  return json::parse(R"({"images":[{"id":1,"width":100,"height":50,"file_name":"a.jpg"}],
    "annotations":[{"id":10,"image_id":1,"caption":"a box"}]})");
}

json minimal_lvis() {
  return json::parse(R"({"images":[{"id":1,"width":100,"height":50,"coco_url":"http://x/a.jpg"}],
    "categories":[{"id":3,"name":"box"}],
    "annotations":[{"id":5,"image_id":1,"category_id":3,"segmentation":[[10,10,30,10,30,40,10,40]],
                    "bbox":[10,10,20,30],"area":600}]})");
}

TEST(Annotations, SliceHasFiftyImages) {
  const auto& src = slice();
  EXPECT_EQ(src.images.size(), 50u);
  EXPECT_EQ(src.report.dropped_no_caption, 1u);
  EXPECT_EQ(src.report.dropped_no_instances, 2u);
  EXPECT_EQ(src.report.dropped_crowd, 2u);
  EXPECT_EQ(src.report.skipped_rle, 1u);
  for (const auto& [id, e] : src.images) {
    EXPECT_FALSE(e.captions.empty());
    EXPECT_FALSE(e.instances.empty());
    EXPECT_FALSE(e.info.file_name.empty());
    EXPECT_TRUE(std::is_sorted(e.captions.begin(), e.captions.end(),
                               [](const auto& a, const auto& b) { return a.id < b.id; }));
  }
}

TEST(Annotations, FileNameFromCocoUrl) {
  const auto src = load_annotations(minimal_captions(), minimal_lvis());
  ASSERT_EQ(src.images.size(), 1u);
  EXPECT_EQ(src.images.at(1).info.file_name, "a.jpg");
  auto c = minimal_captions();
  c["images"][0].erase("file_name");
  EXPECT_EQ(load_annotations(c, minimal_lvis()).images.at(1).info.file_name, "a.jpg");
  EXPECT_EQ(src.category_name(3), "box");
}

TEST(Annotations, EmptyLists) {
  const json empty = json::parse(R"({"images":[],"annotations":[],"categories":[]})");
  const auto src = load_annotations(empty, empty);
  EXPECT_TRUE(src.images.empty());
  ASSERT_FALSE(src.report.warnings.empty());
}

TEST(Annotations, UnknownImageId) {
  auto l = minimal_lvis();
  l["annotations"][0]["image_id"] = 777;
  try {
    load_annotations(minimal_captions(), l);
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("777"), std::string::npos) << e.what();
  }
}

TEST(Annotations, MissingFieldNamesPath) {
  auto l = minimal_lvis();
  l["annotations"][0].erase("bbox");
  try {
    load_annotations(minimal_captions(), l);
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("$.annotations[0].bbox"), std::string::npos) << e.what();
  }
}

TEST(Annotations, DuplicateImageId) {
  auto c = minimal_captions();
  c["images"].push_back(c["images"][0]);
  EXPECT_THROW(load_annotations(c, minimal_lvis()), IdCollision);
  auto l = minimal_lvis();
  l["images"][0]["width"] = 99;
  EXPECT_THROW(load_annotations(minimal_captions(), l), IdCollision);
}

TEST(Annotations, MissingFile) {
  EXPECT_THROW(load_annotations(fs::path("/nonexistent/a.json"), fs::path("/nonexistent/b.json")), IoError);
}

TEST(Annotations, AreaFallsBackToBbox) {
  auto l = minimal_lvis();
  l["annotations"][0].erase("area");
  const auto src = load_annotations(minimal_captions(), l);
  EXPECT_DOUBLE_EQ(src.images.at(1).instances[0].area, 600.0);
}

TEST(Builder, ZebraImage) {
  const ImageEntry* zebra = find_caption("Two zebras seem to be embracing in the wild");
  ASSERT_NE(zebra, nullptr);
  const auto g = image_groundings(*zebra, slice());
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g.entries[0].name, "zebra");
  EXPECT_EQ(g.entries[1].name, "zebra");
  EXPECT_EQ(g.source, GroundingSource::kDataset);
}

// Bbox centre oracle: letterbox by hand, flip to y up.
TEST(Builder, GroundingCentresFollowLetterbox) {
  const ImageEntry* zebra = find_caption("Two zebras seem to be embracing in the wild");
  ASSERT_NE(zebra, nullptr);
  const double w = zebra->info.width, h = zebra->info.height;
  const double s = 512.0 / std::max(w, h);
  const double px = (512.0 - s * w) / 2, py = (512.0 - s * h) / 2;
  const auto g = image_groundings(*zebra, slice());
  for (const auto& inst : zebra->instances) {
    const double cx = (px + s * (inst.bbox[0] + inst.bbox[2] / 2)) / 100;
    const double cy = (512.0 - (py + s * (inst.bbox[1] + inst.bbox[3] / 2))) / 100;
    const bool found = std::any_of(g.entries.begin(), g.entries.end(), [&](const GroundingEntry& e) {
      return std::abs(e.center.x - cx) < 1e-9 && std::abs(e.center.y - cy) < 1e-9 && e.size &&
             std::abs(e.size->w - s * inst.bbox[2] / 100) < 1e-9;
    });
    EXPECT_TRUE(found) << inst.id;
  }
}

TEST(Builder, ZebraSilhouetteMatchesAnnotationBox) {
  const ImageEntry* zebra = find_caption("Two zebras seem to be embracing in the wild");
  ASSERT_NE(zebra, nullptr);
  const auto lb = raster::letterbox(zebra->info.width, zebra->info.height);
  for (const auto& inst : zebra->instances) {
    const auto res = raster::render_polygons(inst.segmentation, zebra->info.width, zebra->info.height);
    const auto cs = raster::label_components(res.bitmap);
    ASSERT_EQ(cs.components.size(), 1u);
    const auto& b = cs.components[0].bbox;
    const auto lo = lb.map(inst.bbox[0], inst.bbox[1]);
    const auto hi = lb.map(inst.bbox[0] + inst.bbox[2], inst.bbox[1] + inst.bbox[3]);
    EXPECT_NEAR(b.x, lo.x, 2.0);
    EXPECT_NEAR(b.y, lo.y, 2.0);
    EXPECT_NEAR(b.x + b.w, hi.x, 2.0);
    EXPECT_NEAR(b.y + b.h, hi.y, 2.0);
  }
}

TEST(Builder, CapAtThirtyLargest) {
  const ImageEntry* crowd = find_caption("A large crowd of people gathered in a plaza.");
  ASSERT_NE(crowd, nullptr);
  ASSERT_EQ(crowd->instances.size(), 45u);
  const auto g = image_groundings(*crowd, slice());
  ASSERT_EQ(g.size(), kMaxGroundings);
  // oracle: rank by (area desc, id asc), keep 30, compare the sizes kept
  std::vector<InstanceAnnotation> ranked = crowd->instances;
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.area != b.area ? a.area > b.area : a.id < b.id;
  });
  const double s = 512.0 / std::max(crowd->info.width, crowd->info.height);
  for (std::size_t i = 0; i < kMaxGroundings; ++i) {
    ASSERT_TRUE(g.entries[i].size.has_value());
    EXPECT_NEAR(g.entries[i].size->w, s * ranked[i].bbox[2] / 100, 1e-9) << i;
  }
}

TEST(Builder, SketchRendersEveryInstance) {
  const ImageEntry* crowd = find_caption("A large crowd of people gathered in a plaza.");
  ASSERT_NE(crowd, nullptr);
  const auto res = image_sketch(*crowd);
  EXPECT_EQ(raster::label_components(res.bitmap).components.size(), 45u);
}

std::map<std::string, std::string> tree_bytes(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) out[fs::relative(e.path(), root).string()] = slurp(e.path());
  }
  return out;
}

TEST(Builder, DeterministicAcrossRunsAndJobs) {
  const auto a = scratch_dir("ds-a");
  const auto b = scratch_dir("ds-b");
  const auto c = scratch_dir("ds-c");
  BuildOptions one;
  BuildOptions three;
  three.jobs = 3;
  const auto ra = build_triplets(slice(), a, one);
  build_triplets(slice(), b, one);
  build_triplets(slice(), c, three);
  EXPECT_EQ(ra.rows, 50u);
  EXPECT_EQ(ra.skipped, 0u);
  const auto ta = tree_bytes(a);
  EXPECT_EQ(ta.size(), 51u);
  EXPECT_EQ(ta, tree_bytes(b));
  EXPECT_EQ(ta, tree_bytes(c));
}

TEST(Builder, ManifestInvariants) {
  const auto out = scratch_dir("ds-inv");
  const auto rep = build_triplets(slice(), out);
  const auto rows = read_manifest(rep.manifest);
  ASSERT_EQ(rows.size(), 50u);
  EXPECT_LE(rows.size(), slice().images.size());
  std::int64_t prev = -1;
  for (const auto& r : rows) {
    EXPECT_GT(r.image_id, prev);
    prev = r.image_id;
    const auto bm = raster::read_pgm(out / r.sketch_path);
    EXPECT_EQ(bm.width, 512);
    EXPECT_EQ(bm.height, 512);
    EXPECT_LE(r.groundings.size(), kMaxGroundings);
    for (const auto& g : r.groundings.entries) {
      EXPECT_GE(g.center.x, 0.0);
      EXPECT_LE(g.center.x, kCanvasCm);
      EXPECT_GE(g.center.y, 0.0);
      EXPECT_LE(g.center.y, kCanvasCm);
    }
  }
}

TEST(Builder, OneCaptionUnlessAsked) {
  const auto out = scratch_dir("ds-caps");
  BuildOptions all;
  all.all_captions = true;
  const auto rep = build_triplets(slice(), out, all);
  std::size_t captions = 0;
  for (const auto& [id, e] : slice().images) captions += e.captions.size();
  EXPECT_EQ(rep.rows, captions);
  EXPECT_GT(rep.rows, 50u);
  const auto rows = read_manifest(rep.manifest);
  EXPECT_EQ(rows.front().caption, "Two zebras seem to be embracing in the wild");
}

TEST(Builder, LimitTakesLowestIds) {
  const auto out = scratch_dir("ds-limit");
  BuildOptions o;
  o.limit = 5;
  const auto rep = build_triplets(slice(), out, o);
  EXPECT_EQ(rep.rows, 5u);
  const auto rows = read_manifest(rep.manifest);
  EXPECT_EQ(rows.back().image_id, std::next(slice().images.begin(), 4)->first);
}

TEST(Builder, RecordJsonRoundTrip) {
  const auto out = scratch_dir("ds-json");
  const auto rep = build_triplets(slice(), out);
  for (const auto& r : read_manifest(rep.manifest)) {
    EXPECT_EQ(triplet_from_json(json::parse(to_json(r).dump())), r);
  }
}

// Needs the real public files; point the variables at them to run.
TEST(FullData, RowCountAtFullScale) {
  const char* caps = std::getenv("SKETCHGUIDE_COCO_CAPTIONS");
  const char* lvis = std::getenv("SKETCHGUIDE_LVIS");
  if (!caps || !lvis) GTEST_SKIP() << "set SKETCHGUIDE_COCO_CAPTIONS and SKETCHGUIDE_LVIS";
  const auto src = load_annotations(fs::path(caps), fs::path(lvis));
  BuildOptions o;
  o.jobs = 4;
  const auto rep = build_triplets(src, scratch_dir("ds-full"), o);
  EXPECT_GT(rep.rows, 100000u);
  EXPECT_LT(rep.rows, 130000u);
}

}  // namespace
}  // namespace sketchguide::dataset
