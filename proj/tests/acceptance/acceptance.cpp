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
// Runs the acceptance suite end to end. One PASS/FAIL line per criterion.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <nlohmann/json.hpp>

#include "sketchguide/control/branch.hpp"
#include "sketchguide/control/fourier.hpp"
#include "sketchguide/control/fusion.hpp"
#include "sketchguide/control/grad_check.hpp"
#include "sketchguide/control/name_embedding.hpp"
#include "sketchguide/dataset/builder.hpp"
#include "sketchguide/llm/gateway.hpp"
#include "sketchguide/llm/tally.hpp"
#include "sketchguide/llm/transport.hpp"
#include "sketchguide/metrics/position_size.hpp"
#include "sketchguide/metrics/visor.hpp"
#include "sketchguide/raster/components.hpp"
#include "sketchguide/raster/rasterize.hpp"
#include "sketchguide/tikz/parser.hpp"
#include "synthetic_metrics.hpp"

namespace fs = std::filesystem;
using namespace sketchguide;

namespace {

struct Paths {
  fs::path cli;
  fs::path data;
  fs::path work;
};

// Collects failures; a criterion passes when none were recorded.
class Check {
 public:
  void operator()(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 8) failures_.push_back(what);
    if (!ok) ++count_;
  }
  bool ok() const { return count_ == 0; }
  std::string summary() const {
    std::string s;
    for (const auto& f : failures_) s += (s.empty() ? "" : "; ") + f;
    if (count_ > failures_.size()) s += "; +" + std::to_string(count_ - failures_.size()) + " more";
    return s;
  }

 private:
  std::vector<std::string> failures_;
  std::size_t count_ = 0;
};

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

struct Run {
  int code = -1;
  std::string out;
};

Run run_cli(const Paths& paths, const std::string& args) {
  const std::string cmd = q(paths.cli) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

const char* kSnippets[] = {"example_person_bus.tikz", "example_truck_person.tikz", "example_person_boat.tikz"};

// 1
void corpus(const Paths& p, Check& check, double& budget) {
  budget = 1.0;
  for (const char* name : kSnippets) {
    const std::string src = slurp(p.data / "tikz" / name);
    try {
      const auto prog = tikz::parse_source(src);
      const auto r = raster::rasterize(prog);
      check(r.bitmap.width == 512 && r.bitmap.height == 512, std::string(name) + " not 512x512");
      check(r.bitmap.ink_count() > 0, std::string(name) + " blank");
      for (auto layout : {tikz::Layout::kCompact, tikz::Layout::kMultiline}) {
        check(tikz::parse_source(tikz::pretty_print(prog, layout)) == prog, std::string(name) + " round trip");
      }
    } catch (const std::exception& e) {
      check(false, std::string(name) + ": " + e.what());
    }
  }
}

tikz::SketchProgram parse(const std::string& body) {
  return tikz::parse_source("\\begin{tikzpicture}\n" + body + "\\end{tikzpicture}\n");
}

double centroid_row(const raster::SketchBitmap& bm) {
  double sum = 0;
  std::size_t n = 0;
  for (int y = 0; y < bm.height; ++y) {
    for (int x = 0; x < bm.width; ++x) {
      if (bm.at(x, y)) {
        sum += y + 0.5;
        ++n;
      }
    }
  }
  return n ? sum / static_cast<double>(n) : std::nan("");
}

// 2
void raster_analytics(const Paths&, Check& check, double& budget) {
  budget = 5.0;
  // 1 cm = 100 px: rectangles on whole pixels have exact area.
  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    const int x0 = static_cast<int>(rng() % 300), y0 = static_cast<int>(rng() % 300);
    const int w = 1 + static_cast<int>(rng() % 200), h = 1 + static_cast<int>(rng() % 200);
    std::ostringstream s;
    s << "\\fill[red] (" << x0 / 100.0 << "," << y0 / 100.0 << ") rectangle (" << (x0 + w) / 100.0 << ","
      << (y0 + h) / 100.0 << ");\n";
    const auto r = raster::rasterize(parse(s.str()));
    check(r.bitmap.ink_count() == static_cast<std::size_t>(w) * static_cast<std::size_t>(h), "rect area " + s.str());
  }
  const auto disk = raster::rasterize(parse("\\fill[red] (2.56,2.56) circle (0.5);\n"));
  const double expect = std::numbers::pi * 2500.0;
  check(std::abs(static_cast<double>(disk.bitmap.ink_count()) - expect) <= 0.02 * expect,
        "disk area " + std::to_string(disk.bitmap.ink_count()));
  // higher TikZ y gives a smaller image row
  std::uniform_real_distribution<double> u(0.3, 4.8);
  for (int t = 0; t < 100; ++t) {
    const double x = u(rng), y = u(rng);
    double y2 = u(rng);
    if (std::abs(y2 - y) < 0.05) y2 = y < 2.5 ? y + 0.2 : y - 0.2;
    const auto shape = [&](double cy) {
      std::ostringstream s;
      switch (t % 3) {
        case 0: s << "\\fill[red] (" << x << "," << cy << ") circle (0.2);\n"; break;
        case 1: s << "\\fill[red] (" << x - 0.2 << "," << cy - 0.1 << ") rectangle (" << x + 0.2 << "," << cy + 0.1 << ");\n"; break;
        default: s << "\\fill[red] (" << x << "," << cy + 0.2 << ") -- (" << x + 0.2 << "," << cy - 0.1 << ") -- (" << x - 0.2 << "," << cy - 0.1 << ") -- cycle;\n";
      }
      return s.str();
    };
    const double r1 = centroid_row(raster::rasterize(parse(shape(y))).bitmap);
    const double r2 = centroid_row(raster::rasterize(parse(shape(y2))).bitmap);
    check((y2 > y) == (r2 < r1), "y-flip at y=" + std::to_string(y) + " vs " + std::to_string(y2));
  }
}

raster::SketchBitmap random_sketch(std::mt19937_64& rng) {
  raster::SketchBitmap bm(512, 512);
  for (int b = 0; b < 1 + static_cast<int>(rng() % 4); ++b) {
    const int x0 = static_cast<int>(rng() % 450), y0 = static_cast<int>(rng() % 450);
    const int w = 10 + static_cast<int>(rng() % 50), h = 10 + static_cast<int>(rng() % 50);
    for (int y = y0; y < y0 + h; ++y) {
      for (int x = x0; x < x0 + w; ++x) bm.set(x, y);
    }
  }
  return bm;
}

GroundingSet random_groundings(std::mt19937_64& rng) {
  GroundingSet g;
  std::uniform_real_distribution<double> u(0, 5.12);
  for (int i = 0; i < 1 + static_cast<int>(rng() % 5); ++i) {
    g.entries.push_back({"obj" + std::to_string(rng() % 9), {u(rng), u(rng)}, std::nullopt});
  }
  return g;
}

// 3
void zero_init(const Paths&, Check& check, double& budget) {
  budget = 60.0;
  std::mt19937_64 rng(20);
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    control::BranchConfig cfg;
    cfg.seed = seed;
    const control::ToyControlBranch branch(cfg);
    const control::TokenFusion fusion(seed ^ 0x55);
    const auto sketch = random_sketch(rng);
    const auto residuals = branch.forward(sketch, branch.prepare(sketch, random_groundings(rng), fusion));
    check(residuals.size() == branch.stages().size(), "stage count");
    for (const auto& r : residuals) check(r.all_zero(), "non-zero residual, seed " + std::to_string(seed));
    const control::StubBackbone stub(branch, seed * 7);
    const auto combined = stub.combine(residuals);
    check(combined.size() == stub.features().size(), "combine size");
    for (std::size_t s = 0; s < combined.size() && s < stub.features().size(); ++s) {
      const auto& a = combined[s].data;
      const auto& b = stub.features()[s].data;
      check(a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0,
            "stub+branch differs, seed " + std::to_string(seed));
    }
  }
}

control::Tensor3 random_tensor(int h, int w, int c, std::uint64_t seed) {
  control::GaussianStream g(seed);
  control::Tensor3 t(h, w, c);
  for (auto& v : t.data) v = g.next();
  return t;
}

// 4
void grad_checks(const Paths&, Check& check, double& budget) {
  budget = 10.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    control::Conv2d conv(8, 6, 1);
    conv.init_random(seed);
    control::ZeroConvProblem zp(conv, random_tensor(6, 5, 8, seed + 100), random_tensor(6, 5, 6, seed + 200));
    control::GradCheckOptions o;
    o.samples = zp.num_params();
    o.step = 1e-4;
    o.seed = seed;
    const double e1 = control::grad_check(zp, o);
    check(e1 < 1e-4, "zero-conv rel err " + std::to_string(e1));

    control::GaussianStream g(seed + 300);
    Eigen::MatrixXd proj(24, 40);
    for (Eigen::Index i = 0; i < proj.size(); ++i) proj.data()[i] = g.next();
    Eigen::VectorXd f(40), t(24);
    for (auto& v : f) v = g.next();
    for (auto& v : t) v = g.next();
    control::ProjectionProblem pp(proj, f, t);
    o.samples = 200;
    const double e2 = control::grad_check(pp, o);
    check(e2 < 1e-4, "projection rel err " + std::to_string(e2));
  }
}

// 5
void fourier(const Paths&, Check& check, double& budget) {
  budget = 10.0;
  check(control::FourierConfig{}.dim == 16, "dim != 16");
  const auto o = control::fourier_embed({0, 0});
  check(o.size() == 16, "embedding size");
  for (int i = 0; i < 16 && i < o.size(); ++i) check(std::abs(o[i] - (i % 2 ? 1.0 : 0.0)) <= 1e-12, "origin[" + std::to_string(i) + "]");
  const auto e = control::fourier_embed({5.12, 0});
  const double expect[16] = {0, -1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1};
  for (int i = 0; i < 16 && i < e.size(); ++i) check(std::abs(e[i] - expect[i]) <= 1e-12, "edge[" + std::to_string(i) + "]");

  // x and y live in disjoint feature slots, so distinct grid points stay
  // apart iff the 1-D features of distinct grid values do
  constexpr int n = 513;
  std::vector<Eigen::VectorXd> xs, ys;
  for (int i = 0; i < n; ++i) {
    xs.push_back(control::fourier_embed({i / 100.0, 0.0}));
    ys.push_back(control::fourier_embed({0.0, i / 100.0}));
  }
  for (int i = 0; i < n; ++i) {
    const auto both = control::fourier_embed({i / 100.0, (n - 1 - i) / 100.0});
    for (int b = 0; b < 4; ++b) {
      check(both[4 * b] == xs[i][4 * b] && both[4 * b + 1] == xs[i][4 * b + 1], "x slots not separable");
      check(both[4 * b + 2] == ys[n - 1 - i][4 * b + 2] && both[4 * b + 3] == ys[n - 1 - i][4 * b + 3],
            "y slots not separable");
    }
  }
  double min_gap = 1e9;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double gx = 0, gy = 0;
      for (int b = 0; b < 4; ++b) {
        gx = std::max({gx, std::abs(xs[i][4 * b] - xs[j][4 * b]), std::abs(xs[i][4 * b + 1] - xs[j][4 * b + 1])});
        gy = std::max({gy, std::abs(ys[i][4 * b + 2] - ys[j][4 * b + 2]), std::abs(ys[i][4 * b + 3] - ys[j][4 * b + 3])});
      }
      min_gap = std::min({min_gap, gx, gy});
    }
  }
  check(min_gap > 1e-6, "grid collision, min gap " + std::to_string(min_gap));
}

void add_specs(testing::Population& pop, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.5, 4.6), s(0.2, 1.5);
  for (auto& g : pop.gts) {
    g.spec = std::array<metrics::ObjectSpec, 2>{metrics::ObjectSpec{{u(rng), u(rng)}, {s(rng), s(rng)}},
                                                metrics::ObjectSpec{{u(rng), u(rng)}, {s(rng), s(rng)}}};
  }
}

// 6
void metric_identities(const Paths&, Check& check, double& budget) {
  budget = 10.0;
  std::mt19937_64 rng(1000);
  for (int t = 0; t < 1000; ++t) {
    auto pop = testing::random_population(rng, 1 + static_cast<int>(rng() % 20));
    const auto v = metrics::visor(pop.records, pop.gts);
    if (v.oa_count > 0) {
      check(v.uncond == v.oa * v.cond || std::abs(v.uncond - v.oa * v.cond) <= 1e-15, "uncond != oa*cond");
      check(v.uncond_count <= v.oa_count, "uncond > oa");
    } else {
      check(std::isnan(v.cond) && v.uncond == 0.0, "undefined cond");
    }
    double sum = 0;
    for (std::size_t k = 0; k < v.visor_k.size(); ++k) {
      sum += v.visor_k[k];
      if (k) check(v.visor_k[k - 1] >= v.visor_k[k], "visor_k not monotone");
    }
    check(std::abs(sum / 4.0 - v.uncond) <= 1e-12, "sum visor_k / 4 != uncond");

    add_specs(pop, rng);
    metrics::PositionSizeTable prev{};
    for (double eps : {0.0, 0.01, 0.039, 0.08, 0.2}) {
      metrics::PositionSizeOptions o;
      o.eps_frac = eps;
      const auto cur = metrics::position_size(pop.records, pop.gts, o);
      check(cur.obj1_pos >= prev.obj1_pos && cur.obj1_size >= prev.obj1_size && cur.obj2_pos >= prev.obj2_pos &&
                cur.obj2_size >= prev.obj2_size && cur.all_pos >= prev.all_pos && cur.all_size >= prev.all_size &&
                cur.pos_and_size >= prev.pos_and_size,
            "eps monotonicity");
      prev = cur;
    }

    for (std::size_t i = 0; i < pop.records.size(); i += 3) {
      const auto& r = pop.records[i];
      const auto g = *std::find_if(pop.gts.begin(), pop.gts.end(), [&](const auto& x) { return x.prompt_id == r.prompt_id; });
      auto swapped = g;
      std::swap(swapped.object_a, swapped.object_b);
      swapped.relation = inverse(g.relation);
      check(metrics::image_correctness(r, g).full_ok() == metrics::image_correctness(r, swapped).full_ok(),
            "relation antisymmetry");
    }
  }
  struct Row {
    const char* name;
    double oa, cond, uncond;
  };
  for (const Row& row : {Row{"SD", 29.86, 62.98, 18.81}, Row{"DALL-E 2", 63.93, 59.27, 37.89}}) {
    check(std::abs(row.oa * row.cond / 100.0 - row.uncond) <= 0.05, std::string(row.name) + " table row");
  }
}

metrics::PromptGroundTruth giraffe_apple() {
  metrics::PromptGroundTruth g;
  g.prompt_id = "giraffe";
  g.object_a = "giraffe";
  g.object_b = "apple";
  g.relation = Relation::kLeft;
  g.spec = std::array<metrics::ObjectSpec, 2>{metrics::ObjectSpec{{1.5, 2.5}, {1.0, 1.0}},
                                              metrics::ObjectSpec{{3.5, 2.5}, {0.5, 0.5}}};
  return g;
}

// 7
void position_size(const Paths&, Check& check, double& budget) {
  budget = 5.0;
  check(std::abs(metrics::tolerance_px() - 19.968) < 1e-9, "tolerance " + std::to_string(metrics::tolerance_px()));
  const auto g = giraffe_apple();
  metrics::DetectionRecord exact{"giraffe", 0, {{"giraffe", 0.9, {100, 212, 100, 100}}, {"apple", 0.8, {325, 237, 50, 50}}}};
  const std::vector<metrics::PromptGroundTruth> gts{g};
  const auto t = metrics::position_size(std::vector<metrics::DetectionRecord>{exact}, gts);
  for (double v : {t.obj1_pos, t.obj1_size, t.obj2_pos, t.obj2_size, t.all_pos, t.all_size, t.pos_and_size}) {
    check(v == 1.0, "exact-at-spec column below 100%");
  }
  for (int axis = 0; axis < 2; ++axis) {
    auto off = exact;
    off.detections[0].bbox[static_cast<std::size_t>(axis)] += 25;
    const auto c = metrics::check_image(off, g);
    check(!c[0].pos_ok && c[0].size_ok, "25 px offset on axis " + std::to_string(axis));
  }
  std::mt19937_64 rng(7);
  std::normal_distribution<double> j(0, 15);
  std::vector<metrics::DetectionRecord> rs;
  std::vector<metrics::PromptGroundTruth> many;
  for (int i = 0; i < 200; ++i) {
    auto gi = g;
    gi.prompt_id = "q" + std::to_string(i);
    many.push_back(gi);
    metrics::DetectionRecord r{gi.prompt_id, 0, {}};
    for (int k = 0; k < 4; ++k) {
      r.detections.push_back({k % 2 ? "apple" : "giraffe", 0.05 + 0.9 * static_cast<double>(rng() % 100) / 100,
                              {(k % 2 ? 325 : 100) + j(rng), 212 + j(rng), 80 + j(rng), 80 + j(rng)}});
    }
    rs.push_back(r);
  }
  const auto a = metrics::position_size(rs, many);
  for (int rep = 0; rep < 10; ++rep) {
    for (auto& r : rs) std::shuffle(r.detections.begin(), r.detections.end(), rng);
    std::shuffle(rs.begin(), rs.end(), rng);
    const auto b = metrics::position_size(rs, many);
    check(a.obj1_pos == b.obj1_pos && a.obj1_size == b.obj1_size && a.obj2_pos == b.obj2_pos &&
              a.obj2_size == b.obj2_size && a.all_pos == b.all_pos && a.all_size == b.all_size &&
              a.pos_and_size == b.pos_and_size,
          "order dependence");
  }
}

// 8
void dataset_determinism(const Paths& p, Check& check, double& budget) {
  budget = 30.0;
  const fs::path d1 = p.work / "ds1", d2 = p.work / "ds2";
  fs::remove_all(d1);
  fs::remove_all(d2);
  const std::string base = "build-dataset --coco-captions " + q(p.data / "coco_slice" / "captions.json") + " --lvis " +
                           q(p.data / "coco_slice" / "lvis.json") + " --out ";
  const auto r1 = run_cli(p, base + q(d1));
  const auto r2 = run_cli(p, base + q(d2) + " --jobs 3");
  check(r1.code == 0 && r2.code == 0, "build-dataset failed: " + r1.out + r2.out);
  if (!check.ok()) return;
  check(slurp(d1 / "manifest.jsonl") == slurp(d2 / "manifest.jsonl"), "manifests differ");
  std::size_t files = 0;
  for (const auto& e : fs::recursive_directory_iterator(d1)) {
    if (!e.is_regular_file()) continue;
    ++files;
    check(slurp(e.path()) == slurp(d2 / fs::relative(e.path(), d1)), "differs: " + e.path().string());
  }
  const auto rows = dataset::read_manifest(d1 / "manifest.jsonl");
  check(rows.size() == 50, "rows " + std::to_string(rows.size()));
  check(files == rows.size() + 1, "file count " + std::to_string(files));
  for (const auto& row : rows) {
    check(row.groundings.size() <= 30, "more than 30 groundings");
    check(fs::exists(d1 / row.sketch_path), "missing " + row.sketch_path);
    for (const auto& g : row.groundings.entries) {
      check(g.center.x >= 0 && g.center.x <= 5.12 && g.center.y >= 0 && g.center.y <= 5.12, "center off canvas");
    }
  }
}

// 9
void tally_replay(const Paths& p, Check& check, double& budget) {
  budget = 10.0;
  const std::size_t before = llm::network_request_count();
  struct Expect {
    const char* dir;
    std::size_t failed, non_runnable, empty, ok;
  };
  for (const Expect& ex : {Expect{"tally_gpt4", 5, 5, 0, 93}, Expect{"tally_llama", 100, 40, 60, 0}}) {
    const fs::path dir = p.data / "fixtures" / ex.dir;
    llm::FixtureTransport transport(dir);
    std::vector<llm::TallyEntry> entries;
    for (const auto& e : fs::directory_iterator(dir)) {
      const auto j = nlohmann::json::parse(slurp(e.path()));
      const std::string prompt = j.at("prompt");
      entries.push_back({j.at("query_id"), llm::classify_response(prompt, transport.complete(prompt)).status});
    }
    const auto row = llm::tally(entries);
    check(row.queries == 100, std::string(ex.dir) + " queries");
    check(row.failed_runs == ex.failed, std::string(ex.dir) + " failed " + std::to_string(row.failed_runs));
    check(row.non_runnable == ex.non_runnable, std::string(ex.dir) + " non-runnable");
    check(row.empty == ex.empty, std::string(ex.dir) + " empty");
    check(row.ok == ex.ok, std::string(ex.dir) + " ok");
  }
  const auto cli = run_cli(p, "tally --fixtures " + q(p.data / "fixtures" / "tally_gpt4") + " --annotations " +
                                  q(p.data / "fixtures" / "tally_gpt4_annotations.json") + " --label GPT-4");
  check(cli.code == 0 && cli.out.find("GPT-4,100,3,5,") != std::string::npos, "cli tally: " + cli.out);
  check(llm::network_request_count() == before, "network I/O during replay");
}

// 10
void pipeline_smoke(const Paths& p, Check& check, double& budget) {
  budget = 10.0;
  const fs::path run = p.work / "pipeline";
  fs::remove_all(run);
  const auto r = run_cli(p, "pipeline --spec \"tv above surfboard\" --replay " + q(p.data / "fixtures" / "replay") +
                                " --run-dir " + q(run));
  check(r.code == 0, "pipeline failed: " + r.out);
  if (!check.ok()) return;
  const auto ground = nlohmann::json::parse(slurp(run / "ground.json"));
  const auto groundings = nlohmann::json::parse(slurp(run / "groundings.json"));
  check(ground.at("components").size() == 2, "component count " + std::to_string(ground.at("components").size()));
  std::map<std::string, double> row_of, up_of;
  for (const auto& m : ground.at("matches")) {
    check(!m.at("component_id").is_null(), "unmatched grounding");
    if (m.at("component_id").is_null()) continue;
    check(m.at("distance_px").get<double>() < 30.0, "distance " + m.at("distance_px").dump());
    for (const auto& c : ground.at("components")) {
      if (c.at("id") == m.at("component_id")) row_of[m.at("name")] = c.at("centroid_px")[1];
    }
  }
  for (const auto& g : groundings.at("entries")) up_of[g.at("name")] = g.at("center")[1];
  check(row_of.count("tv") && row_of.count("surfboard"), "tv/surfboard not matched");
  if (!check.ok()) return;
  check(row_of["tv"] < row_of["surfboard"], "tv is not above surfboard in image rows");
  // back to y-up
  check(512 - row_of["tv"] > 512 - row_of["surfboard"] && up_of["tv"] > up_of["surfboard"], "above after y-flip");
}

}  // namespace

int main(int argc, char** argv) {
  Paths paths;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string key = argv[i];
    if (key == "--cli") paths.cli = argv[i + 1];
    else if (key == "--data") paths.data = argv[i + 1];
    else if (key == "--work") paths.work = argv[i + 1];
  }
  if (paths.cli.empty() || paths.data.empty() || paths.work.empty()) {
    std::cerr << "usage: acceptance --cli EXE --data DIR --work DIR\n";
    return 2;
  }
  fs::create_directories(paths.work);

  using Fn = std::function<void(const Paths&, Check&, double&)>;
  const std::vector<std::pair<const char*, Fn>> criteria = {
      {"golden corpus compiles and round-trips", corpus},
      {"rasterizer analytics", raster_analytics},
      {"zero-init identity", zero_init},
      {"gradient checks", grad_checks},
      {"fourier embedding", fourier},
      {"metric identities", metric_identities},
      {"position/size thresholds", position_size},
      {"dataset determinism", dataset_determinism},
      {"hermetic tally replay", tally_replay},
      {"end-to-end pipeline", pipeline_smoke},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    Check check;
    double budget = 0;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      fn(paths, check, budget);
    } catch (const std::exception& e) {
      check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    check(secs < budget, "took " + std::to_string(secs) + " s, budget " + std::to_string(budget) + " s");
    std::printf("%s %2d %-40s %7.3f s%s%s\n", check.ok() ? "PASS" : "FAIL", index, name, secs,
                check.ok() ? "" : "  ", check.summary().c_str());
    failed += !check.ok();
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
