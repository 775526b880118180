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

#include <atomic>
#include <thread>

#include <httplib.h>

#include "sketchguide/llm/gateway.hpp"
#include "sketchguide/llm/prompt.hpp"
#include "sketchguide/llm/response.hpp"
#include "sketchguide/llm/tally.hpp"
#include "sketchguide/llm/transport.hpp"
#include "sketchguide/raster/components.hpp"
#include "sketchguide/raster/rasterize.hpp"
#include "test_support.hpp"

namespace sketchguide::llm {
namespace {

using sketchguide::testing::data_dir;
using sketchguide::testing::scratch_dir;
using sketchguide::testing::slurp;

const std::string kTvSurfboardPrompt =
    "Draw a tv above a surfboard using TikZ without adding labels. The entire image should be "
    "inside a 5.12*5.12 bounding box. First, you need to provide a step-by-step drawing guide. "
    "Then, you need to generate the code following the guide. Finally, summarize the drawing "
    "with: Summary of the drawing, {`object name': $OBJECT_NAME, 'position': $(X, Y)} Make sure "
    "each object is separted and filled with red color.";

const std::string kGiraffeApplePrompt =
    "Draw a giraffe to the left of an apple. The entire image should be 5.12*5.12. The giraffe "
    "should be centered at the position (1.5, 2.5) of size (1.0, 1.0). The apple should be "
    "centered at position (3.5, 2.5) of size (0.5, 0.5).";

TEST(Prompt, RelationPromptMatchesListing) {
  PromptSpec spec;
  spec.objects = {{"tv", std::nullopt, std::nullopt}, {"surfboard", std::nullopt, std::nullopt}};
  spec.relation = Relation::kAbove;
  const std::string p = build_prompt(spec);
  EXPECT_EQ(p.rfind("Draw a tv above a surfboard using TikZ without adding labels.", 0), 0u);
  EXPECT_EQ(p, kTvSurfboardPrompt);
  EXPECT_EQ(build_prompt(parse_spec_text("tv above surfboard")), kTvSurfboardPrompt);
}

TEST(Prompt, PositionSizePromptVerbatim) {
  PromptSpec spec;
  spec.objects = {{"giraffe", Point{1.5, 2.5}, Size2{1.0, 1.0}}, {"apple", Point{3.5, 2.5}, Size2{0.5, 0.5}}};
  spec.relation = Relation::kLeft;
  EXPECT_TRUE(spec.is_positional());
  EXPECT_EQ(build_prompt(spec), kGiraffeApplePrompt);
}

TEST(Prompt, JsonSpecRoundTrip) {
  const auto j = nlohmann::json::parse(R"({"objects":[{"name":"giraffe","center":[1.5,2.5],"size":[1,1]},
      {"name":"apple","center":[3.5,2.5],"size":[0.5,0.5]}],"relation":"left"})");
  const auto spec = prompt_spec_from_json(j);
  EXPECT_EQ(build_prompt(spec), kGiraffeApplePrompt);
  EXPECT_EQ(build_prompt(prompt_spec_from_json(nlohmann::json::parse(to_json(spec).dump()))),
            kGiraffeApplePrompt);
}

TEST(Prompt, Invalid) {
  EXPECT_THROW(build_prompt(PromptSpec{}), InvalidSpec);
  PromptSpec three;
  three.objects = {{"a", {}, {}}, {"b", {}, {}}, {"c", {}, {}}};
  three.relation = Relation::kLeft;
  EXPECT_THROW(validate(three), InvalidSpec);
  PromptSpec outside;
  outside.objects = {{"a", Point{6, 1}, std::nullopt}};
  EXPECT_THROW(validate(outside), InvalidSpec);
  PromptSpec mixed;
  mixed.objects = {{"a", Point{1, 1}, std::nullopt}, {"b", std::nullopt, std::nullopt}};
  EXPECT_THROW(validate(mixed), InvalidSpec);
  EXPECT_THROW(parse_spec_text(""), InvalidSpec);
}

TEST(Prompt, Articles) {
  EXPECT_EQ(with_article("apple"), "an apple");
  EXPECT_EQ(with_article("tv"), "a tv");
}

TEST(Prompt, SpecTextVariants) {
  const auto s = parse_spec_text("giraffe left of apple");
  ASSERT_EQ(s.objects.size(), 2u);
  EXPECT_EQ(s.relation, Relation::kLeft);
  EXPECT_EQ(s.objects[1].name, "apple");
  const auto list = parse_spec_text("cat, dog");
  EXPECT_FALSE(list.relation.has_value());
  EXPECT_EQ(list.objects.size(), 2u);
}

TEST(Prompt, Deterministic) {
  const auto spec = parse_spec_text("bird below bus");
  EXPECT_EQ(build_prompt(spec), build_prompt(spec));
}

TEST(Template, ParseAndRender) {
  const auto t = PromptTemplate::parse("# comment\ngreet: hello {{name}}, {{name}}!\n");
  EXPECT_EQ(t.render("greet", {{"name", "x"}}), "hello x, x!");
}

const std::string kPersonBoatResponse =
    "Here you go.\n\\begin{tikzpicture}\n\\draw[red, fill=red] (1,2) circle (0.25);\n"
    "\\draw[red] (1,2) -- (1,1);\n\\draw[red] (1,1.5) -- (0.5,1.5);\n\\draw[red] (1,1.5) -- (1.5,1.5);\n"
    "\\draw[red] (1,1) -- (0.5,0.5);\n\\draw[red] (1,1) -- (1.5,0.5);\n"
    "\\draw[red, fill=red] (3.5,0.5) -- (4.5,0.5) -- (4.12,1) -- (3.88,1) -- cycle;\n"
    "\\useasboundingbox (0,0) rectangle (5.12,5.12);\n\\end{tikzpicture}\n"
    "Summary of the drawing, {'object name': person, 'position': (1, 1.5)} "
    "{'object name': boat, 'position': (4, 0.75)}";

TEST(Response, CodeAndSummary) {
  const auto r = parse_response(kPersonBoatResponse);
  ASSERT_TRUE(r.code_block.has_value());
  EXPECT_EQ(r.code_block->rfind("\\begin{tikzpicture}", 0), 0u);
  ASSERT_TRUE(r.summary.has_value());
  ASSERT_EQ(r.summary->size(), 2u);
  EXPECT_EQ((*r.summary)[0], (SummaryEntry{"person", {1, 1.5}}));
  EXPECT_EQ((*r.summary)[1], (SummaryEntry{"boat", {4, 0.75}}));
}

TEST(Response, Empty) {
  const auto r = parse_response("");
  EXPECT_FALSE(r.code_block.has_value());
  EXPECT_FALSE(r.summary.has_value());
}

TEST(Response, CodeWithoutSummary) {
  const auto r = parse_response("\\begin{tikzpicture}\\fill[red] (1,1) circle (1);\\end{tikzpicture}");
  EXPECT_TRUE(r.code_block.has_value());
  EXPECT_FALSE(r.summary.has_value());
  EXPECT_EQ(classify_response("p", r.raw_text).status, QueryStatus::kNoSummary);
}

TEST(Response, ForgivingSummaryFormats) {
  const auto r = parse_response(
      "summary of the drawing:\n{`object name': \"red car\", 'position': $(1.25, -0)$},\n"
      "{\"object name\": 'dog', \"position\": [3, 4]},");
  ASSERT_TRUE(r.summary.has_value());
  ASSERT_EQ(r.summary->size(), 2u);
  EXPECT_EQ((*r.summary)[0].name, "red car");
  EXPECT_EQ((*r.summary)[0].position, (Point{1.25, 0}));
  EXPECT_EQ((*r.summary)[1].position, (Point{3, 4}));
}

TEST(Response, HeaderWithoutEntries) {
  EXPECT_FALSE(parse_response("Summary of the drawing: nothing").summary.has_value());
}

TEST(Classify, Statuses) {
  EXPECT_EQ(classify_response("p", kPersonBoatResponse).status, QueryStatus::kOk);
  EXPECT_EQ(classify_response("p", "I cannot draw that.").status, QueryStatus::kEmpty);
  EXPECT_EQ(classify_response("p", "\\begin{tikzpicture}\\end{tikzpicture}").status, QueryStatus::kEmpty);
  const auto bad = classify_response("p", "\\begin{tikzpicture}\\fill (1,1) circle (0.5;\\end{tikzpicture}");
  EXPECT_EQ(bad.status, QueryStatus::kNonRunnable);
  ASSERT_TRUE(bad.parse_error.has_value());
  EXPECT_EQ(bad.parse_error->code, "MalformedCommand");
  const auto ok = classify_response("p", kPersonBoatResponse);
  ASSERT_TRUE(ok.groundings.has_value());
  EXPECT_EQ(ok.groundings->source, GroundingSource::kLlm);
  EXPECT_EQ(query_status_from_string("non_runnable"), QueryStatus::kNonRunnable);
}

TEST(Transport, Sha256) {
  EXPECT_EQ(prompt_sha256(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(prompt_sha256("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Transport, FixtureReplayIsHermetic) {
  const std::size_t before = network_request_count();
  FixtureTransport t(data_dir() / "fixtures" / "replay");
  EXPECT_TRUE(t.contains(prompt_sha256(kTvSurfboardPrompt)));
  const auto result = run_query(parse_spec_text("tv above surfboard"), t);
  EXPECT_EQ(result.status, QueryStatus::kOk);
  ASSERT_TRUE(result.groundings.has_value());
  EXPECT_EQ(result.groundings->size(), 2u);
  EXPECT_EQ(network_request_count(), before);
  EXPECT_THROW(t.complete("unrecorded prompt"), TransportError);
}

TEST(Transport, ReplayGroundingsLandOnCanvas) {
  for (const char* set : {"replay", "tally_gpt4"}) {
    FixtureTransport t(data_dir() / "fixtures" / set);
    for (const auto& e : std::filesystem::directory_iterator(data_dir() / "fixtures" / set)) {
      const auto j = nlohmann::json::parse(slurp(e.path()));
      const auto r = classify_response(j["prompt"], j["raw_response"].get<std::string>());
      if (!r.groundings) continue;
      const auto raster = raster::rasterize(*r.program);
      for (const auto& g : r.groundings->entries) {
        const double px = g.center.x * 100, py = raster.bitmap.height - g.center.y * 100;
        EXPECT_GE(px, 0);
        EXPECT_LE(px, 512);
        EXPECT_GE(py, 0);
        EXPECT_LE(py, 512);
      }
    }
  }
}

TEST(Transport, MissingFixtureDir) {
  EXPECT_THROW(FixtureTransport("/nonexistent/fixtures"), IoError);
}

TEST(Transport, InvalidFixture) {
  const auto dir = scratch_dir("badfix");
  std::ofstream(dir / "x.json") << "{\"prompt_sha256\": 3}";
  EXPECT_THROW(FixtureTransport{dir}, TransportError);
}

TEST(Transport, RecordThenReplay) {
  class Echo : public Transport {
   public:
    std::string complete(const std::string& prompt) override { return "echo:" + prompt; }
  };
  const auto dir = scratch_dir("record");
  Echo echo;
  RecordingTransport rec(echo, dir);
  EXPECT_EQ(rec.complete("hello"), "echo:hello");
  FixtureTransport replay(dir);
  EXPECT_EQ(replay.size(), 1u);
  EXPECT_EQ(replay.complete("hello"), "echo:hello");
}

TEST(Transport, EnvConfigRequired) {
  ::unsetenv("SKETCHGUIDE_LLM_BASE_URL");
  ::unsetenv("SKETCHGUIDE_LLM_MODEL");
  try {
    HttpConfig::from_env();
    FAIL();
  } catch (const TransportError& e) {
    EXPECT_EQ(e.code(), "MissingConfig");
  }
}

class LocalServer : public ::testing::Test {
 protected:
  void SetUp() override {
    port_ = server_.bind_to_any_port("127.0.0.1");
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  void TearDown() override {
    server_.stop();
    thread_.join();
  }
  HttpConfig config() const {
    HttpConfig c;
    c.base_url = "http://127.0.0.1:" + std::to_string(port_) + "/v1";
    c.model = "test-model";
    c.api_key = "k";
    c.initial_backoff = std::chrono::milliseconds(1);
    c.timeout = std::chrono::seconds(5);
    return c;
  }
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

TEST_F(LocalServer, RetriesThenSucceeds) {
  std::atomic<int> calls{0};
  std::string seen_auth, seen_model;
  server_.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
    if (++calls < 3) {
      res.status = calls == 1 ? 503 : 429;
      return;
    }
    seen_auth = req.get_header_value("Authorization");
    seen_model = nlohmann::json::parse(req.body)["model"];
    res.set_content(R"({"choices":[{"message":{"role":"assistant","content":"drawn"}}]})",
                    "application/json");
  });
  const std::size_t before = network_request_count();
  HttpTransport t(config());
  EXPECT_EQ(t.complete("p"), "drawn");
  EXPECT_EQ(calls.load(), 3);
  EXPECT_EQ(network_request_count() - before, 3u);
  EXPECT_EQ(seen_auth, "Bearer k");
  EXPECT_EQ(seen_model, "test-model");
}

TEST_F(LocalServer, GivesUp) {
  server_.Post("/v1/chat/completions", [](const httplib::Request&, httplib::Response& res) { res.status = 500; });
  HttpTransport t(config());
  try {
    t.complete("p");
    FAIL();
  } catch (const TransportError& e) {
    EXPECT_EQ(e.code(), "RetriesExhausted");
  }
}

TEST_F(LocalServer, ClientErrorFailsAtOnce) {
  std::atomic<int> calls{0};
  server_.Post("/v1/chat/completions", [&](const httplib::Request&, httplib::Response& res) {
    ++calls;
    res.status = 401;
  });
  HttpTransport t(config());
  try {
    t.complete("p");
    FAIL();
  } catch (const TransportError& e) {
    EXPECT_EQ(e.code(), "HttpStatus");
  }
  EXPECT_EQ(calls.load(), 1);
}

std::vector<TallyEntry> replay_statuses(const std::string& set) {
  std::vector<TallyEntry> out;
  for (const auto& e : std::filesystem::directory_iterator(data_dir() / "fixtures" / set)) {
    const auto j = nlohmann::json::parse(slurp(e.path()));
    out.push_back({j["query_id"], classify_response(j["prompt"], j["raw_response"].get<std::string>()).status});
  }
  return out;
}

TEST(Tally, Gpt4StyleFixtures) {
  const auto entries = replay_statuses("tally_gpt4");
  const auto ann = load_instruction_annotations(data_dir() / "fixtures" / "tally_gpt4_annotations.json");
  const auto row = tally(entries, ann, "GPT-4");
  EXPECT_EQ(row.queries, 100u);
  EXPECT_EQ(row.non_runnable, 5u);
  EXPECT_EQ(row.failed_runs, 5u);
  EXPECT_EQ(row.no_summary, 2u);
  EXPECT_EQ(row.ok, 93u);
  EXPECT_EQ(row.instruction_errors, 3u);
  EXPECT_EQ(row.instruction_errors_runnable, 3u);
}

TEST(Tally, LlamaStyleFixtures) {
  const auto row = tally(replay_statuses("tally_llama"), std::nullopt, "LLaMA");
  EXPECT_EQ(row.failed_runs, 100u);
  EXPECT_FALSE(row.instruction_errors.has_value());
  const std::vector<TallyRow> rows{row};
  const std::string csv = tally_csv(rows);
  EXPECT_NE(csv.find("LLaMA,100,n/a,100,"), std::string::npos) << csv;
}

TEST(Tally, AllOkNoAnnotations) {
  std::vector<TallyEntry> e;
  for (int i = 0; i < 100; ++i) e.push_back({"q" + std::to_string(i), QueryStatus::kOk});
  const std::vector<TallyRow> rows{tally(e)};
  EXPECT_EQ(rows[0].failed_runs, 0u);
  const std::string csv = tally_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "model,queries,# of errors w.r.t instructions,# of empty image or non-runnable code,"
            "ok,no_summary,empty,non_runnable,errors among runnable");
  EXPECT_NE(csv.find(",100,n/a,0,100,"), std::string::npos) << csv;
}

TEST(Tally, BadAnnotationFile) {
  const auto dir = scratch_dir("ann");
  std::ofstream(dir / "a.json") << "[1,2]";
  EXPECT_THROW(load_instruction_annotations(dir / "a.json"), Error);
}

}  // namespace
}  // namespace sketchguide::llm
