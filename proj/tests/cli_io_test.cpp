// Copyright 2026 The rqcm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rqcm/cli_config.hpp"
#include "rqcm/io.hpp"

#include <gtest/gtest.h>

using namespace rqcm;

TEST(Csv, FieldQuoting) {
    EXPECT_EQ(csv_field(ojson("plain")), "plain");
    EXPECT_EQ(csv_field(ojson("a,b")), "\"a,b\"");
    EXPECT_EQ(csv_field(ojson("say \"hi\"")), "\"say \"\"hi\"\"\"");
    EXPECT_EQ(csv_field(ojson(nullptr)), "");
    EXPECT_EQ(csv_field(ojson(0.1)), "0.1");
    EXPECT_EQ(csv_field(ojson(true)), "true");
    EXPECT_EQ(csv_field(ojson::array({1, 2})), "\"[1,2]\"");
}

TEST(RunRecord, CsvAndJsonLayout) {
    RunRecord rec("demo", ojson{{"n", 3}}, 42, {"n", "value"});
    rec.add_row(Provenance::Exact, {3, 0.25});
    rec.add_row(Provenance::MonteCarlo, {3, "x,y"});
    rec.summary()["note"] = "ok";
    const std::string csv = rec.csv();
    EXPECT_EQ(csv,
              "# rqcm 0.1.0 schema 1 command demo config {\"n\":3}\n"
              "provenance,seed,n,value\n"
              "exact,42,3,0.25\n"
              "monte-carlo,42,3,\"x,y\"\n");
    const auto j = rec.to_json();
    EXPECT_EQ(j["schema"], kSchemaVersion);
    EXPECT_EQ(j["columns"], ojson({"provenance", "seed", "n", "value"}));
    ASSERT_EQ(j["rows"].size(), 2u);
    EXPECT_EQ(j["rows"][0]["provenance"], "exact");
    EXPECT_EQ(j["rows"][1]["value"], "x,y");
    EXPECT_EQ(j["summary"]["note"], "ok");
    EXPECT_EQ(rec.render(OutputFormat::Csv), csv);
    EXPECT_EQ(rec.write("-", OutputFormat::Json), j.dump(2) + "\n");
}

TEST(RunRecord, RejectsShortRows) {
    RunRecord rec("demo", ojson::object(), 1, {"a", "b"});
    EXPECT_THROW(rec.add_row(Provenance::Formula, {1}), InputError);
    EXPECT_THROW(parse_format("xml"), InputError);
    EXPECT_EQ(parse_format("json"), OutputFormat::Json);
}

namespace {

struct Fixture {
    CLI::App app{"t"};
    CLI::App* sub = app.add_subcommand("run");
    int n = 4;
    std::vector<int> d;
    bool spectrum = false;
    std::string mode = "pair";

    Fixture() {
        sub->add_option("--n", n)->capture_default_str();
        sub->add_option("--d", d);
        sub->add_flag("--spectrum", spectrum);
        sub->add_option("--mode", mode)->capture_default_str();
    }

    void parse(std::vector<std::string> args) {
        std::reverse(args.begin(), args.end());
        args.push_back("run");
        app.parse(args);
    }
};

}  // namespace

TEST(Config, FillsOnlyMissingOptions) {
    Fixture f;
    f.parse({"--n", "7"});
    cli::apply_config(*f.sub, nlohmann::json{{"n", 9}, {"d", {1, 2, 3}}, {"spectrum", true}, {"mode", "parseval"}});
    EXPECT_EQ(f.n, 7);  // command line wins
    EXPECT_EQ(f.d, (std::vector<int>{1, 2, 3}));
    EXPECT_TRUE(f.spectrum);
    EXPECT_EQ(f.mode, "parseval");
}

TEST(Config, UnknownAndNestedKeysAreErrors) {
    Fixture f;
    f.parse({});
    EXPECT_THROW(cli::apply_config(*f.sub, nlohmann::json{{"bogus", 1}}), InputError);
    EXPECT_THROW(cli::apply_config(*f.sub, nlohmann::json{{"config", "x.json"}}), InputError);
    EXPECT_THROW(cli::apply_config(*f.sub, nlohmann::json{{"n", nlohmann::json::object()}}), InputError);
}

TEST(Config, ResolvedConfigKeepsTypes) {
    Fixture f;
    f.parse({"--d", "5", "--d", "6", "--mode", "010"});
    const auto r = cli::resolved_config(*f.sub);
    EXPECT_EQ(r["subcommand"], "run");
    EXPECT_EQ(r["n"], 4);
    EXPECT_EQ(r["d"], ojson({5, 6}));
    EXPECT_EQ(r["spectrum"], false);
    EXPECT_EQ(r["mode"], "010");  // text stays text
}
