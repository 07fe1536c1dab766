// Copyright 2026 The revcox Authors
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

#include "revcox/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"
#include "oracles.hpp"

using namespace revcox;
using namespace revcox::cli;

namespace {

const std::string kSamples = REVCOX_SAMPLES_DIR;

std::string sample(const std::string &name) {
    return kSamples + "/" + name;
}

struct CliRun {
    int status;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string> &args) {
    std::ostringstream out, err;
    int status = dispatch(args, out, err);
    return {status, out.str(), err.str()};
}

std::string temp_path(const std::string &name) {
    return (std::filesystem::temp_directory_path() / ("revcox_cli_test_" + name)).string();
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json read_report(const std::string &path) {
    return json::parse(read_file(path));
}

std::string write_temp(const std::string &name, const std::string &contents) {
    std::string path = temp_path(name);
    std::ofstream(path, std::ios::binary) << contents;
    return path;
}

}  // namespace

TEST(cli, parse_pipeline) {
    auto doc = parse_pipeline(
        R"({"format_version":1,"registers":[1,1,1],"functions":[{"table":["0","1"]},{"table":["0","1"]}]})");
    ASSERT_EQ(doc.spec, PipelineSpec({1, 1, 1}, {identity_fn(1), identity_fn(1)}));
    ASSERT_FALSE(doc.name.has_value());

    ASSERT_THROW(parse_pipeline(R"({"format_version":1,"registers":[1,1],"functions":[{"table":["0","1","1"]}]})"),
                 ValidationError);

    auto chained = parse_pipeline(
        R"({"format_version":1,"registers":[2,1,4],"functions":[{"table":["0","0","0","1"]},{"table":["5","A"]}],"name":"x"})");
    ASSERT_EQ(chained.spec.widths(), (std::vector<unsigned>{2, 1, 4}));
    ASSERT_EQ(chained.spec.step(2).table(), (std::vector<uint64_t>{5, 10}));
    ASSERT_EQ(chained.name, "x");
}

TEST(cli, parse_pipeline_errors) {
    auto expect_parse_error = [](const std::string &text, const std::string &needle) {
        try {
            parse_pipeline(text);
            FAIL() << "accepted: " << text;
        } catch (const ParseError &e) {
            ASSERT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
        }
    };
    expect_parse_error("{\"format_version\":1,\n\"registers\":[1,1,", "line 2");
    expect_parse_error(R"({"format_version":1,"registers":[1,1],"functions":[{"table":["0","1"]}],"extra":0})",
                       "unknown field \"extra\"");
    expect_parse_error(R"({"format_version":1,"registers":[1,1],"functions":[{"table":["0","1"],"arity":1}]})",
                       "unknown field \"arity\"");
    expect_parse_error(R"({"format_version":1,"registers":[1,1],"functions":[{"table":["0","x"]}]})",
                       "functions[0].table[1]");
    expect_parse_error(R"({"format_version":1,"registers":[1,1],"functions":[{"table":[0,1]}]})", "hex string");
    expect_parse_error(R"({"registers":[1,1],"functions":[{"table":["0","1"]}]})", "format_version");
    expect_parse_error(R"([1,2])", "object");

    auto expect_validation_error = [](const std::string &text, const std::string &needle) {
        try {
            parse_pipeline(text);
            FAIL() << "accepted: " << text;
        } catch (const ValidationError &e) {
            ASSERT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
        }
    };
    expect_validation_error(R"({"format_version":2,"registers":[1,1],"functions":[{"table":["0","1"]}]})",
                            "unsupported version");
    expect_validation_error(R"({"format_version":1,"registers":[1,1],"functions":[{"table":["0","2"]}]})",
                            "index 1");
    expect_validation_error(R"({"format_version":1,"registers":[1,0],"functions":[{"table":["0","0"]}]})",
                            "registers[1]");
    expect_validation_error(R"({"format_version":1,"registers":[1,1,1],"functions":[{"table":["0","1"]}]})",
                            "need 2 functions");
}

TEST(cli, emit_parse_round_trip) {
    for (uint64_t seed = 0; seed < 40; seed++) {
        std::vector<unsigned> widths;
        for (size_t r = 0; r < 2 + seed % 3; r++) {
            widths.push_back(1 + static_cast<unsigned>((seed + r * 5) % 4));
        }
        std::vector<BoolFunc> steps;
        for (size_t i = 0; i + 1 < widths.size(); i++) {
            steps.push_back(random_fn(widths[i], widths[i + 1], seed * 13 + i));
        }
        PipelineSpec spec(widths, steps);
        std::optional<std::string> name;
        if (seed % 2) {
            name = "pipeline " + std::to_string(seed);
        }
        auto doc = parse_pipeline(emit_pipeline(spec, name));
        ASSERT_EQ(doc.spec, spec);
        ASSERT_EQ(doc.name, name);
    }
}

TEST(cli, samples_parse) {
    for (const char *name : {"p1_identity.json", "three_step_identity.json", "zero_first_step.json", "and_then_not.json"}) {
        ASSERT_NO_THROW(parse_pipeline_file(sample(name))) << name;
    }
}

TEST(cli, parse_symbol) {
    ASSERT_EQ(parse_symbol("f", 2), 0u);
    ASSERT_EQ(parse_symbol("g", 2), 1u);
    ASSERT_EQ(parse_symbol("h", 3), 2u);
    ASSERT_EQ(parse_symbol("r", 4), 3u);
    ASSERT_EQ(parse_symbol("f1", 2), 0u);
    ASSERT_EQ(parse_symbol("f12", 12), 11u);
    ASSERT_THROW(parse_symbol("h", 2), ValidationError);
    ASSERT_THROW(parse_symbol("f0", 2), ValidationError);
    ASSERT_THROW(parse_symbol("x", 2), ValidationError);
}

TEST(cli, verify_p1) {
    std::string report = temp_path("verify_p1.json");
    CliRun r = run({"verify", sample("p1_identity.json"), "--json", report});
    ASSERT_EQ(r.status, 0) << r.err;
    ASSERT_NE(r.out.find("verdict: CONFIRMED"), std::string::npos);
    json j = read_report(report);
    ASSERT_EQ(j["results"]["verdict"], "CONFIRMED");
    ASSERT_EQ(j["results"]["concrete_order"], 8);
    ASSERT_EQ(j["results"]["abstract_order"], 8);
    ASSERT_EQ(j["report_version"], kReportVersion);
    ASSERT_EQ(j["input_digest"], digest(read_file(sample("p1_identity.json"))));
    ASSERT_EQ(j["command"][0], "verify");
}

TEST(cli, verify_bound_and_degenerate) {
    std::string report = temp_path("verify_three.json");
    CliRun r = run({"verify", sample("three_step_identity.json"), "--coset-cap", "5000", "--json", report});
    ASSERT_EQ(r.status, 2);
    json j = read_report(report);
    ASSERT_EQ(j["results"]["verdict"], "BOUND_EXCEEDED");
    ASSERT_EQ(j["results"]["concrete_order"], 64);
    ASSERT_TRUE(j["results"]["abstract_order"].is_null());
    ASSERT_TRUE(j["results"]["relations_hold"].get<bool>());

    r = run({"verify", sample("zero_first_step.json")});
    ASSERT_EQ(r.status, 0);
    ASSERT_NE(r.out.find("DEGENERATE"), std::string::npos);

    r = run({"verify", sample("three_step_identity.json"), "--element-cap", "10"});
    ASSERT_EQ(r.status, 2);
}

TEST(cli, run) {
    std::string report = temp_path("run.json");
    CliRun r = run({"run", sample("p1_identity.json"), "--input", "1", "--json", report});
    ASSERT_EQ(r.status, 0) << r.err;
    ASSERT_NE(r.out.find("trace: (1,1,1)"), std::string::npos) << r.out;
    ASSERT_NE(r.out.find("restores (1,0,0)"), std::string::npos) << r.out;
    json j = read_report(report);
    ASSERT_EQ(j["results"]["trace"], json({"1", "1", "1"}));
    ASSERT_EQ(j["results"]["restored"], json({"1", "0", "0"}));
    ASSERT_TRUE(j["results"]["restored_ok"].get<bool>());

    r = run({"run", sample("and_then_not.json"), "--input", "3"});
    ASSERT_EQ(r.status, 0);
    ASSERT_NE(r.out.find("trace: (3,1,2)"), std::string::npos) << r.out;

    ASSERT_EQ(run({"run", sample("p1_identity.json"), "--input", "2"}).status, 1);
    ASSERT_EQ(run({"run", sample("p1_identity.json"), "--input", "zz"}).status, 1);
    ASSERT_EQ(run({"run", sample("p1_identity.json")}).status, 1);
}

TEST(cli, qrun) {
    std::string report = temp_path("qrun.json");
    CliRun r = run({"qrun", sample("p1_identity.json"), "--word", "g", "f", "--input", "1", "0", "0", "--measure", "2",
                 "--seed", "7", "--shots", "50", "--json", report});
    ASSERT_EQ(r.status, 0) << r.err;
    json j = read_report(report);
    ASSERT_EQ(j["results"]["counts"], json({{"1", 50}}));

    r = run({"qrun", sample("p1_identity.json"), "--word", "f2", "f1", "--input", "0", "0", "0", "--superpose", "0",
             "--measure", "2", "--seed", "3", "--shots", "10000", "--json", report});
    ASSERT_EQ(r.status, 0) << r.err;
    j = read_report(report);
    double zeros = j["results"]["counts"]["0"].get<double>() / 10000;
    double ones = j["results"]["counts"]["1"].get<double>() / 10000;
    ASSERT_NEAR(zeros, 0.5, 0.03);
    ASSERT_NEAR(ones, 0.5, 0.03);

    ASSERT_EQ(run({"qrun", sample("p1_identity.json"), "--word", "h", "--input", "0", "0", "0", "--measure", "2"}).status,
              1);
    ASSERT_EQ(run({"qrun", sample("p1_identity.json"), "--word", "f", "--input", "0", "0", "--measure", "2"}).status, 1);
    ASSERT_EQ(run({"qrun", sample("p1_identity.json"), "--word", "f", "--input", "1", "0", "0", "--superpose", "0",
                   "--measure", "2"})
                  .status,
              1);
}

TEST(cli, identical_invocations_are_byte_identical) {
    std::string a = temp_path("det_a.json");
    std::string b = temp_path("det_b.json");
    std::vector<std::string> base{"qrun", sample("p1_identity.json"), "--word", "g", "f", "--input", "0", "0", "0",
                                  "--superpose", "0", "--measure", "2", "--seed", "11", "--shots", "777", "--json"};
    auto args_a = base;
    args_a.push_back(a);
    auto args_b = base;
    args_b.push_back(a);
    ASSERT_EQ(run(args_a).status, 0);
    std::string first = read_file(a);
    ASSERT_EQ(run(args_b).status, 0);
    ASSERT_EQ(read_file(a), first);

    ASSERT_EQ(run({"verify", sample("p1_identity.json"), "--json", a}).status, 0);
    ASSERT_EQ(run({"verify", sample("p1_identity.json"), "--json", b}).status, 0);
    json ja = read_report(a), jb = read_report(b);
    ja["command"] = jb["command"] = nullptr;
    ASSERT_EQ(ja.dump(), jb.dump());
}

TEST(cli, report_round_trip) {
    std::string path = temp_path("round_trip.json");
    for (const auto &args : std::vector<std::vector<std::string>>{
             {"lift", sample("and_then_not.json")},
             {"group", sample("p1_identity.json"), "--cayley"},
             {"coxeter", sample("three_step_identity.json")},
             {"verify", sample("p1_identity.json")},
         }) {
        auto with_json = args;
        with_json.push_back("--json");
        with_json.push_back(path);
        ASSERT_EQ(run(with_json).status, 0);
        std::string text = read_file(path);
        json j = json::parse(text);
        ASSERT_EQ(serialize_report(j), text);
        ASSERT_EQ(json::parse(serialize_report(j)), j);
    }
}

TEST(cli, lift_group_coxeter) {
    std::string path = temp_path("lgc.json");
    CliRun r = run({"lift", sample("and_then_not.json"), "--json", path});
    ASSERT_EQ(r.status, 0) << r.err;
    json j = read_report(path);
    ASSERT_EQ(j["results"]["offsets"], json({0, 2, 3}));
    ASSERT_EQ(j["results"]["total_width"], 5);
    ASSERT_EQ(j["results"]["steps"].size(), 2u);
    ASSERT_EQ(j["results"]["steps"][0]["order"], 2);

    r = run({"group", sample("p1_identity.json"), "--cayley", "--json", path});
    ASSERT_EQ(r.status, 0) << r.err;
    j = read_report(path);
    ASSERT_EQ(j["results"]["order"], 8);
    ASSERT_EQ(j["results"]["histogram"], json({{"1", 1}, {"2", 5}, {"4", 2}}));
    ASSERT_TRUE(j["results"]["dihedral"]["is_dihedral_8"].get<bool>());
    ASSERT_EQ(j["results"]["dihedral"]["witness_a"], json({"f1", "f2"}));
    ASSERT_EQ(j["results"]["dihedral"]["witness_b"], json({"f2"}));
    ASSERT_EQ(j["results"]["cayley"].size(), 8u);

    ASSERT_EQ(run({"group", sample("p1_identity.json"), "--element-cap", "4"}).status, 2);

    r = run({"coxeter", sample("three_step_identity.json"), "--json", path});
    ASSERT_EQ(r.status, 0) << r.err;
    j = read_report(path);
    ASSERT_EQ(j["results"]["empirical_matrix"], json({{1, 4, 2}, {4, 1, 4}, {2, 4, 1}}));
    ASSERT_TRUE(j["results"]["matches_claim"].get<bool>());

    r = run({"coxeter", sample("zero_first_step.json"), "--json", path});
    ASSERT_EQ(r.status, 0);
    j = read_report(path);
    ASSERT_TRUE(j["results"]["empirical_matrix"].is_null());
}

TEST(cli, usage_errors) {
    ASSERT_EQ(run({}).status, 1);
    ASSERT_EQ(run({"frobnicate", sample("p1_identity.json")}).status, 1);
    ASSERT_EQ(run({"verify", sample("p1_identity.json"), "--bogus"}).status, 1);
    ASSERT_EQ(run({"verify", sample("does_not_exist.json")}).status, 1);
    std::string bad = write_temp("bad.json", R"({"format_version":1,"registers":[1,1],"functions":[]})");
    CliRun r = run({"verify", bad});
    ASSERT_EQ(r.status, 1);
    ASSERT_NE(r.err.find("functions"), std::string::npos) << r.err;
    ASSERT_EQ(run({"--help"}).status, 0);
}
