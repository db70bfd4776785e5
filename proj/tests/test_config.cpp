// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <fstream>

#include "fbsdiff/config.hpp"
#include "fbsdiff/errors.hpp"
#include "test_util.hpp"

namespace fbsdiff {
namespace {

ErrorKind kind_of(const KeyValues& file, const KeyValues& flags) {
    try {
        (void)resolve_config(file, flags);
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "accepted";
    return ErrorKind::kIo;
}

TEST(ResolveConfig, Defaults) {
    const CliConfig cli = resolve_config({}, {});
    const PipelineConfig& p = cli.pipeline;
    EXPECT_EQ(p.t_inv, 1000);
    EXPECT_EQ(p.steps, 50);
    EXPECT_DOUBLE_EQ(p.lambda, 0.45);
    EXPECT_DOUBLE_EQ(p.omega, 7.5);
    EXPECT_EQ(p.mask, MaskSpec::low(80));
    EXPECT_EQ(p.seed, 0u);
    EXPECT_EQ(p.inversion_noise, InversionNoise::kNextTimestep);
    EXPECT_FALSE(p.once_substitution);
    EXPECT_EQ(non_calibration_steps(p.lambda, p.steps), 22);
    EXPECT_FALSE(cli.ref.has_value());

    EXPECT_EQ(resolve_config({}, {{"mode", "high"}}).pipeline.mask, MaskSpec::high(5));
    EXPECT_EQ(resolve_config({}, {{"mode", "mid"}}).pipeline.mask, MaskSpec::mid(5, 80));
}

TEST(ResolveConfig, FlagsOverrideFile) {
    const KeyValues file{{"mode", "mid"}, {"th-mp2", "40"}, {"steps", "25"}, {"prompt", "from file"}};
    const KeyValues flags{{"steps", "10"}, {"prompt", "a cat"}, {"seed", "7"}};
    const PipelineConfig p = resolve_config(file, flags).pipeline;
    EXPECT_EQ(p.mask, MaskSpec::mid(5, 40));
    EXPECT_EQ(p.steps, 10);
    EXPECT_EQ(p.prompt, "a cat");
    EXPECT_EQ(p.seed, 7u);
}

TEST(ResolveConfig, AllKeysApply) {
    const KeyValues flags{{"ref", "in.png"},        {"out", "o.png"},       {"manifest", "m.txt"},
                          {"lambda", "0.3"},        {"omega", "2.5"},       {"t-inv", "500"},
                          {"denoiser", "oracle:2"}, {"codec", "avgpool:4"}, {"inversion-eps", "current"},
                          {"once-substitution", "yes"}};
    const CliConfig cli = resolve_config({}, flags);
    EXPECT_EQ(*cli.ref, "in.png");
    EXPECT_EQ(*cli.out, "o.png");
    EXPECT_EQ(*cli.manifest, "m.txt");
    EXPECT_DOUBLE_EQ(cli.pipeline.lambda, 0.3);
    EXPECT_DOUBLE_EQ(cli.pipeline.omega, 2.5);
    EXPECT_EQ(cli.pipeline.t_inv, 500);
    EXPECT_EQ(cli.pipeline.denoiser.sigma, 2.0);
    EXPECT_EQ(cli.pipeline.codec.factor, 4);
    EXPECT_EQ(cli.pipeline.inversion_noise, InversionNoise::kCurrentTimestep);
    EXPECT_TRUE(cli.pipeline.once_substitution);
}

TEST(ResolveConfig, RejectsBadInput) {
    EXPECT_EQ(kind_of({}, {{"mode", "mid"}, {"th-mp1", "80"}, {"th-mp2", "5"}}), ErrorKind::kUsage);
    EXPECT_EQ(kind_of({}, {{"th-mp1", "30"}, {"th-mp2", "30"}}), ErrorKind::kUsage);
    EXPECT_EQ(kind_of({}, {{"colour", "red"}}), ErrorKind::kUsage);
    EXPECT_EQ(kind_of({}, {{"steps", "ten"}}), ErrorKind::kUsage);
    EXPECT_EQ(kind_of({}, {{"lambda", "0.4x"}}), ErrorKind::kUsage);
    EXPECT_EQ(kind_of({}, {{"mode", "band"}}), ErrorKind::kUsage);
    EXPECT_EQ(kind_of({}, {{"steps", "2000"}}), ErrorKind::kUsage);
    EXPECT_EQ(kind_of({}, {{"lambda", "1.5"}}), ErrorKind::kUsage);
    EXPECT_EQ(kind_of({}, {{"once-substitution", "maybe"}}), ErrorKind::kUsage);
    EXPECT_EQ(kind_of({}, {{"codec", "vae"}}), ErrorKind::kUsage);
}

TEST(ParseConfigText, KeyValueLines) {
    const KeyValues kv = parse_config_text("# comment\n\n  prompt = a red car \nsteps=30\r\n", "t.cfg");
    ASSERT_EQ(kv.size(), 2u);
    EXPECT_EQ(kv[0], (std::pair<std::string, std::string>{"prompt", "a red car"}));
    EXPECT_EQ(kv[1], (std::pair<std::string, std::string>{"steps", "30"}));
}

TEST(ParseConfigText, ReportsLineOfMalformedEntry) {
    try {
        (void)parse_config_text("steps = 3\nnot a pair\n", "t.cfg");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::kUsage);
        EXPECT_NE(std::string(e.detail()).find("t.cfg:2"), std::string::npos) << e.detail();
    }
}

TEST(ReadConfigFile, ReadsAndFailsCleanly) {
    const auto dir = testing::scratch_dir("config");
    std::ofstream(dir / "a.cfg") << "mode = high\nth-hp = 9\n";
    EXPECT_EQ(resolve_config(read_config_file(dir / "a.cfg"), {}).pipeline.mask, MaskSpec::high(9));
    EXPECT_THROW((void)read_config_file(dir / "missing.cfg"), Error);
}

TEST(ConfigKeys, CoverEveryFlag) {
    const auto& keys = config_keys();
    for (std::string_view k : {"ref", "prompt", "mode", "th-lp", "th-hp", "th-mp1", "th-mp2", "lambda", "omega",
                               "t-inv", "steps", "seed", "out"}) {
        EXPECT_NE(std::find(keys.begin(), keys.end(), k), keys.end()) << k;
    }
}

TEST(FormatManifest, RecordsRun) {
    PipelineConfig cfg;
    cfg.prompt = "a fox";
    RunReport report;
    report.trajectory.boundary = 22;
    report.rng_algorithm = "mt19937_64+box-muller/v1";
    const std::string m = format_manifest(cfg, report);
    for (const char* line : {"prompt = a fox\n", "lambda = 0.45\n", "omega = 7.5\n", "t-inv = 1000\n",
                             "steps = 50\n", "calibration-steps = 28\n", "non-calibration-steps = 22\n",
                             "seed = 0\n", "rng = mt19937_64+box-muller/v1\n", "denoiser = oracle:1\n",
                             "codec = identity\n", "inversion-eps = next\n"}) {
        EXPECT_NE(m.find(line), std::string::npos) << line << "\n" << m;
    }
    EXPECT_NE(m.find("beta_start=1e-04, beta_end=0.02"), std::string::npos) << m;
}

}  // namespace
}  // namespace fbsdiff
