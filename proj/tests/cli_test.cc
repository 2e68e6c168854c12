// Copyright 2026 The plantedbins Authors.
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


#include "plantedbins/cli.h"

#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace plantedbins {
namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result Invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "plantedbins");
  std::ostringstream out;
  std::ostringstream err;
  Result r;
  r.code = RunCli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// Runs the installed binary through the shell and captures stdout.
Result RunBinary(const std::string& args, const std::string& env = "") {
  const std::string command =
      env + " " + PLANTEDBINS_CLI_PATH + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) {
    r.code = -1;
    return r;
  }
  std::array<char, 4096> buffer;
  size_t got = 0;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
    r.out.append(buffer.data(), got);
  }
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::string TempPath(const std::string& name) {
  return (std::filesystem::temp_directory_path() /
          ("plantedbins_cli_" + std::to_string(::getpid()) + "_" + name))
      .string();
}

TEST(CliTest, PredictExamples) {
  Result r = Invoke({"predict", "--regime", "flat", "--c", "1.0"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "0.2763\n");
  EXPECT_EQ(Invoke({"predict", "--regime", "hilly", "--c", "1"}).out,
            "0.3829\n");
  EXPECT_EQ(Invoke({"predict", "--regime", "intermediate", "--c", "1",
                 "--lambda", "0"})
                .out,
            "0.2763\n");
  EXPECT_EQ(Invoke({"predict", "--regime", "flat", "--c", "1", "--digits", "8"})
                .out,
            "0.27632639\n");
}

TEST(CliTest, PredictFromPlanting) {
  // Single bin of 50 in 200 bins is hilly.
  Result r = Invoke({"predict", "--planting", "singlebin:50", "--n", "200",
                  "--c", "1"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "0.3829\n");
  // Too few balls for the asymptotics: still answers, warns on stderr only.
  r = Invoke({"predict", "--planting", "singlebin:1", "--n", "2", "--c", "1"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
  EXPECT_EQ(r.out.find("warning"), std::string::npos);
}

TEST(CliTest, PredictUsage) {
  EXPECT_EQ(Invoke({"predict", "--c", "1"}).code, kExitUsage);
  EXPECT_EQ(Invoke({"predict", "--regime", "flat"}).code, kExitUsage);
  EXPECT_EQ(Invoke({"predict", "--regime", "flat", "--c", "0"}).code,
            kExitUsage);
  EXPECT_EQ(Invoke({"predict", "--regime", "steep", "--c", "1"}).code,
            kExitUsage);
}

TEST(CliTest, ExactTv) {
  Result r = Invoke({"exact-tv", "--planting", "singlebin:1", "--n", "2", "--m",
                  "2"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "0.25\n");
  // Hilly override with c = 4 gives m = 4.
  r = Invoke({"exact-tv", "--planting", "singlebin:1", "--n", "2", "--c", "4",
           "--regime", "hilly"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "0.18750000000000006\n");
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(Invoke({"mc-tv", "--planting", "flat:4", "--n", "4", "--m", "8",
                 "--samples", "0"})
                .code,
            kExitUsage);
  EXPECT_EQ(Invoke({}).code, kExitUsage);
  EXPECT_EQ(Invoke({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(Invoke({"exact-tv", "--planting", "singlebin:1", "--n", "2", "--m",
                 "2", "--bogus"})
                .code,
            kExitUsage);
  // Both or neither of --m and --c.
  EXPECT_EQ(Invoke({"exact-tv", "--planting", "singlebin:1", "--n", "2", "--m",
                 "2", "--c", "1"})
                .code,
            kExitUsage);
  EXPECT_EQ(Invoke({"exact-tv", "--planting", "singlebin:1", "--n", "2"}).code,
            kExitUsage);
  EXPECT_EQ(Invoke({"mc-tv", "--planting", "flat:4", "--n", "4", "--m", "8",
                 "--method", "magic"})
                .code,
            kExitUsage);
  EXPECT_EQ(Invoke({"moments", "--planting", "flat:4", "--n", "4", "--m", "8",
                 "--power", "5"})
                .code,
            kExitUsage);
  EXPECT_EQ(Invoke({"normality", "--planting", "singlebin:4", "--n", "4", "--m",
                 "8", "--samples", "50"})
                .code,
            kExitUsage);
}

TEST(CliTest, HelpIsSuccess) {
  const Result r = Invoke({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("sweep"), std::string::npos);
}

TEST(CliTest, RuntimeErrors) {
  Result r = Invoke({"exact-tv", "--planting", "singlebin:5", "--n", "2", "--m",
                  "2"});
  EXPECT_EQ(r.code, kExitRuntime);
  EXPECT_NE(r.err.find("NotEnoughBalls"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(Invoke({"exact-tv", "--planting", "file:/nonexistent.json", "--m",
                 "2"})
                .code,
            kExitRuntime);
  EXPECT_EQ(Invoke({"exact-tv", "--planting", "flat:5", "--n", "4", "--m", "8"})
                .code,
            kExitRuntime);
  EXPECT_EQ(Invoke({"exact-tv", "--planting", "singlebin:1", "--n", "50", "--m",
                 "60"})
                .code,
            kExitRuntime);
  EXPECT_EQ(Invoke({"mc-tv", "--planting", "flat:0", "--n", "4", "--c", "1"})
                .code,
            kExitRuntime);
}

TEST(CliTest, McTv) {
  Result r = Invoke({"mc-tv", "--planting", "singlebin:1", "--n", "2", "--m",
                  "2", "--samples", "20000", "--seed", "3", "--threads", "1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const std::vector<std::string> lines = Lines(r.out);
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0], "m,n,k,method,stat,tv,stderr,samples,seed");
  EXPECT_EQ(lines[1].substr(0, 19), "2,2,1,optimal,lr,0.");
  EXPECT_EQ(lines[1].substr(lines[1].size() - 8), ",20000,3");

  // Strategy defaults to the regime's statistic.
  r = Invoke({"mc-tv", "--planting", "singlebin:50", "--n", "200", "--c", "1",
           "--method", "strategy", "--samples", "500"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(Lines(r.out)[1].find(",strategy,h,"), std::string::npos);
  r = Invoke({"mc-tv", "--planting", "singlebin:50", "--n", "200", "--c", "1",
           "--method", "strategy", "--stat", "i", "--samples", "500"});
  EXPECT_NE(Lines(r.out)[1].find(",strategy,i,"), std::string::npos);
}

TEST(CliTest, Moments) {
  const Result r = Invoke({"moments", "--planting", "flat:100", "--n", "100",
                        "--c", "1", "--power", "2", "--dist", "pl",
                        "--samples", "300"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const std::vector<std::string> lines = Lines(r.out);
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0],
            "m,n,k,power,dist,predicted_mean,predicted_var,empirical_mean,"
            "empirical_var,samples,mean_stderr,seed");
  EXPECT_EQ(lines[1].substr(0, 17), "1000,100,100,2,pl");
}

TEST(CliTest, Normality) {
  const Result r = Invoke({"normality", "--planting", "singlebin:50", "--n",
                        "200", "--c", "1", "--samples", "2000", "--dist",
                        "st"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const std::vector<std::string> lines = Lines(r.out);
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0], "m,n,k,stat,dist,D,threshold,pass,samples,seed");
  EXPECT_EQ(lines[1].substr(0, 19), "497500,200,50,h,st,");
  EXPECT_EQ(Invoke({"normality", "--planting", "flat:100", "--n", "100", "--c",
                 "1", "--stat", "h", "--samples", "200"})
                .code,
            kExitRuntime);
}

TEST(CliTest, ErrorTerm) {
  Result r = Invoke({"error-term", "--planting", "file:" + TempPath("none"),
                  "--z", "3,1"});
  EXPECT_EQ(r.code, kExitRuntime);

  const std::string path = TempPath("p.json");
  std::ofstream(path) << R"({"n": 2, "a": [2, 0]})";
  r = Invoke({"error-term", "--planting", path, "--z", "3,1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::vector<std::string> lines = Lines(r.out);
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0],
            "m,n,k,exact,asymptotic,log_ratio,log_ratio_expansion");
  EXPECT_EQ(lines[1].substr(0, 15), "4,2,2,-0.117783");
  EXPECT_EQ(Invoke({"error-term", "--planting", path, "--z", "3,1", "--m", "5"})
                .code,
            kExitUsage);
  EXPECT_EQ(Invoke({"error-term", "--planting", path, "--z", "0,4"}).code,
            kExitRuntime);
  std::filesystem::remove(path);

  r = Invoke({"error-term", "--planting", "flat:100", "--n", "100", "--c", "1",
           "--samples", "50"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  lines = Lines(r.out);
  EXPECT_EQ(lines[0],
            "m,n,k,asymptotic,exact_mean,abs_gap_mean,samples,undefined,seed");
}

TEST(CliTest, SweepCsvJsonAndFile) {
  Result r = Invoke({"sweep", "--planting", "singlebin:1", "--n", "2",
                  "--regime", "hilly", "--c", "2,4,8", "--methods", "exact"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::vector<std::string> lines = Lines(r.out);
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0],
            "c,m,n,k,V,regime,rho,method,stat,tv,stderr,tv_predicted,samples,"
            "seed");
  EXPECT_EQ(lines[1].substr(0, 55),
            "2,2,2,1,0.25,hilly,0.7071067811865476,exact,none,0.25,0");

  r = Invoke({"sweep", "--planting", "singlebin:1", "--n", "2", "--regime",
           "hilly", "--c", "2,4", "--methods", "exact,optimal", "--format",
           "json", "--samples", "100"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  ASSERT_EQ(doc.size(), 4u);
  EXPECT_EQ(doc[1]["method"], "optimal");
  EXPECT_EQ(doc[1]["samples"], 100);

  const std::string out_path = TempPath("sweep.csv");
  r = Invoke({"sweep", "--planting", "singlebin:1", "--n", "2", "--regime",
           "hilly", "--c", "2", "--methods", "exact", "--out", out_path});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(out_path);
  std::stringstream contents;
  contents << in.rdbuf();
  EXPECT_EQ(Lines(contents.str()).size(), 2u);
  std::filesystem::remove(out_path);
}

TEST(CliTest, SweepValidation) {
  const std::vector<std::string> base = {"sweep", "--planting", "singlebin:1",
                                         "--n", "2"};
  auto with = [&](std::vector<std::string> extra) {
    std::vector<std::string> args = base;
    args.insert(args.end(), extra.begin(), extra.end());
    return Invoke(args).code;
  };
  EXPECT_EQ(with({}), kExitUsage);
  EXPECT_EQ(with({"--c", "1,-2"}), kExitUsage);
  EXPECT_EQ(with({"--c", "1", "--samples", "1"}), kExitUsage);
  EXPECT_EQ(with({"--c", "1", "--methods", "guess"}), kExitUsage);
  EXPECT_EQ(with({"--c", "1", "--format", "xml"}), kExitUsage);
  EXPECT_EQ(with({"--c", "1", "--out", "/nonexistent/dir/x.csv", "--methods",
                  "exact"}),
            kExitRuntime);
}

TEST(CliBinaryTest, ExitCodesFromProcess) {
  EXPECT_EQ(RunBinary("predict --regime flat --c 1.0").out, "0.2763\n");
  EXPECT_EQ(RunBinary("exact-tv --planting singlebin:1 --n 2 --m 2").out,
            "0.25\n");
  EXPECT_EQ(RunBinary("mc-tv --planting flat:4 --n 4 --m 8 --samples 0").code,
            1);
  EXPECT_EQ(RunBinary("exact-tv --planting singlebin:5 --n 2 --m 2").code, 2);
}

TEST(CliBinaryTest, OutputIndependentOfThreads) {
  const std::vector<std::string> commands = {
      "mc-tv --planting singlebin:6 --n 30 --c 1 --samples 3000 --seed 17",
      "mc-tv --planting flat:60 --n 30 --c 1 --method strategy --samples 3000 "
      "--seed 17",
      "moments --planting singlebin:6 --n 30 --c 1 --power 3 --samples 3000",
      "normality --planting singlebin:6 --n 30 --c 1 --samples 3000",
      "error-term --planting flat:30 --n 30 --c 1 --samples 1500",
      "sweep --planting singlebin:6 --n 30 --c 0.5,1,2 --methods "
      "optimal,strategy --samples 2000 --seed 4",
  };
  for (const std::string& command : commands) {
    const Result one = RunBinary(command + " --threads 1");
    ASSERT_EQ(one.code, 0) << command;
    ASSERT_FALSE(one.out.empty());
    for (const char* threads : {"2", "5"}) {
      EXPECT_EQ(RunBinary(command + " --threads " + threads).out, one.out)
          << command << " --threads " << threads;
    }
    EXPECT_EQ(RunBinary(command, "PLANTEDBINS_THREADS=3").out, one.out)
        << command;
  }
}

}  // namespace
}  // namespace plantedbins
