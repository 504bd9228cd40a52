// Copyright 2026 The hrb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "../tools/cli.hpp"
#include "support.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "hrb");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = hrb::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line[0] != '#') out.push_back(line);
  }
  return out;
}

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("weights table") {
  auto r = run({"weights", "--ell", "1", "--family", "kpp", "--n-from", "1", "--n-to", "3"});
  CHECK(r.code == 0);
  auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "n,rho");
  CHECK(lines[1].rfind("1,0.58578643762690495119831127579030192", 0) == 0);
  CHECK(r.out.find("# command=weights") != std::string::npos);
  CHECK(r.out.find("# precision=128") != std::string::npos);
  CHECK(r.out.find("# seed=42") != std::string::npos);

  auto c = run({"--format", "json", "weights", "--ell", "2", "--family", "canonical", "--n-from", "2",
                "--n-to", "2"});
  CHECK(c.code == 0);
  auto j = json_of(c);
  REQUIRE(j["rows"].size() == 1);
  CHECK(j["rows"][0]["n"] == 2);
  CHECK(std::stod(j["rows"][0]["rho"].get<std::string>()) > 0);

  auto bad = run({"weights", "--family", "q_family", "--ell", "2", "--q", "1.5"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find('\n') == bad.err.size() - 1);
}

TEST_CASE("coefficient tables") {
  auto r = run({"coeffs", "--ell", "2", "--table", "expansion", "--k-max", "6"});
  CHECK(r.code == 0);
  CHECK(r.out.find("9/16") != std::string::npos);
  CHECK(r.out.find("3/2") != std::string::npos);
  CHECK(r.out.find("297/128") != std::string::npos);
  auto f = run({"--format", "json", "coeffs", "--ell", "4", "--table", "r", "--k-max", "8"});
  CHECK(f.code == 0);
  auto j = json_of(f);
  REQUIRE(!j["rows"].empty());
  bool found = false;
  for (const auto& [key, value] : j["rows"][0].items()) found = found || value == "11025/256";
  CHECK(found);
  auto c = run({"coeffs", "--ell", "2", "--check-conjecture", "--k-max", "20"});
  CHECK(c.code == 0);
  for (const auto& line : data_lines(c.out)) CHECK(line.find(",false") == std::string::npos);
  CHECK(c.out.find("# summary: conjecture_holds=true") != std::string::npos);
}

TEST_CASE("verification subcommands pass") {
  auto v = run({"verify-identity", "--ell", "3", "--trials", "100", "--seed", "42"});
  CHECK(v.code == 0);
  CHECK(v.out.find("max_relative_residual") != std::string::npos);
  CHECK(run({"verify-assumptions", "--ell", "3", "--N", "300"}).code == 0);
  CHECK(run({"check-ineq", "--ell", "2", "--trials", "20"}).code == 0);
  CHECK(run({"probe-criticality", "--ell", "1", "--Ns", "10,30"}).code == 0);
  CHECK(run({"probe-optimality", "--ell", "1", "--Ns", "10,30"}).code == 0);
  CHECK(run({"probe-attainability", "--ell", "1", "--q", "1/4", "--horizons", "1000,3000"}).code == 0);
  CHECK(run({"matrix-factor", "--ell", "2", "--size", "32"}).code == 0);
  auto cd = run({"corner-defect", "--ell", "3"});
  CHECK(cd.code == 0);
  CHECK(cd.out.find("((-6,1),(1,0))") != std::string::npos);
  auto a = run({"--format", "json", "alpha-range", "--n-check", "10000", "--tol", "1e-4"});
  CHECK(a.code == 0);
  auto j = json_of(a);
  CHECK(std::abs(std::stod(j["summary"]["alpha_lo"].get<std::string>()) - 0.847) < 5e-3);
  CHECK(std::abs(std::stod(j["summary"]["alpha_hi"].get<std::string>()) - 1.307) < 5e-3);
  CHECK(run({"compare-weights", "--n-from", "2", "--n-to", "6"}).code == 0);
}

TEST_CASE("forced failures exit 1") {
  CHECK(run({"verify-assumptions", "--family", "q_family", "--ell", "2", "--q", "3/2", "--force"}).code == 1);
  CHECK(run({"verify-assumptions", "--family", "alpha2", "--alpha", "0.5"}).code == 1);
  CHECK(run({"check-ineq", "--ell", "2", "--trials", "20", "--scale", "100"}).code == 1);
  auto m = run({"matrix-factor", "--ell", "2", "--size", "32", "--omit-k", "1"});
  CHECK(m.code == 1);
  CHECK(m.err.rfind("hrb: FAIL: ", 0) == 0);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"no-such-command"}).code == 2);
  CHECK(run({"--precision", "32", "weights"}).code == 2);
  CHECK(run({"--format", "xml", "weights"}).code == 2);
  CHECK(run({"probe-attainability", "--q", "1/2"}).code == 2);
  CHECK(run({"weights", "--ell", "abc"}).code == 2);
}

TEST_CASE("identical configuration gives identical bytes") {
  std::vector<std::string> args{"--hex", "verify-identity", "--ell", "2", "--trials", "10", "--seed", "9"};
  auto a = run(args);
  auto b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto c = run({"--hex", "verify-identity", "--ell", "2", "--trials", "10", "--seed", "10"});
  CHECK(c.out != a.out);
  auto j1 = run({"--format", "json", "weights", "--n-from", "1", "--n-to", "5", "--family", "kpp"});
  auto j2 = run({"--format", "json", "weights", "--n-from", "1", "--n-to", "5", "--family", "kpp"});
  CHECK(j1.out == j2.out);
  auto j = json_of(j1);
  CHECK(j.contains("config"));
  CHECK(j.contains("rows"));
  CHECK(j.contains("summary"));
  CHECK(j["config"]["precision"] == 128);
  CHECK(j["config"]["seed"] == "42");
}

TEST_CASE("precision from the environment, overridden by the flag") {
  ::setenv("HRB_PRECISION", "256", 1);
  auto e = json_of(run({"--format", "json", "weights", "--n-from", "1", "--n-to", "1", "--family", "kpp"}));
  CHECK(e["config"]["precision"] == 256);
  auto f = json_of(run({"--precision", "64", "--format", "json", "weights", "--n-from", "1", "--n-to", "1",
                        "--family", "kpp"}));
  CHECK(f["config"]["precision"] == 64);
  ::setenv("HRB_PRECISION", "bogus", 1);
  CHECK(run({"weights", "--n-from", "1", "--n-to", "1", "--family", "kpp"}).code == 2);
  ::unsetenv("HRB_PRECISION");
}

TEST_CASE("output file and process exit codes") {
  auto path = std::filesystem::temp_directory_path() / "hrb_cli_test_out.csv";
  auto r = run({"--output", path.string(), "corner-defect", "--ell", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream is(path);
  std::stringstream ss;
  ss << is.rdbuf();
  CHECK(ss.str().find("# command=corner-defect") != std::string::npos);
  std::filesystem::remove(path);

  std::string bin = HRB_CLI_PATH;
  auto status = [&](const std::string& args) {
    int s = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  CHECK(status("corner-defect --ell 3") == 0);
  CHECK(status("matrix-factor --ell 2 --size 32 --omit-k 0") == 1);
  CHECK(status("weights --q 1.5 --family q_family") == 2);
}
