// Copyright 2026 The risfas Authors
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

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "risfas/config_json.hpp"
#include "risfas/experiments.hpp"

using namespace risfas;
namespace fs = std::filesystem;

namespace {

const fs::path& work_dir() {
  static const fs::path dir = [] {
    const fs::path p = fs::temp_directory_path() / "risfas_cli_test";
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(const std::string& args) {
  const fs::path out = work_dir() / "stdout.txt";
  const fs::path err = work_dir() / "stderr.txt";
  const std::string cmd = std::string("\"") + RISFAS_CLI_PATH + "\" " + args + " >\"" + out.string() + "\" 2>\"" +
                          err.string() + "\"";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

fs::path write_config(const std::string& name, const nlohmann::json& doc) {
  const fs::path p = work_dir() / name;
  std::ofstream(p) << doc.dump(2);
  return p;
}

nlohmann::json desk_json() {
  SystemConfig cfg = SystemConfig::uniform(2, 8, 1.0, 1.0, 20.0, PortGrid{2, 2, 1.0, 1.0, 1.0});
  return config_to_json(cfg);
}

}  // namespace

TEST_CASE("op writes CSV to stdout and files") {
  const fs::path cfg = write_config("desk.json", desk_json());
  const Run r = cli("op --config " + cfg.string() + " --snr-db 30:34:2");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind(std::string(kCsvHeader), 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 7);

  const fs::path file = work_dir() / "op.csv";
  CHECK(cli("op --config " + cfg.string() + " --snr-db 30:34:2 --out " + file.string()).code == 0);
  CHECK(slurp(file) == r.out);
}

TEST_CASE("dor at unit threshold equals op") {
  const fs::path cfg = write_config("desk.json", desk_json());
  for (const std::string method : {"analytic", "mc", "asymptotic"}) {
    const std::string flags = " --config " + cfg.string() + " --snr-db 28:40:2 --trials 4000 --seed 9 --method " + method;
    const Run op = cli("op" + flags);
    const Run dor = cli("dor" + flags);
    REQUIRE(op.code == 0);
    CHECK(op.out == dor.out);
  }
}

TEST_CASE("asym reports gains") {
  const fs::path cfg = write_config("desk.json", desk_json());
  const Run r = cli("asym --config " + cfg.string());
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("scheme,diversity_gain,coding_gain,coding_gain_db\nmax-max,", 0) == 0);
  CHECK(r.out.find("\nmax-sum,") != std::string::npos);
}

TEST_CASE("validate is deterministic across thread counts") {
  const fs::path cfg = write_config("desk.json", desk_json());
  const std::string flags = "validate --config " + cfg.string() + " --snr-db 33:37:1 --trials 5000 --seed 4";
  const Run a = cli(flags + " --threads 1");
  const Run b = cli(flags + " --threads 3");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("# max-sum,") != std::string::npos);
}

TEST_CASE("figure and plot") {
  const fs::path dir = work_dir() / "fig6";
  const Run r = cli("figure --preset fig6 --snr-db 30:50:2 --out " + dir.string());
  REQUIRE(r.code == 0);
  CHECK(fs::exists(dir / "fig6_m1.csv"));
  CHECK(fs::exists(dir / "fig6.svg"));
  const fs::path svg = work_dir() / "plot.svg";
  const Run p = cli("plot " + (dir / "fig6_m1.csv").string() + " " + (dir / "fig6_m3.csv").string() + " --out " +
                    svg.string() + " --title demo");
  REQUIRE(p.code == 0);
  const std::string doc = slurp(svg);
  CHECK(doc.find("fig6_m3 max-sum/analytic") != std::string::npos);
}

TEST_CASE("errors are machine-readable") {
  nlohmann::json bad = desk_json();
  bad["m2"][1][0] = 0.1;
  const fs::path cfg = write_config("bad.json", bad);
  const Run r = cli("op --config " + cfg.string());
  CHECK(r.code != 0);
  const auto err = nlohmann::json::parse(r.err);
  CHECK(err["error"] == "config");
  CHECK(err["key"] == "m2[1][0]");

  const Run usage = cli("op");
  CHECK(usage.code != 0);
  CHECK(nlohmann::json::parse(usage.err)["error"] == "usage");

  const Run preset = cli("figure --preset fig99 --out " + (work_dir() / "x").string());
  CHECK(preset.code != 0);
  CHECK(nlohmann::json::parse(preset.err)["error"] == "domain");

  const Run range = cli("op --config " + write_config("desk.json", desk_json()).string() + " --snr-db 9:1:1");
  CHECK(range.code != 0);
  CHECK(nlohmann::json::parse(range.err)["error"] == "domain");

  nlohmann::json het = desk_json();
  het["M"] = {8, 9};
  const Run asym = cli("asym --config " + write_config("het.json", het).string());
  CHECK(asym.code != 0);
  CHECK(nlohmann::json::parse(asym.err)["message"] == "asymptotics require identical parameters");
}
