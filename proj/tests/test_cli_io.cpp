// Copyright 2026 The rainbound Authors
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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rainbound/commands.hpp"
#include "rainbound/config.hpp"
#include "rainbound/csv.hpp"
#include "rainbound/errors.hpp"
#include "rainbound/series_io.hpp"
#include "rainbound/text.hpp"

using namespace rainbound;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("rainbound_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig small_config() {
  RunConfig cfg;
  cfg.experiment.estimator_trials = 50;
  cfg.experiment.cusum_trials = 50;
  cfg.experiment.score_draws = 2000;
  cfg.experiment.fusion_links = 10;
  cfg.experiment.fusion_trials = 20;
  cfg.detect.arl_runs = 20;
  return cfg;
}

}  // namespace

TEST_CASE("default configuration") {
  const RunConfig cfg;
  CHECK(cfg.link.f_lo_ghz == 10.7);
  CHECK(cfg.link.f_hi_ghz == 12.7);
  CHECK(cfg.link.subcarriers == 5);
  CHECK(cfg.link.geometry.elevation_deg == 38.0);
  CHECK(cfg.link.sigma_n_db == 1.0);
  CHECK(cfg.link.sigma_sys_db == 0.63);
  CHECK(cfg.link.pilot_fraction == 0.1);
  CHECK(cfg.link.n_sym == 302.0);
  CHECK(cfg.prior.mean_rate == 5.2);
  CHECK(cfg.prior.cv == 1.05);
  CHECK(cfg.prior.rho == 0.95);
  CHECK(cfg.sweep.rain_rates.front() == 0.1);
  CHECK(cfg.sweep.rain_rates.back() == 100.0);
  CHECK(cfg.sweep.elevations.front() == 5.0);
  CHECK(cfg.sweep.elevations.back() == 90.0);
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("configuration round trip") {
  RunConfig cfg;
  cfg.link.snr0_db = 13.25;
  cfg.link.coefficient_mode = CoefficientMode::band_average;
  cfg.experiment.noise_mode = NoiseMode::chi_squared_pilot;
  cfg.experiment.rng.seed = 18446744073709551615ULL;
  cfg.sweep.windows = {1, 5};
  const std::string text = serialize_config(cfg);
  const RunConfig back = parse_config(text);
  CHECK(serialize_config(back) == text);
  CHECK(back.link.snr0_db == 13.25);
  CHECK(back.experiment.rng.seed == 18446744073709551615ULL);
  CHECK(config_hash(back) == config_hash(cfg));
  CHECK(config_hash(back) != config_hash(RunConfig{}));
  CHECK(config_hash(cfg).size() == 16);
}

TEST_CASE("configuration parse errors carry the line") {
  try {
    parse_config("[link]\nsnr0_db = 10\n\n[link]\nsnr_db = 3\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 5);
    CHECK(std::string(e.what()).find("snr_db") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config("[nowhere]\n"), ParseError);
  CHECK_THROWS_AS(parse_config("[link]\nsnr0_db 10\n"), ParseError);
  CHECK_THROWS_AS(parse_config("[link]\nsnr0_db = ten\n"), ParseError);
  CHECK_THROWS_AS(parse_config("snr0_db = 10\n"), ParseError);
  CHECK_THROWS_AS(parse_config("[band]\npolarization = diagonal\n"), ParseError);
  CHECK_THROWS_AS(parse_config("[sweep]\nrain_rates =\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[prior]\nrho = 1.5\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/rainbound.ini"), IoError);
  CHECK_NOTHROW(parse_config("# only a comment\n\n"));
}

TEST_CASE("dotted options") {
  RunConfig cfg;
  set_option(cfg, "link.snr0_db", "12.5");
  CHECK(cfg.link.snr0_db == 12.5);
  CHECK(get_option(cfg, "link.snr0_db") == "12.5");
  set_option(cfg, "sweep.windows", "1, 2,3");
  CHECK(cfg.sweep.windows == std::vector<int>{1, 2, 3});
  set_option(cfg, "experiment.noise_mode", "chi2");
  CHECK(cfg.experiment.noise_mode == NoiseMode::chi_squared_pilot);
  CHECK_THROWS_AS(set_option(cfg, "link.nope", "1"), ConfigError);
  CHECK_THROWS_AS(set_option(cfg, "link", "1"), ConfigError);
  CHECK_THROWS_AS(set_option(cfg, "link.snr0_db", "x"), ConfigError);
  CHECK_THROWS_AS(get_option(cfg, "zz.top"), ConfigError);
  const auto keys = option_keys();
  CHECK(std::find(keys.begin(), keys.end(), "prior.rho") != keys.end());
  for (const auto& k : keys) CHECK_NOTHROW(set_option(cfg, k, get_option(cfg, k)));
}

TEST_CASE("FNV-1a") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("ISO-8601 timestamps") {
  CHECK(parse_iso8601("1970-01-01T00:00:00Z") == 0);
  CHECK(parse_iso8601("2024-02-29T12:30Z") == 1709209800);
  CHECK(parse_iso8601("2024-02-29 12:30:00") == 1709209800);
  CHECK(parse_iso8601("2024-02-29T14:30:00+02:00") == 1709209800);
  CHECK(parse_iso8601("2024-02-29T07:00:00-05:30") == 1709209800);
  CHECK_FALSE(parse_iso8601("2023-02-29T00:00Z"));
  CHECK_FALSE(parse_iso8601("2024-01-01T25:00Z"));
  CHECK_FALSE(parse_iso8601("2024-01-01"));
  CHECK_FALSE(parse_iso8601("2024-01-01T00:00Zjunk"));
  CHECK(format_iso8601(1709209800) == "2024-02-29T12:30:00Z");
}

TEST_CASE("attenuation series") {
  const auto s = parse_series(
      "timestamp_iso8601,attenuation_db\n"
      "# comment\n"
      "2024-06-01T00:00:00Z,0.5\n"
      "2024-06-01T00:01:00Z,0.75\n"
      "\n"
      "2024-06-01T00:04:00Z,1.25\n");
  REQUIRE(s.size() == 3);
  CHECK(s.attenuation_db[1] == 0.75);
  REQUIRE(s.gaps.size() == 1);
  CHECK(s.gaps[0].before_index == 2);
  CHECK(s.gaps[0].missing_minutes == 2);

  CHECK(parse_series("2024-06-01T00:00Z,1\n").size() == 1);
  try {
    parse_series("2024-06-01T00:01Z,1\n2024-06-01T00:00Z,1\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_series("2024-06-01T00:00Z,1\n2024-06-01T00:00:30Z,1\n"), ParseError);
  CHECK_THROWS_AS(parse_series("2024-06-01T00:00Z,abc\n"), ParseError);
  CHECK_THROWS_AS(parse_series("2024-06-01T00:00Z\n"), ParseError);
  CHECK_THROWS_AS(parse_series("yesterday,1\n"), ParseError);
  CHECK_THROWS_AS(ingest_series("/nonexistent/series.csv"), IoError);

  const auto made = make_series(1717200000, {0.1, 1.0 / 3.0, 2e-17});
  const auto back = parse_series(format_series(made));
  CHECK(back.attenuation_db == made.attenuation_db);
  CHECK(back.epoch_seconds == made.epoch_seconds);
  CHECK(format_series(back) == format_series(made));
}

TEST_CASE("CSV tables") {
  CsvTable t({"a_db", "b", "c"});
  t.row().add(0.1).add(3).add("x");
  t.row().add(1.0 / 3.0).add(true).add(std::size_t{7});
  const auto parsed = parse_csv(t.str());
  CHECK(parsed.header == t.header());
  REQUIRE(parsed.rows.size() == 2);
  CHECK(text::parse_double(parsed.rows[1][0]) == 1.0 / 3.0);
  CHECK(parsed.rows[1][1] == "1");
  t.row().add(1.0);
  CHECK_THROWS_AS(t.str(), DomainError);
  CHECK_THROWS_AS(CsvTable({"a"}).write("/nonexistent/dir/x.csv"), IoError);
}

TEST_CASE("commands write identical files on rerun") {
  RunConfig cfg = small_config();
  for (const std::string cmd : {"bounds", "mc"}) {
    const fs::path a = scratch(cmd + "_a");
    const fs::path b = scratch(cmd + "_b");
    const auto files = run_command(cfg, {cmd, a, ""});
    run_command(cfg, {cmd, b, ""});
    REQUIRE(!files.empty());
    CHECK(files.back() == "manifest.json");
    for (const auto& f : files) {
      INFO(cmd << "/" << f);
      CHECK(slurp(a / f) == slurp(b / f));
    }
    fs::remove_all(a);
    fs::remove_all(b);
  }
  CHECK_THROWS_AS(run_command(cfg, {"nope", scratch("nope"), ""}), ConfigError);
}

TEST_CASE("bounds tables hold the calibrated values") {
  const fs::path dir = scratch("bounds");
  run_command(RunConfig{}, {"bounds", dir, ""});
  const auto t = parse_csv(slurp(dir / "rmin_table.csv"));
  REQUIRE(t.rows.size() == 4);
  const double expect[] = {4.2642, 1.0915, 0.9919, 0.9477};
  for (std::size_t i = 0; i < 4; ++i) CHECK(*text::parse_double(t.rows[i][2]) == doctest::Approx(expect[i]).epsilon(0.05 / expect[i]));
  const std::string manifest = slurp(dir / "manifest.json");
  CHECK(manifest.find(config_hash(RunConfig{})) != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("series-driven estimate and detect") {
  const fs::path dir = scratch("series");
  fs::create_directories(dir);
  std::vector<double> values(40, 0.4);
  for (std::size_t i = 20; i < values.size(); ++i) values[i] = 6.0;
  write_series((dir / "in.csv").string(), make_series(1717200000, values));
  RunConfig cfg = small_config();
  const auto det = run_command(cfg, {"detect", dir / "d", (dir / "in.csv").string()});
  CHECK(std::find(det.begin(), det.end(), "cusum_series.csv") != det.end());
  const auto est = run_command(cfg, {"estimate", dir / "e", (dir / "in.csv").string()});
  CHECK(std::find(est.begin(), est.end(), "estimate_series.csv") != est.end());
  CHECK_THROWS_AS(run_command(cfg, {"estimate", dir / "f", (dir / "missing.csv").string()}), IoError);
  fs::remove_all(dir);
}

TEST_CASE("unwritable output directory") {
  const fs::path dir = scratch("blocker");
  { std::ofstream(dir.string()) << "file"; }
  CHECK_THROWS_AS(run_command(RunConfig{}, {"bounds", dir / "sub", ""}), IoError);
  fs::remove(dir);
}
