#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli_app.hpp"
#include "doctest.h"

using nhosc_cli::Command;
using nhosc_cli::ConfigError;
using nhosc_cli::Format;
using nhosc_cli::parse_config;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& tokens) {
  std::ostringstream out, err;
  const int code = nhosc_cli::main_entry(tokens, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("table1 shorthand") {
  const auto cfg = parse_config({"table1", "--W", "4", "--L", "3"});
  CHECK(cfg.command == Command::TableOne);
  CHECK(cfg.a_coef == 1.0);
  CHECK(cfg.r_coef == 0.0);
  CHECK(cfg.l_coef == 3.0);
  CHECK(cfg.b_coef == 5.0);
  CHECK(cfg.freq == 4.0);
  CHECK(cfg.n_dim == 100);
  CHECK(cfg.print_count == 50);
  CHECK(cfg.format == Format::Text);

  const auto defaults = parse_config({"table1"});
  CHECK(defaults.b_coef == 5.0);
  CHECK(defaults.freq == 4.0);
}

TEST_CASE("table2 shorthand") {
  const auto cfg = parse_config({"table2", "--W", "3", "--R", "4"});
  CHECK(cfg.b_coef == 1.0);
  CHECK(cfg.l_coef == 0.0);
  CHECK(cfg.r_coef == 4.0);
  CHECK(cfg.a_coef == 5.0);
  CHECK(cfg.freq == 1.0 / 3.0);
}

TEST_CASE("explicit spectrum flags") {
  const auto cfg = parse_config({"spectrum", "--L", "0", "--R", "0", "--A", "1", "--B", "1", "--w", "1", "--N", "50"});
  CHECK(cfg.command == Command::Spectrum);
  CHECK(cfg.n_dim == 50);
  CHECK(cfg.freq == 1.0);
  CHECK_FALSE(cfg.freq_auto);
  CHECK(cfg.print_count == 50);

  const auto autow = parse_config({"spectrum", "--L", "3", "--B", "5"});
  CHECK(autow.freq_auto);
  CHECK(autow.freq == 4.0);

  const auto comm = parse_config({"commutator-check", "--L", "3", "--R", "4"});
  CHECK(comm.freq == 1.0);
}

TEST_CASE("--W on other commands") {
  const auto one = parse_config({"duality", "--W", "4", "--L", "3"});
  CHECK(one.b_coef == 5.0);
  CHECK(one.freq == 4.0);
  const auto two = parse_config({"duality", "--W", "4", "--R", "3"});
  CHECK(two.a_coef == 5.0);
  CHECK(two.freq == 0.25);
}

TEST_CASE("configuration errors") {
  CHECK_THROWS_AS(parse_config({"table1", "--W", "4", "--B", "2"}), ConfigError);
  CHECK_THROWS_AS(parse_config({"table2", "--A", "2"}), ConfigError);
  CHECK_THROWS_AS(parse_config({"spectrum", "--L", "1", "--R", "-1"}), ConfigError);
  CHECK_THROWS_AS(parse_config({"spectrum", "--L", "2"}), ConfigError);  // w auto undefined
  CHECK_THROWS_AS(parse_config({"spectrum", "--w", "-1"}), ConfigError);
  CHECK_THROWS_AS(parse_config({"spectrum", "--N", "10", "--count", "11"}), ConfigError);
  CHECK_THROWS_AS(parse_config({"spectrum", "--format", "xml"}), ConfigError);
  CHECK_THROWS_AS(parse_config({"spectrum", "--sort", "abs"}), ConfigError);
  CHECK_THROWS_AS(parse_config({"sweep-w"}), ConfigError);
  CHECK_THROWS_AS(parse_config({"sweep-n", "--values", "10,2.5"}), ConfigError);

  const auto r = invoke({"table1", "--W", "4", "--B", "2"});
  CHECK(r.code == 2);
  CHECK(r.err.find("contradictory") != std::string::npos);
  CHECK(r.out.empty());
  CHECK(invoke({"bogus"}).code == 2);
  CHECK(invoke({"spectrum", "--N", "abc"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("formatting helpers") {
  CHECK(nhosc_cli::format_real(5.0) == "5");
  CHECK(nhosc_cli::format_real(12.5) == "12.5");
  CHECK(nhosc_cli::format_real(-0.001) == "0");
  CHECK(nhosc_cli::format_complex(395.531, -59.949) == "395.53-59.95i");
  CHECK(nhosc_cli::format_complex(395.531, 59.949) == "395.53+59.95i");
  CHECK(nhosc_cli::format_complex(15.0, 1e-12) == "15");
}

TEST_CASE("table1 text output") {
  const auto r = invoke({"table1", "--W", "4", "--L", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("W | L | w=W | E_n -> H | eps_n | Remarks") != std::string::npos);
  CHECK(r.out.find("4 | 3 | 4 | 5 | 5 | iso-spectra") != std::string::npos);
  CHECK(r.out.find("4 | 3 | 4 | 395.53-59.95i | 445 | No iso-spectra") != std::string::npos);
  CHECK(r.out.find("4 | 3 | 4 | 395.53+59.95i | 455 | No iso-spectra") != std::string::npos);
  std::size_t rows = 0;
  for (std::size_t pos = 0; (pos = r.out.find("\n4 | 3 | 4 |", pos)) != std::string::npos; ++pos) ++rows;
  CHECK(rows == 50);
}

TEST_CASE("table2 text output mirrors table1") {
  const auto r = invoke({"table2", "--W", "4", "--R", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("W | R | w=1/W") != std::string::npos);
  CHECK(r.out.find("4 | 3 | 0.25 | 395.53-59.95i | 445 | No iso-spectra") != std::string::npos);
}

TEST_CASE("broken regime lists the spectrum") {
  const auto r = invoke({"spectrum", "--L", "2", "--w", "1", "--N", "20", "--count", "5"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("regime: broken") != std::string::npos);
}

TEST_CASE("other commands run") {
  auto r = invoke({"commutator-check", "--L", "3", "--R", "4"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("last diagonal entry (truncation defect): -99") != std::string::npos);
  CHECK(r.out.find("invariant on the first N-1 levels: yes") != std::string::npos);

  r = invoke({"duality", "--W", "4", "--L", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("isospectral within 1e-6 ||H||: yes") != std::string::npos);

  r = invoke({"sweep-w", "--L", "3", "--B", "5", "--N", "40", "--values", "2,4,8"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\n4 | ") != std::string::npos);

  r = invoke({"sweep-n", "--L", "3", "--B", "5", "--values", "10,20", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("axis_value,", 0) == 0);
}

TEST_CASE("exports are deterministic") {
  const std::string a = std::string(NHOSC_TEST_TMPDIR) + "/cli_a.json";
  const std::string b = std::string(NHOSC_TEST_TMPDIR) + "/cli_b.json";
  REQUIRE(invoke({"table1", "--format", "json", "--out", a}).code == 0);
  REQUIRE(invoke({"table1", "--format", "json", "--out", b}).code == 0);
  const std::string ja = slurp(a);
  CHECK(ja.size() > 100);
  CHECK(ja == slurp(b));
  std::remove(a.c_str());
  std::remove(b.c_str());

  const auto r = invoke({"table1", "--format", "csv", "--count", "7"});
  REQUIRE(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 8);
}

TEST_CASE("unwritable output path exits with the I/O code") {
  const auto r = invoke({"table1", "--format", "json", "--out", "/nonexistent-dir/t.json"});
  CHECK(r.code == 4);
  CHECK(r.err.find("nonexistent-dir") != std::string::npos);
}
