#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <json.hpp>

using json = nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(APERY_CLI_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buffer;
  std::size_t got;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    r.out.append(buffer.data(), got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    out.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return out;
}

}  // namespace

TEST_CASE("apery command, fast and classic paths") {
  auto fast = run_cli("apery 10,12,13 --no-time");
  REQUIRE(fast.exit_code == 0);
  auto j = json::parse(fast.out);
  CHECK(j["schema"] == "apery/1");
  CHECK(j["path"] == "fast");
  CHECK(j["apery"]["size"] == 10);
  CHECK(j["apery"]["by_class"] ==
        json::array({0, 51, 12, 13, 24, 25, 26, 37, 38, 39}));
  CHECK(j["eligibility"]["checks"]["n_gt_rk_squared"] == true);
  CHECK(j.count("time_ns") == 0);

  auto classic = run_cli("apery 6,9,20 --no-time");
  REQUIRE(classic.exit_code == 0);
  auto c = json::parse(classic.out);
  CHECK(c["path"] == "classic");
  CHECK(c["apery"]["by_class"] == json::array({0, 49, 20, 9, 40, 29}));

  auto explicit_x = run_cli("apery 6,9,20 18 --no-time");
  REQUIRE(explicit_x.exit_code == 0);
  auto x = json::parse(explicit_x.out);
  CHECK(x["path"] == "classic");
  CHECK(x["apery"]["x"] == 18);
  CHECK(x["apery"]["size"] == 18);
}

TEST_CASE("apery command input errors") {
  CHECK(run_cli("apery 0,3").exit_code == 2);
  CHECK(run_cli("apery 6,9,20 7").exit_code == 2);  // 7 not an element
  CHECK(run_cli("apery abc").exit_code == 2);
  CHECK(run_cli("apery 2,3 --format csv").exit_code == 2);  // JSON-only command
}

TEST_CASE("invariants command") {
  auto r = run_cli("invariants 10,12,13 --no-time");
  REQUIRE(r.exit_code == 0);
  auto j = json::parse(r.out);
  CHECK(j["frobenius"] == 41);
  CHECK(j["genus"] == 22);
  CHECK(j["pf"] == json::array({27, 41}));
  CHECK(j["type"] == 2);
  CHECK(j["wilf"] == 15);
  CHECK(j["embedding_dimension"] == 3);
  CHECK(j["symmetric"] == false);

  auto small = json::parse(run_cli("invariants 2,3 --no-time").out);
  CHECK(small["frobenius"] == 1);
  CHECK(small["genus"] == 1);
  CHECK(small["type"] == 1);
  CHECK(small["symmetric"] == true);

  auto trivial = json::parse(run_cli("invariants 1 --no-time").out);
  CHECK(trivial["trivial"] == true);
  CHECK(trivial["pf"] == json::array());

  auto scaled = json::parse(run_cli("invariants 4,6 --no-time").out);
  CHECK(scaled["primitive"] == false);
  CHECK(scaled["quotient_convention"] == true);
  CHECK(scaled["frobenius"] == 2);
  CHECK(scaled["genus"] == 2);
  CHECK(scaled["pf"] == json::array({2}));
}

TEST_CASE("scan emits the pinned CSV schema") {
  auto r = run_cli("scan --base 3,5 --from 26 --to 60 --no-time");
  REQUIRE(r.exit_code == 0);
  auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 36);  // header + 35 rows
  CHECK(lines[0] == "n,path,F,g,t,W,symmetric,pseudosymmetric,time_ns");
  CHECK(lines[1] == "26,fast,189,107,2,56,false,false,0");
  CHECK(lines[5] == "30,fast,277,139,1,136,true,false,0");

  // the type column is 5-periodic across the whole scan
  std::vector<std::string> types;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto cells = lines[i];
    int commas = 0;
    std::string t;
    for (char ch : cells) {
      if (ch == ',') { ++commas; continue; }
      if (commas == 4) t += ch;
      if (commas > 4) break;
    }
    types.push_back(t);
  }
  for (std::size_t i = 0; i + 5 < types.size(); ++i) CHECK(types[i] == types[i + 5]);
}

TEST_CASE("scan edge cases") {
  auto single = run_cli("scan --base 2,3 --from 10 --to 10 --no-time");
  REQUIRE(single.exit_code == 0);
  auto lines = lines_of(single.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[1] == "10,fast,41,22,2,15,false,false,0");

  CHECK(run_cli("scan --base 2,3 --from 5 --to 4").exit_code == 2);
  CHECK(run_cli("scan --base 2,3 --from 0 --to 4").exit_code == 2);
  CHECK(run_cli("scan --base 4,6 --from 38 --to 38").exit_code == 2);  // all excluded

  // gcd filter: only odd shifts for an even base
  auto filtered = run_cli("scan --base 4,6 --from 37 --to 44 --no-time");
  REQUIRE(filtered.exit_code == 0);
  CHECK(lines_of(filtered.out).size() == 5);  // header + 37,39,41,43
}

TEST_CASE("markdown output") {
  auto scan = run_cli("scan --base 2,3 --from 10 --to 11 --no-time --format md");
  REQUIRE(scan.exit_code == 0);
  auto lines = lines_of(scan.out);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0].starts_with("| n | path |"));
  CHECK(lines[2] == "| 10 | fast | 41 | 22 | 2 | 15 | false | false | 0 |");

  auto bench = run_cli("bench --no-time --shifts 50,1000");
  REQUIRE(bench.exit_code == 0);
  auto blines = lines_of(bench.out);
  REQUIRE(blines.size() == 4);
  CHECK(blines[0] == "| n | M_n | classic | fast |");
  CHECK(blines[2] == "| 50 | <50,56,59,70> | not-timed | ineligible |");
}

TEST_CASE("scan output is byte-deterministic and thread-count independent") {
  auto a = run_cli("scan --base 3,5 --from 26 --to 45 --no-time");
  auto b = run_cli("scan --base 3,5 --from 26 --to 45 --no-time");
  auto c = run_cli("scan --base 3,5 --from 26 --to 45 --no-time --threads 4");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
}

TEST_CASE("bench shape without timing") {
  auto r = run_cli("bench --no-time --format csv");
  REQUIRE(r.exit_code == 0);
  auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 7);
  CHECK(lines[0] == "n,generators,classic_ns,classic_status,fast_ns,fast_status");
  CHECK(lines[1] == R"(50,"50,56,59,70",0,not-timed,0,ineligible)");
  CHECK(lines[3] == R"(400,"400,406,409,420",0,not-timed,0,ineligible)");
  CHECK(lines[4] == R"(1000,"1000,1006,1009,1020",0,not-timed,0,not-timed)");
  CHECK(lines[6] == R"(10000,"10000,10006,10009,10020",0,not-timed,0,not-timed)");

  CHECK(run_cli("bench --reps 1").exit_code == 2);
}

TEST_CASE("fit commands") {
  auto genus = run_cli("fit --base 3,5 --invariant genus --no-time");
  REQUIRE(genus.exit_code == 0);
  auto j = json::parse(genus.out);
  CHECK(j["period"] == 5);
  CHECK(j["degree"] == 2);
  CHECK(j["valid_from"] == 26);
  for (const auto& cls : j["classes"]) {
    REQUIRE(cls["present"] == true);
    CHECK(cls["coefficients"][0] == "1/10");
  }
  CHECK(j["verification"]["all_match"] == true);
  CHECK(j["verification"]["points"].get<int>() >= 10);
  CHECK(j["verification"]["first_mismatch"].is_null());

  auto type_fit = run_cli("fit --base 3,5 --invariant type --degree 0 --no-time");
  REQUIRE(type_fit.exit_code == 0);
  auto t = json::parse(type_fit.out);
  CHECK(t["degree"] == 0);
  for (const auto& cls : t["classes"]) {
    REQUIRE(cls["present"] == true);
    REQUIRE(cls["coefficients"].size() == 1);
  }
  CHECK(t["verification"]["all_match"] == true);

  auto frob = run_cli("fit --base 6,9,20 --invariant frobenius --no-time");
  REQUIRE(frob.exit_code == 0);
  auto f = json::parse(frob.out);
  CHECK(f["classes"].size() == 20);
  for (const auto& cls : f["classes"]) CHECK(cls["coefficients"][0] == "1/20");

  auto even = run_cli("fit --base 4,6 --invariant genus --no-time");
  REQUIRE(even.exit_code == 0);
  auto e = json::parse(even.out);
  for (const auto& cls : e["classes"]) {
    int residue = cls["residue"].get<int>();
    if (residue % 2 == 1) {
      CHECK(cls["present"] == true);
      CHECK(cls["coefficients"][0] == "1/6");
    } else {
      CHECK(cls["present"] == false);
    }
  }

  CHECK(run_cli("fit --base 3,5 --invariant nonsense").exit_code == 2);
}

TEST_CASE("overflow surfaces as exit code 3") {
  auto r = run_cli("invariants 9223372036854775800,9223372036854775802,9223372036854775803");
  CHECK(r.exit_code == 3);
}
