#include "metrobound/commands.hpp"
#include "metrobound/errors.hpp"

#include <doctest.h>

#include <sstream>

using namespace metrobound;

namespace {

RunConfig config(Command c) {
  RunConfig cfg;
  cfg.command = c;
  return cfg;
}

}  // namespace

TEST_CASE("integer grids") {
  CHECK(parse_int_grid("5") == std::vector<int>{5});
  CHECK(parse_int_grid("3..6") == std::vector<int>{3, 4, 5, 6});
  CHECK(parse_int_grid("4,6,10") == std::vector<int>{4, 6, 10});
  CHECK(parse_int_grid("1..2,7") == std::vector<int>{1, 2, 7});
  CHECK(parse_int_grid("10..1000@3") == std::vector<int>{10, 100, 1000});
  const auto g = parse_int_grid("10..100000000@29");
  CHECK(g.front() == 10);
  CHECK(g.back() == 100000000);
  CHECK_THROWS_AS(parse_int_grid(""), DomainError);
  CHECK_THROWS_AS(parse_int_grid("5..3"), DomainError);
  CHECK_THROWS_AS(parse_int_grid("a"), DomainError);
  CHECK_THROWS_AS(parse_int_grid("3..x"), DomainError);
}

TEST_CASE("parsing command and format names") {
  CHECK(parse_command("fig5") == Command::Fig5);
  CHECK(to_string(Command::Fig2b) == "fig2b");
  CHECK_THROWS_AS(parse_command("fig9"), DomainError);
  CHECK(parse_format("json") == OutputFormat::Json);
  CHECK_THROWS_AS(parse_format("xml"), DomainError);
}

TEST_CASE("bounds command") {
  RunConfig cfg = config(Command::Bounds);
  cfg.n = "3..9";
  cfg.k = "1..3";
  cfg.starts = 40;
  const auto rows = command_records(cfg);
  CHECK(rows.size() == 21);
  CHECK(rows[1].number("N") == 3);
  CHECK(rows[1].number("k") == 2);
  CHECK(rows[1].number("csep_analytic") == doctest::Approx(4.0));
  CHECK(rows[1].number("csep_numeric") == doctest::Approx(4.0).epsilon(1e-6));

  cfg.n = "4";
  cfg.k = "2";
  CHECK(command_records(cfg)[0].number("cent") == doctest::Approx(16.0));

  cfg.n = "2";
  std::ostringstream os;
  const CommandOutcome out = run_command(cfg, os);
  CHECK(out.failed_rows == 1);
  CHECK(out.exit_code() != 0);
  CHECK(os.str().find("requires N >= 3") != std::string::npos);
  CHECK(os.str().rfind("seed,version,N,k,axis,csep_analytic,csep_numeric,numeric_converged,cent,s,error\n", 0) == 0);

  cfg.n = "5";
  cfg.k = "4";
  const auto r4 = command_records(cfg);
  CHECK_FALSE(r4[0].has("csep_analytic"));
  CHECK(r4[0].number("csep_numeric") > 0.0);
}

TEST_CASE("detection sweep output is deterministic") {
  RunConfig cfg = config(Command::Fig2a);
  cfg.samples = 3000;
  std::ostringstream a, b;
  const CommandOutcome oa = run_command(cfg, a);
  run_command(cfg, b);
  CHECK(a.str() == b.str());
  CHECK(oa.rows == 3000);
  CHECK(oa.exit_code() == 0);
  std::size_t total = 0;
  for (const auto& [region, count] : oa.region_counts) total += count;
  CHECK(total == 3000);
  cfg.seed = 5;
  std::ostringstream c;
  run_command(cfg, c);
  CHECK(c.str() != a.str());
}

TEST_CASE("single-point detection and JSON output") {
  RunConfig cfg = config(Command::Fig4);
  cfg.eta = 1.0;
  cfg.lambda1 = 0.5;
  cfg.lambda2 = 0.5;
  cfg.format = OutputFormat::Json;
  std::ostringstream os;
  const CommandOutcome out = run_command(cfg, os);
  CHECK(out.rows == 1);
  const auto parsed = records_from_json(nlohmann::json::parse(os.str()));
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0] == command_records(cfg)[0]);
  CHECK(parsed[0].flag("detected_k1"));
}

TEST_CASE("fig5 grid") {
  RunConfig cfg = config(Command::Fig5);
  cfg.split = "equal";
  cfg.grid = 11;
  const auto rows = command_records(cfg);
  REQUIRE(rows.size() == 121);
  CHECK(rows[0].number("eta") == 0.0);
  CHECK(rows[1].number("lambda1") == doctest::Approx(0.05));
  for (const auto& r : rows) {
    CHECK(r.number("lambda1") == r.number("lambda2"));
    if (r.number("eta") == 0.0) {
      CHECK_FALSE(r.flag("detected_k1"));
      CHECK_FALSE(r.flag("ss_detected"));
    }
  }
  cfg.split = "other";
  CHECK_THROWS_AS(command_records(cfg), DomainError);
}

TEST_CASE("figure tables") {
  RunConfig f6 = config(Command::Fig6);
  for (const auto& r : command_records(f6)) {
    CHECK(r.number("gamma") >= 0.0);
    CHECK(r.number("gamma") <= 1.0);
  }
  RunConfig f7 = config(Command::Fig7);
  f7.n = "3..5";
  f7.k = "1..4";
  f7.starts = 20;
  const auto rows = command_records(f7);
  CHECK(rows.size() == 12);
  for (const auto& r : rows) {
    if (r.number("k") == 1) CHECK(r.number("s") == r.number("N"));
  }
  RunConfig f2b = config(Command::Fig2b);
  f2b.n = "12";
  f2b.samples = 50;
  const auto mc = command_records(f2b);
  CHECK(mc.size() == 150);
  CHECK(mc[0].has("t_k"));
  CHECK(mc[0].number("ratio") == doctest::Approx(mc[0].number("qfi") / mc[0].number("csep")));
  RunConfig f3 = config(Command::Fig3);
  f3.n = "5,30";
  f3.mu = {0.0, 1.0};
  f3.full_space_cap = 6;
  const auto hab = command_records(f3);
  CHECK(hab.size() == 4);
  CHECK(hab[3].number("s") == doctest::Approx(30.0));
  CHECK(std::get<std::string>(hab[3].get("cent_method")) == "dicke_sector");
}
