#include "metrobound/records.hpp"

#include <doctest.h>

#include <sstream>

using namespace metrobound;

TEST_CASE("number formatting") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(10.8) == "10.8");
  CHECK(format_number(4.0) == "4");
  CHECK(format_number(-2.5) == "-2.5");
  CHECK(format_number(5e-5) == "5e-05");
  CHECK(format_number(1e-4) == "0.0001");
  CHECK(format_number(1.0 / 3.0) == "0.3333333333333333");
  CHECK(std::stod(format_number(0.1 + 0.2)) == 0.1 + 0.2);
}

TEST_CASE("records keep insertion order and typed fields") {
  SweepRecord r = SweepRecord::with_provenance(42);
  r.set("N", 5).set("x", 2.5).set("ok", true).set("label", "a,b");
  CHECK(r.fields()[0].first == "seed");
  CHECK(r.fields()[1].first == "version");
  CHECK(std::get<std::int64_t>(r.get("N")) == 5);
  CHECK(std::get<double>(r.get("x")) == 2.5);
  CHECK(r.flag("ok"));
  CHECK(std::get<std::string>(r.get("label")) == "a,b");
  CHECK(r.number("N") == 5.0);
  r.set("x", 3.0);
  CHECK(r.number("x") == 3.0);
  CHECK(r.fields().size() == 6);
  CHECK_THROWS(r.get("missing"));
  CHECK_THROWS(r.number("label"));
}

TEST_CASE("CSV output") {
  SweepRecord a, b;
  a.set("N", 3).set("v", 0.5);
  b.set("N", 4).set("w", "q\"x");
  const std::string csv = to_csv({a, b});
  CHECK(csv == "N,v,w\n3,0.5,\n4,,\"q\"\"x\"\n");
  std::ostringstream os;
  write_csv_header(os, {"w", "N"});
  write_csv_rows(os, {a, b}, {"w", "N"});
  CHECK(os.str() == "w,N\n,3\n\"q\"\"x\",4\n");
}

TEST_CASE("JSON round trip") {
  SweepRecord a = SweepRecord::with_provenance(7);
  a.set("N", 3).set("value", 1e-7).set("flag", false).set("text", "hello");
  SweepRecord b;
  b.set("z", -1.25).set("a", 2);
  const std::vector<SweepRecord> records{a, b};
  const auto parsed = records_from_json(nlohmann::json::parse(to_json(records).dump()));
  CHECK(parsed == records);
  CHECK(parsed[1].fields()[0].first == "z");
}
