#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "wpc/csv.hpp"
#include "wpc/error.hpp"
#include "wpc/rate.hpp"
#include "wpc/sweep.hpp"

using namespace wpc;

TEST_CASE("format_number round-trips exactly") {
  for (int i = 0; i < 2000; ++i) {
    const double x = test::log_uniform(1e-300, 1e300) * (test::uniform(0, 1) < 0.5 ? -1 : 1);
    CHECK(std::stod(csv::format_number(x)) == x);
  }
  CHECK(csv::format_number(0.1) == "0.1");
  CHECK(csv::format_number(2026) == "2026");
}

TEST_CASE("csv write/read preserves metadata, header and cells") {
  csv::Table t;
  t.add_metadata("seed", "7");
  t.add_metadata("note", "a=b");
  t.header = {"x", "y", "ok"};
  t.add_row({"1", csv::format_number(1.0 / 3), "true"});
  t.add_row({"2", csv::format_number(-2.5e-17), "false"});
  CHECK_THROWS_AS(t.add_row({"1"}), std::logic_error);

  std::stringstream ss;
  csv::write(ss, t);
  CHECK(ss.str().rfind("# seed=7\n# note=a=b\nx,y,ok\n", 0) == 0);
  const csv::Table back = csv::read(ss);
  CHECK(back.metadata == t.metadata);
  CHECK(back.header == t.header);
  CHECK(back.rows == t.rows);
  CHECK(back.numeric_column("y")[0] == 1.0 / 3);
  CHECK(back.meta("note") == "a=b");
  CHECK_FALSE(back.column("zzz").has_value());
  CHECK_THROWS_AS(back.numeric_column("ok"), std::invalid_argument);
}

TEST_CASE("csv read rejects malformed input") {
  std::stringstream ragged("a,b\n1,2\n3\n");
  CHECK_THROWS_AS(csv::read(ragged), std::runtime_error);
  std::stringstream empty("# only=meta\n");
  CHECK_THROWS_AS(csv::read(empty), std::runtime_error);
}

TEST_CASE("atomic file write") {
  const auto dir = std::filesystem::temp_directory_path() / "wpc_csv_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "t.csv";
  csv::Table t;
  t.header = {"v"};
  t.add_row({"1.5"});
  csv::write_file_atomic(path, t);
  CHECK(std::filesystem::exists(path));
  CHECK_FALSE(std::filesystem::exists(dir / "t.csv.tmp"));
  CHECK(csv::read_file(path).rows == t.rows);
  CHECK_THROWS(csv::write_file_atomic(dir / "missing" / "x.csv", t));
  CHECK_FALSE(std::filesystem::exists(dir / "missing" / "x.csv"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("sweep spec validation and axis") {
  SweepSpec s = default_sweep(SweepMode::Fig1);
  CHECK(s.points == 200);
  const auto xs = s.axis();
  CHECK(xs.size() == 200);
  CHECK(xs.front() == 1e-4);
  CHECK(xs.back() == 1e-1);
  CHECK(xs[100] / xs[99] == doctest::Approx(xs[1] / xs[0]));

  s.scale = SweepScale::Linear;
  s.start = -1;
  s.stop = 1;
  s.points = 5;
  CHECK(s.axis() == std::vector<double>{-1, -0.5, 0, 0.5, 1});
  s.scale = SweepScale::Log;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s.start = 2;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s.start = 0.5;
  s.points = 1;
  CHECK_THROWS_AS(s.validate(), DomainError);

  CHECK(parse_sweep_variable("p_e") == SweepVariable::HarvestPower);
  CHECK_FALSE(parse_sweep_variable("gamma").has_value());
  CHECK(parse_sweep_mode("fig3") == SweepMode::Fig3);
  CHECK(parse_sweep_scale("linear") == SweepScale::Linear);
}

TEST_CASE("fig1 sweep is unimodal in rate") {
  const csv::Table t = run_sweep(SweepMode::Fig1, default_sweep(SweepMode::Fig1));
  CHECK(t.rows.size() == 200);
  const auto rate = t.numeric_column("rate_bits");
  int sign_changes = 0;
  int last_sign = 0;
  for (std::size_t i = 1; i < rate.size(); ++i) {
    const double d = rate[i] - rate[i - 1];
    const int sign = (d > 0) - (d < 0);
    if (sign == 0) continue;
    if (last_sign != 0 && sign != last_sign) ++sign_changes;
    last_sign = sign;
  }
  CHECK(sign_changes == 1);
  CHECK(t.meta("mode") == "fig1");
}

TEST_CASE("fig3 sweep columns") {
  SweepSpec s = default_sweep(SweepMode::Fig3);
  s.points = 3;
  const csv::Table t = run_sweep(SweepMode::Fig3, s);
  for (double n : t.numeric_column("n")) CHECK(n == 2026);
  const auto asym = t.numeric_column("asym_p_t");
  const auto fin = t.numeric_column("finite_p_t");
  for (std::size_t i = 0; i < asym.size(); ++i) CHECK(fin[i] >= asym[i]);

  SweepSpec at = s;
  at.fixed.epsilon = 1e-3;
  at.start = 999;
  at.stop = 1000;
  at.points = 2;
  CHECK(run_sweep(SweepMode::Fig3, at).numeric_column("asym_p_t")[1] == doctest::Approx(1.1554).epsilon(1e-3));
}

TEST_CASE("fig modes reject the wrong axis variable") {
  SweepSpec s = default_sweep(SweepMode::Fig1);
  s.variable = SweepVariable::Epsilon;
  CHECK_THROWS_AS(run_sweep(SweepMode::Fig1, s), DomainError);
  CHECK_THROWS_AS(run_sweep(SweepMode::Fig3, s), DomainError);
}

TEST_CASE("custom sweep over each variable") {
  SweepSpec s = default_sweep(SweepMode::Custom);
  s.fixed = {1000, 1.1554, 1, 1e-3};
  s.points = 4;
  for (auto [v, lo, hi] : {std::tuple{SweepVariable::TransmitPower, 0.5, 5.0},
                           std::tuple{SweepVariable::Epsilon, 1e-3, 0.1},
                           std::tuple{SweepVariable::HarvestPower, 100.0, 1e4},
                           std::tuple{SweepVariable::PowerRatio, 1e-4, 1e-2}}) {
    s.variable = v;
    s.start = lo;
    s.stop = hi;
    const csv::Table t = run_sweep(SweepMode::Custom, s);
    CHECK(t.rows.size() == 4);
    CHECK(t.header.front() == "sweep_" + std::string(to_string(v)));
  }
  s.variable = SweepVariable::HarvestLength;
  s.start = 1000.2;
  s.stop = 200000;
  const csv::Table t = run_sweep(SweepMode::Custom, s);
  CHECK(t.numeric_column("m").front() == 1001);
  CHECK(t.numeric_column("n").front() == 44316);

  s.variable = SweepVariable::TransmitLength;
  s.blocklengths = Blocklengths{150000, 1};
  s.start = 100;
  s.stop = 70000.7;
  s.scale = SweepScale::Linear;
  const csv::Table tn = run_sweep(SweepMode::Custom, s);
  CHECK(tn.numeric_column("n").back() == 70000);
  CHECK(tn.numeric_column("m").back() == 150000);
  CHECK(tn.rows.back()[tn.column("constraints_satisfied").value()] == "false");
}
