#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "wpc/error.hpp"
#include "wpc/lambert_w.hpp"

using wpc::lambert_w0;

namespace {
double residual(double x) {
  const double w = lambert_w0(x);
  return std::abs(w * std::exp(w) - x);
}
}  // namespace

TEST_CASE("lambert_w0 fixed points") {
  CHECK(lambert_w0(0.0) == 0.0);
  CHECK(std::abs(lambert_w0(std::numbers::e) - 1.0) <= 1e-14);
  CHECK(lambert_w0(-1 / std::numbers::e) == -1.0);
  // 30-digit reference: W0(-0.18399) = -0.232043516381634675960912496797
  CHECK(lambert_w0(-0.18399) == doctest::Approx(-0.2320435163816347).epsilon(1e-13));
  // W0(1) is the omega constant
  CHECK(lambert_w0(1.0) == doctest::Approx(0.5671432904097838).epsilon(1e-15));
}

TEST_CASE("lambert_w0 domain handling") {
  const double branch = -1 / std::numbers::e;
  CHECK(lambert_w0(branch - 5e-16) == -1.0);
  CHECK_THROWS_AS(lambert_w0(branch - 1e-14), wpc::DomainError);
  CHECK_THROWS_AS(lambert_w0(-1.0), wpc::DomainError);
  CHECK_THROWS_AS(lambert_w0(std::nan("")), wpc::DomainError);
}

TEST_CASE("lambert_w0 residual near the branch point and at large x") {
  for (double d : {1e-15, 1e-12, 1e-10, 1e-8, 1e-5, 1e-3, 0.05}) {
    const double x = -1 / std::numbers::e + d;
    CHECK(residual(x) <= 1e-12);
    CHECK(lambert_w0(x) >= -1.0);
  }
  for (double x : {1e2, 1e4, 1e6, 1e10, 1e100, 1e300}) {
    CHECK(residual(x) <= 1e-12 * x);
  }
}

TEST_CASE("lambert_w0 residual and monotonicity on random samples") {
  std::vector<double> xs;
  for (int i = 0; i < 10000; ++i) {
    const double u = wpc::test::uniform(0, 1);
    xs.push_back(u < 0.3   ? wpc::test::uniform(-1 / std::numbers::e, 0)
                 : u < 0.6 ? wpc::test::uniform(0, 10)
                           : wpc::test::log_uniform(10, 1e6));
  }
  for (double x : xs) REQUIRE(residual(x) <= 1e-12 * std::max(1.0, std::abs(x)));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  for (std::size_t i = 1; i < xs.size(); ++i) REQUIRE(lambert_w0(xs[i]) > lambert_w0(xs[i - 1]));
}

TEST_CASE("lambert_w0 is templated on the scalar type") {
  const float wf = lambert_w0(2.0f);
  CHECK(wf * std::exp(wf) == doctest::Approx(2.0f).epsilon(1e-5));
  const long double wl = lambert_w0(2.0L);
  CHECK(static_cast<double>(wl * std::exp(wl)) == doctest::Approx(2.0).epsilon(1e-15));
}
