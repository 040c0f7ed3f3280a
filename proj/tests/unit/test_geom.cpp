#include <doctest.h>

#include <cmath>
#include <random>

#include "dpemp/constants.hpp"
#include "dpemp/error.hpp"
#include "dpemp/geom.hpp"
#include "oracles.hpp"

using namespace dpemp;
using doctest::Approx;

namespace {
const EcefVector kRx{-2851838.0, 4653607.0, 3289209.0};
constexpr double kDeg = constants::kDegToRad;
}  // namespace

TEST_CASE("ecef_to_enu identity at the origin") {
  const EnuVector z = ecef_to_enu(kRx, kRx);
  CHECK(z.e == 0.0);
  CHECK(z.n == 0.0);
  CHECK(z.u == 0.0);
}

TEST_CASE("one metre north of the receiver maps to (0, 1, 0)") {
  const auto [lat, lon] = oracle::lat_lon({kRx.x, kRx.y, kRx.z});
  const EcefVector north{-std::sin(lat) * std::cos(lon), -std::sin(lat) * std::sin(lon), std::cos(lat)};
  const EnuVector v = ecef_to_enu(kRx + north, kRx);
  CHECK(std::abs(v.e) < 1e-6);
  CHECK(std::abs(v.n - 1.0) < 1e-6);
  CHECK(std::abs(v.u) < 1e-6);
}

TEST_CASE("ecef_to_enu agrees with the closed-form oracle") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> d(-3e7, 3e7);
  for (int k = 0; k < 200; ++k) {
    const EcefVector p{d(gen), d(gen), d(gen)};
    const EnuVector got = ecef_to_enu(p, kRx);
    const oracle::Enu ref = oracle::ecef_to_enu({p.x, p.y, p.z}, {kRx.x, kRx.y, kRx.z});
    CHECK(std::abs(got.e - ref.e) < 1e-6);
    CHECK(std::abs(got.n - ref.n) < 1e-6);
    CHECK(std::abs(got.u - ref.u) < 1e-6);
  }
}

TEST_CASE("enu_to_ecef inverts ecef_to_enu") {
  const EnuVector local{123.0, -456.0, 7.5};
  const EnuVector back = ecef_to_enu(enu_to_ecef(local, kRx), kRx);
  CHECK(back.e == Approx(local.e).epsilon(1e-9));
  CHECK(back.n == Approx(local.n).epsilon(1e-9));
  CHECK(back.u == Approx(local.u).epsilon(1e-9));
}

TEST_CASE("implausible origins are rejected") {
  CHECK_THROWS_AS(ecef_to_enu(kRx, EcefVector{0.0, 0.0, 0.0}), Error);
  CHECK_THROWS_AS(ecef_to_enu(kRx, EcefVector{1e7, 0.0, 0.0}), Error);
  CHECK_THROWS_AS(ecef_to_enu(EcefVector{NAN, 0.0, 0.0}, kRx), Error);
}

TEST_CASE("look angles of simple vectors") {
  const LookAngles north = look_angles({0.0, 1000.0, 0.0});
  CHECK(north.elevation == Approx(0.0));
  CHECK(north.azimuth == Approx(0.0));
  const LookAngles ne = look_angles({1000.0, 0.0, 1000.0});
  CHECK(ne.elevation_deg() == Approx(45.0));
  CHECK(ne.azimuth_deg() == Approx(90.0));
  const LookAngles west = look_angles({-10.0, 0.0, 1.0});
  CHECK(west.azimuth_deg() == Approx(270.0));
}

TEST_CASE("look angle guards") {
  try {
    (void)look_angles({0.0, 0.0, 1000.0});
    FAIL("zenith accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZenithDegenerate);
  }
  try {
    (void)look_angles({100.0, 0.0, -10.0});
    FAIL("negative elevation accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BelowHorizon);
  }
  CHECK_THROWS_AS(validate_elevation(89.6 * kDeg), Error);
  CHECK_NOTHROW(validate_elevation(89.4 * kDeg));
}

TEST_CASE("synthetic satellite round-trips its look angles") {
  const LookAngles a = LookAngles::from_degrees(42.8, 213.8);
  const EcefVector sat = enu_to_ecef(enu_from_look_angles(a, 2.2e7), kRx);
  const LookAngles b = look_angles(ecef_to_enu(sat, kRx));
  CHECK(std::abs(b.elevation - a.elevation) < 1e-9);
  CHECK(std::abs(b.azimuth - a.azimuth) < 1e-9);
}

TEST_CASE("slant range") {
  CHECK(slant_range(kRx, kRx) == 0.0);
  CHECK(slant_range(kRx + EcefVector{3.0, 4.0, 0.0}, kRx) == Approx(5.0));
  const double s = 1.0 / std::sqrt(3.0);
  CHECK(slant_range(kRx + EcefVector{2e7 * s, 2e7 * s, 2e7 * s}, kRx) == Approx(2e7).epsilon(1e-12));
}

TEST_CASE("wrap_two_pi") {
  CHECK(wrap_two_pi(-0.5) == Approx(2.0 * constants::kPi - 0.5));
  CHECK(wrap_two_pi(2.0 * constants::kPi) == Approx(0.0));
  CHECK(wrap_two_pi(1.0) == 1.0);
}
