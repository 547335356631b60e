#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "reflector_ot/oracle.hpp"
#include "reflector_ot/quadrature.hpp"

using namespace reflector_ot;

namespace {
constexpr double kPi = std::numbers::pi;
const SyntheticDataset kData = default_dataset();
const double kDiskR = 17.0 / 9.0;
const double kTotalEnergy = kPi * kDiskR * kDiskR;
}  // namespace

TEST_CASE("rho_exact frozen values") {
  CHECK(rho_exact(kData.pair, UnitDirection{{0.0, 0.0}, -0.6}) ==
        doctest::Approx(0.721698113208).epsilon(1e-10));
  CHECK(rho_exact(kData.pair, UnitDirection{{0.0, 0.0}, -1.0}) ==
        doctest::Approx(0.85).epsilon(1e-12));
  // m perpendicular to the focus axis
  CHECK(rho_exact(kData.pair, UnitDirection{{1.0, 0.0}, 0.0}) ==
        doctest::Approx(1.53 / 2.6).epsilon(1e-12));
}

TEST_CASE("z_exact frozen values") {
  CHECK(z_exact(kData.pair, PlanePoint{{0.0, 0.0}}) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(z_exact(kData.pair, PlanePoint{{kDiskR, 0.0}}) ==
        doctest::Approx(-0.291975308642).epsilon(1e-9));
}

TEST_CASE("gamma frozen values and rim-to-rim property") {
  const PlanePoint g = gamma(kData.pair, UnitDirection{{0.8, 0.0}, -0.6});
  CHECK(g.x.x == doctest::Approx(-kDiskR).epsilon(1e-12));
  CHECK(g.x.y == doctest::Approx(0.0));
  CHECK(gamma(kData.pair, UnitDirection{{0.0, 0.0}, -1.0}).x.norm() == doctest::Approx(0.0));
  for (int q = 0; q < 100; ++q) {
    const double phi = 2.0 * kPi * q / 100.0;
    const UnitDirection m{{0.8 * std::cos(phi), 0.8 * std::sin(phi)}, -0.6};
    CHECK(gamma(kData.pair, m).x.norm() == doctest::Approx(kDiskR).epsilon(1e-12));
  }
}

TEST_CASE("jacobian: closed form vs central finite differences") {
  CHECK(jacobian(kData.pair, {0.0, 0.0}) == doctest::Approx(kDiskR * kDiskR).epsilon(1e-12));

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double step = 1e-5;
  for (int t = 0; t < 50; ++t) {
    const double s = 0.75 * std::sqrt(uni(rng));
    const double phi = 2.0 * kPi * uni(rng);
    const Vec2 p{s * std::cos(phi), s * std::sin(phi)};
    auto g = [&](Vec2 q) { return gamma(kData.pair, UnitDirection::from_planar(q)); };
    const Vec2 dx = (g({p.x + step, p.y}).x - g({p.x - step, p.y}).x) * (1.0 / (2.0 * step));
    const Vec2 dy = (g({p.x, p.y + step}).x - g({p.x, p.y - step}).x) * (1.0 / (2.0 * step));
    const double fd = std::abs(dx.x * dy.y - dx.y * dy.x);
    CHECK(std::abs(jacobian(kData.pair, p) - fd) <= 1e-5 * fd);
  }

  // axisymmetric pair: J depends on |mxy| only
  const double j1 = jacobian(kData.pair, {0.5, 0.0});
  const double j2 = jacobian(kData.pair, {0.3, 0.4});
  CHECK(j1 == doctest::Approx(j2).epsilon(1e-12));
}

TEST_CASE("input_intensity: jacobian route matches the closed form") {
  auto L = [](const PlanePoint&) { return 1.0; };
  CHECK(input_intensity(kData.pair, L, UnitDirection{{0.0, 0.0}, -1.0}) ==
        doctest::Approx(14.2716049383 / 4.0).epsilon(1e-9));
  CHECK(input_intensity(kData.pair, L, UnitDirection{{0.8, 0.0}, -0.6}) ==
        doctest::Approx(14.2716049383 / 2.56).epsilon(1e-9));
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const double s = 0.8 * std::sqrt(uni(rng));
    const double phi = 2.0 * kPi * uni(rng);
    const UnitDirection m = UnitDirection::from_planar({s * std::cos(phi), s * std::sin(phi)});
    const double via_j = input_intensity(kData.pair, L, m);
    const double closed = kData.I(m);
    CHECK(std::abs(via_j - closed) <= 1e-9 * closed);
  }
}

TEST_CASE("default_dataset constants") {
  CHECK(kData.optics.ell == doctest::Approx(2.9).epsilon(1e-15));
  CHECK(kData.cap_planar_radius == 0.8);
  CHECK(kData.disk_radius == doctest::Approx(kDiskR));
  const ProblemData pd = kData.problem();
  CHECK(pd.anchor_rho == doctest::Approx(0.765 / 1.06).epsilon(1e-12));
  CHECK(pd.anchor_direction.mz == doctest::Approx(-0.6).epsilon(1e-12));
}

TEST_CASE("global energy balance to 1e-6 (radial Gauss-Legendre)") {
  // input side: integral of I over the cap, radial profile in planar coords
  const double in = gauss_legendre(0.0, 0.8, [&](double s) {
    const double mz = -std::sqrt(1.0 - s * s);
    return kData.I(UnitDirection{{s, 0.0}, mz}) / (-mz) * 2.0 * kPi * s;
  });
  // output side: L = 1 over the disk
  const double out = gauss_legendre(0.0, kDiskR, [&](double s) { return 2.0 * kPi * s; });
  CHECK(std::abs(in - kTotalEnergy) <= 1e-6 * kTotalEnergy);
  CHECK(std::abs(out - kTotalEnergy) <= 1e-12 * kTotalEnergy);
}

TEST_CASE("local energy balance on random sub-regions (Monte Carlo)") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  auto L = [](const PlanePoint&) { return 1.0; };
  for (int region = 0; region < 20; ++region) {
    const double rw = 0.05 + 0.15 * uni(rng);
    const double cr = (0.8 - rw) * std::sqrt(uni(rng));
    const double cphi = 2.0 * kPi * uni(rng);
    const Vec2 center{cr * std::cos(cphi), cr * std::sin(cphi)};
    const double area = kPi * rw * rw;
    auto sample_in_region = [&]() {
      const double s = rw * std::sqrt(uni(rng));
      const double phi = 2.0 * kPi * uni(rng);
      return Vec2{center.x + s * std::cos(phi), center.y + s * std::sin(phi)};
    };
    const int n = 1'000'000 / 20;
    double in_sum = 0.0, out_sum = 0.0;
    for (int t = 0; t < n; ++t) {
      // independent draws per route
      const Vec2 p = sample_in_region();
      const UnitDirection m = UnitDirection::from_planar(p);
      in_sum += kData.I(m) / std::abs(m.mz);
      const Vec2 q = sample_in_region();
      out_sum += L(gamma(kData.pair, UnitDirection::from_planar(q))) * jacobian(kData.pair, q);
    }
    const double in_energy = area * in_sum / n;
    const double out_energy = area * out_sum / n;
    CHECK(std::abs(in_energy - out_energy) <= 0.01 * in_energy);
  }
}
