#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "zak/spectral.hpp"

using namespace zak;

namespace {

constexpr double kPi = std::numbers::pi;

ScalarField random_physical(const GridPtr& grid, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> samples(grid->size());
  for (auto& v : samples) v = dist(rng);
  return ScalarField::from_samples(grid, std::move(samples));
}

ScalarField pure_mode(const GridPtr& grid, int mx) {
  // exp(i 2 pi mx x / L) is complex; for a real test field use its real part
  std::vector<double> samples(grid->size());
  const std::size_t n = grid->n();
  for (std::size_t iz = 0; iz < n; ++iz) {
    for (std::size_t iy = 0; iy < n; ++iy) {
      for (std::size_t ix = 0; ix < n; ++ix) {
        samples[grid->flat(ix, iy, iz)] =
            std::cos(2.0 * kPi * mx * grid->coord(ix) / grid->length());
      }
    }
  }
  return ScalarField::from_samples(grid, std::move(samples));
}

}  // namespace

TEST_SUITE_BEGIN("spectral");

TEST_CASE("grid validates shape and wavenumbers") {
  CHECK_THROWS_AS(Grid(3, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid(12, 1.0), std::invalid_argument);  // not a power of two
  CHECK_THROWS_AS(Grid(8, -1.0), std::invalid_argument);

  Grid g(8, 2.0 * kPi);
  CHECK(g.wavenumber(0) == 0.0);
  CHECK(g.mode(1) == 1);
  CHECK(g.mode(7) == -1);
  CHECK(g.is_nyquist(4));
  CHECK(g.wavenumber_deriv(4) == 0.0);
  CHECK(g.wavenumber(4) == doctest::Approx(4.0));
}

TEST_CASE("round trip against direct summation on a 4^3 grid") {
  auto grid = make_grid(4, 1.7);
  ScalarField f = random_physical(grid, 42);

  ScalarField spec = to_spectral(f);
  const auto direct = oracles::direct_dft(*grid, f.samples());
  double worst = 0.0;
  for (std::size_t i = 0; i < direct.size(); ++i) {
    worst = std::max(worst, std::abs(spec.spectrum()[i] - direct[i]));
  }
  CHECK(worst < 1e-13);

  ScalarField round = to_physical(spec);
  double rt = 0.0;
  for (std::size_t i = 0; i < round.samples().size(); ++i) {
    rt = std::max(rt, std::abs(round.samples()[i] - f.samples()[i]));
  }
  CHECK(rt < 1e-12 * lebesgue_norm(f, std::numeric_limits<double>::infinity()));
}

TEST_CASE("constant field maps to the zero mode only") {
  auto grid = make_grid(8, 1.0);
  std::vector<double> c(grid->size(), 2.25);
  ScalarField f = ScalarField::from_samples(grid, std::move(c));
  ScalarField spec = to_spectral(f);
  CHECK(std::abs(spec.spectrum()[0] - cplx{2.25, 0.0}) < 1e-13);
  double off = 0.0;
  for (std::size_t i = 1; i < spec.spectrum().size(); ++i) {
    off = std::max(off, std::abs(spec.spectrum()[i]));
  }
  CHECK(off < 1e-13);
}

TEST_CASE("single mode lands at the expected index") {
  auto grid = make_grid(8, 1.0);
  ScalarField f = pure_mode(grid, 1);  // cos picks +-1 modes with weight 1/2
  ScalarField spec = to_spectral(f);
  CHECK(std::abs(spec.spectrum()[grid->flat(1, 0, 0)] - cplx{0.5, 0.0}) < 1e-13);
  CHECK(std::abs(spec.spectrum()[grid->flat(7, 0, 0)] - cplx{0.5, 0.0}) < 1e-13);
}

TEST_CASE("parseval and representation independence of the L2 norm") {
  auto grid = make_grid(16, 2.0 * kPi);
  ScalarField f = random_physical(grid, 7);
  const double phys = lebesgue_norm(f, 2.0);
  const double spec = l2_norm(to_spectral(f));
  CHECK(std::abs(phys - spec) <= 1e-12 * phys);
  CHECK(sobolev_norm(f, 0.0) == doctest::Approx(phys).epsilon(1e-12));
}

TEST_CASE("conjugate symmetry of real-field coefficients") {
  auto grid = make_grid(8, 1.0);
  ScalarField spec = to_spectral(random_physical(grid, 9));
  const std::size_t n = grid->n();
  double worst = 0.0;
  for (std::size_t iz = 0; iz < n; ++iz) {
    for (std::size_t iy = 0; iy < n; ++iy) {
      for (std::size_t ix = 0; ix < n; ++ix) {
        const auto a = spec.spectrum()[grid->flat(ix, iy, iz)];
        const auto b =
            spec.spectrum()[grid->flat((n - ix) % n, (n - iy) % n, (n - iz) % n)];
        worst = std::max(worst, std::abs(a - std::conj(b)));
      }
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("H2 norm of a unit-mass pure mode") {
  // exp(2 pi i x) on L = 1 has |k| = 2 pi and unit L2 norm, so the H2 norm is
  // (1 + 4 pi^2); checked against an independent single-mode sum.
  auto grid = make_grid(8, 1.0);
  std::array<std::vector<cplx>, 3> comps;
  for (auto& c : comps) c.assign(grid->size(), cplx{0.0, 0.0});
  comps[0][grid->flat(1, 0, 0)] = cplx{1.0, 0.0};
  VectorField f = VectorField::from_components(grid, Representation::spectral,
                                               std::move(comps));
  const double k2 = std::pow(2.0 * kPi, 2);
  const double by_hand = std::sqrt(std::pow(1.0 + k2, 2) * 1.0);  // direct sum: one mode
  CHECK(l2_norm(f) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(sobolev_norm(f, 2.0) == doctest::Approx(by_hand).epsilon(1e-13));
  CHECK(by_hand == doctest::Approx(40.4784176).epsilon(1e-8));
}

TEST_CASE("sobolev norms are monotone in s") {
  auto grid = make_grid(16, 2.0 * kPi);
  ScalarField f = random_physical(grid, 11);
  const double s0 = sobolev_norm(f, 0.0);
  const double s1 = sobolev_norm(f, 1.0);
  const double s2 = sobolev_norm(f, 2.0);
  CHECK(s0 <= s1);
  CHECK(s1 <= s2);
}

TEST_CASE("lebesgue norms: constants, unimodular modes, cos^6") {
  auto grid = make_grid(8, 1.0);

  std::vector<double> ones(grid->size(), 1.0);
  ScalarField unit = ScalarField::from_samples(grid, std::move(ones));
  for (double r : {1.0, 2.0, 6.0}) {
    CHECK(lebesgue_norm(unit, r) == doctest::Approx(1.0).epsilon(1e-13));
  }
  CHECK(lebesgue_norm(unit, std::numeric_limits<double>::infinity()) ==
        doctest::Approx(1.0).epsilon(1e-13));

  // complex unimodular mode as a vector field: |f| = 1 pointwise
  {
    std::array<std::vector<cplx>, 3> comps;
    for (auto& c : comps) c.assign(grid->size(), cplx{0.0, 0.0});
    const std::size_t n = grid->n();
    for (std::size_t iz = 0; iz < n; ++iz) {
      for (std::size_t iy = 0; iy < n; ++iy) {
        for (std::size_t ix = 0; ix < n; ++ix) {
          comps[0][grid->flat(ix, iy, iz)] = std::polar(1.0, 2.0 * kPi * grid->coord(ix));
        }
      }
    }
    VectorField f = VectorField::from_components(grid, Representation::physical,
                                                 std::move(comps));
    CHECK(lebesgue_norm(f, 6.0) == doctest::Approx(1.0).epsilon(1e-13));
  }

  // the trigonometric power integral of cos^6 is 5/16; the dense-quadrature
  // oracle and the 8^3 grid quadrature must both hit it
  {
    double dense = 0.0;
    const std::size_t m = 100000;
    for (std::size_t i = 0; i < m; ++i) {
      const double x = static_cast<double>(i) / m;
      dense += std::pow(std::cos(2.0 * kPi * x), 6);
    }
    dense /= static_cast<double>(m);
    CHECK(dense == doctest::Approx(5.0 / 16.0).epsilon(1e-9));

    ScalarField f = pure_mode(grid, 1);
    CHECK(std::pow(lebesgue_norm(f, 6.0), 6.0) ==
          doctest::Approx(5.0 / 16.0).epsilon(1e-12));
  }
}

TEST_CASE("dealias: support rule, idempotence, Nyquist kill") {
  auto grid = make_grid(8, 1.0);  // cutoff |m| <= 2

  ScalarField f = random_physical(grid, 13);
  ScalarField once = dealias(f);
  ScalarField twice = dealias(once);
  ScalarField diff = twice - once;
  CHECK(l2_norm(diff) == 0.0);

  // in-band content is untouched
  {
    std::vector<cplx> coeffs(grid->size(), cplx{0.0, 0.0});
    coeffs[grid->flat(2, 1, 0)] = cplx{1.0, -0.5};
    ScalarField inband = ScalarField::from_spectrum(grid, std::move(coeffs));
    ScalarField kept = dealias(inband);
    CHECK(std::abs(kept.spectrum()[grid->flat(2, 1, 0)] - cplx{1.0, -0.5}) == 0.0);
  }

  // a pure Nyquist mode is removed
  {
    std::vector<cplx> coeffs(grid->size(), cplx{0.0, 0.0});
    coeffs[grid->flat(4, 0, 0)] = cplx{1.0, 0.0};
    ScalarField nyq = ScalarField::from_spectrum(grid, std::move(coeffs));
    CHECK(l2_norm(dealias(nyq)) == 0.0);
  }
}

TEST_CASE("strichartz_norm: max, constants and the t^2 integral") {
  std::vector<std::pair<double, double>> three = {{0.0, 1.0}, {0.5, 3.0}, {1.0, 2.0}};
  CHECK(strichartz_norm(three, std::numeric_limits<double>::infinity()) == 3.0);

  std::vector<std::pair<double, double>> constant;
  for (int i = 0; i <= 10; ++i) constant.emplace_back(i / 10.0, 0.7);
  CHECK(strichartz_norm(constant, 2.0) == doctest::Approx(0.7).epsilon(1e-13));

  std::vector<std::pair<double, double>> ramp;
  for (int i = 0; i <= 1000; ++i) {
    const double t = i / 1000.0;
    ramp.emplace_back(t, t);
  }
  CHECK(std::abs(strichartz_norm(ramp, 2.0) - 1.0 / std::sqrt(3.0)) < 1e-4);

  std::vector<std::pair<double, double>> single = {{0.0, 1.0}};
  CHECK_THROWS_AS(strichartz_norm(single, 2.0), std::invalid_argument);
}

TEST_SUITE_END();
