#include "zak/verify.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "zak/limitlab.hpp"
#include "zak/report.hpp"
#include "zak/snapshot.hpp"

namespace zak {

namespace {

struct Check {
  double worst = 0.0;
  bool ok = true;
  std::string note;

  void bound(double value, double tol, const std::string& what) {
    worst = std::max(worst, value);
    if (!(value <= tol)) {
      ok = false;
      if (!note.empty()) note += "; ";
      std::ostringstream os;
      os << what << " = " << value << " > " << tol;
      note += os.str();
    }
  }
};

VectorField random_vec(const GridPtr& grid, std::uint64_t seed) {
  DataRecipe r;
  r.seed = seed;
  r.n_modes = std::min<int>(4, static_cast<int>(grid->n()) / 3);
  return gen_initial(r, grid, AlphaParam(1.0)).u;
}

ScalarField random_scal(const GridPtr& grid, std::uint64_t seed) {
  DataRecipe r;
  r.seed = seed;
  r.n_modes = std::min<int>(4, static_cast<int>(grid->n()) / 3);
  return gen_initial(r, grid, AlphaParam(1.0)).n;
}

VerifyResult verify_transforms() {
  Check c;
  auto grid = make_grid(16, 2.0 * std::numbers::pi);

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    ScalarField f = to_physical(random_scal(grid, seed));
    const double scale = l2_norm(f);

    ScalarField round = to_physical(to_spectral(f));
    ScalarField diff = round - f;
    c.bound(l2_norm(diff) / scale, 1e-12, "round-trip");

    c.bound(std::abs(l2_norm(to_spectral(f)) - l2_norm(f)) / scale, 1e-12, "parseval");

    // conjugate symmetry of a real field's coefficients
    ScalarField spec = to_spectral(f);
    const auto& coeffs = spec.spectrum();
    const std::size_t n = grid->n();
    double worst = 0.0;
    for (std::size_t iz = 0; iz < n; ++iz) {
      for (std::size_t iy = 0; iy < n; ++iy) {
        for (std::size_t ix = 0; ix < n; ++ix) {
          const std::size_t idx = grid->flat(ix, iy, iz);
          const std::size_t mir =
              grid->flat((n - ix) % n, (n - iy) % n, (n - iz) % n);
          worst = std::max(worst, std::abs(coeffs[idx] - std::conj(coeffs[mir])));
        }
      }
    }
    c.bound(worst / (scale + 1e-300), 1e-12, "conjugate symmetry");
  }

  // constant field: only the zero mode survives
  {
    std::vector<double> ones(grid->size(), 3.5);
    ScalarField f = ScalarField::from_samples(grid, std::move(ones));
    ScalarField spec = to_spectral(f);
    double off = 0.0;
    for (std::size_t i = 1; i < spec.spectrum().size(); ++i) {
      off = std::max(off, std::abs(spec.spectrum()[i]));
    }
    c.bound(off, 1e-12, "dc off-mode leakage");
    c.bound(std::abs(spec.spectrum()[0] - cplx{3.5, 0.0}), 1e-12, "dc coefficient");
  }

  std::ostringstream detail;
  detail << "worst relative error " << c.worst;
  return {"transforms", c.ok, c.ok ? detail.str() : c.note};
}

VerifyResult verify_projections(const VerifyFaults& faults) {
  Check c;
  auto grid = make_grid(16, 2.0 * std::numbers::pi);
  const ZeroModeConvention conv = faults.projection_zero_mode_identity
                                      ? ZeroModeConvention::q_identity
                                      : ZeroModeConvention::q_zero;

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    VectorField f = random_vec(grid, seed);
    // constant offset makes the zero-mode convention observable
    {
      VectorField spec = to_spectral(f);
      auto comps = std::array<std::vector<cplx>, 3>{spec.component(0), spec.component(1),
                                                    spec.component(2)};
      comps[0][0] += cplx{0.3, 0.0};
      comps[1][0] += cplx{-0.2, 0.1};
      f = VectorField::from_components(grid, Representation::spectral, std::move(comps));
    }
    const double scale = sobolev_norm(f, 2.0);

    VectorField qf = project_Q(f, conv);
    VectorField pf = project_P(f, conv);

    VectorField qq = project_Q(qf, conv);
    qq -= qf;
    c.bound(l2_norm(qq) / scale, 1e-12, "Q idempotent");

    VectorField pq = project_P(qf, conv);
    c.bound(l2_norm(pq) / scale, 1e-12, "P Q = 0");

    VectorField sum = pf;
    sum += qf;
    sum -= to_spectral(f);
    c.bound(l2_norm(sum) / scale, 1e-12, "P + Q = 1");

    c.bound(divergence_l2(pf) / scale, 1e-12, "div P f");
    c.bound(curl_l2(qf) / scale, 1e-12, "curl Q f");

    // the solenoidal sector must keep the constant (zero) mode
    VectorField q_const = project_Q(f, conv);
    const cplx q_zero_mode = to_spectral(q_const).component(0)[0];
    c.bound(std::abs(q_zero_mode), 1e-12, "Q zero-mode convention");
  }

  std::ostringstream detail;
  detail << "worst relative defect " << c.worst;
  return {"projection-algebra", c.ok, c.ok ? detail.str() : c.note};
}

VerifyResult verify_propagator() {
  Check c;
  auto grid = make_grid(16, 2.0 * std::numbers::pi);
  const AlphaParam alpha(7.0);

  VectorField f = random_vec(grid, 11);
  const double scale = l2_norm(f);

  // group law and unitarity
  VectorField one_shot = apply_UZ(f, 0.7, alpha);
  VectorField two_shot = apply_UZ(apply_UZ(f, 0.3, alpha), 0.4, alpha);
  two_shot -= one_shot;
  c.bound(l2_norm(two_shot) / scale, 1e-12, "group law");
  c.bound(std::abs(l2_norm(one_shot) - scale) / scale, 1e-12, "isometry");

  VectorField id = apply_UZ(f, 0.0, alpha);
  id -= to_spectral(f);
  c.bound(l2_norm(id) / scale, 1e-12, "identity at t=0");

  // the propagator commutes with both projections
  VectorField lhs = project_P(apply_UZ(f, 0.37, alpha));
  VectorField rhs = apply_UZ(project_P(f), 0.37, alpha);
  lhs -= rhs;
  c.bound(l2_norm(lhs) / scale, 1e-12, "commutation with P");

  // single-mode phases: irrotational rides the slow group, solenoidal the fast
  {
    auto mode_field = [&](int pol) {
      auto comps = std::array<std::vector<cplx>, 3>{};
      for (auto& comp : comps) comp.assign(grid->size(), cplx{0.0, 0.0});
      comps[static_cast<std::size_t>(pol)][grid->flat(1, 0, 0)] = cplx{1.0, 0.0};
      return VectorField::from_components(grid, Representation::spectral,
                                          std::move(comps));
    };
    const double k2 = 1.0;  // m = (1,0,0) on L = 2 pi
    const double t = 0.31;
    VectorField irr = mode_field(0);
    VectorField out = apply_UZ(irr, t, alpha);
    const cplx expected = std::polar(1.0, -t * k2);
    c.bound(std::abs(to_spectral(out).component(0)[grid->flat(1, 0, 0)] - expected), 1e-12,
            "irrotational phase");
    VectorField sol = mode_field(1);
    out = apply_UZ(sol, t, alpha);
    const cplx expected_fast = std::polar(1.0, -alpha.value() * t * k2);
    c.bound(std::abs(to_spectral(out).component(1)[grid->flat(1, 0, 0)] - expected_fast),
            1e-12, "solenoidal phase");
  }

  std::ostringstream detail;
  detail << "worst relative defect " << c.worst;
  return {"propagator", c.ok, c.ok ? detail.str() : c.note};
}

VerifyResult verify_wave() {
  Check c;
  auto grid = make_grid(8, 2.0 * std::numbers::pi);

  ScalarField n0 = random_scal(grid, 3);
  ScalarField n1 = random_scal(grid, 4);

  // discrete wave energy over nonzero modes is conserved
  auto energy = [&](const ScalarField& n, const ScalarField& nt) {
    ScalarField ns = to_spectral(n), nts = to_spectral(nt);
    double acc = 0.0;
    for_each_mode(*grid, [&](std::size_t idx, double kx, double ky, double kz) {
      const double k2 = kx * kx + ky * ky + kz * kz;
      if (k2 > 0.0) acc += k2 * std::norm(ns.spectrum()[idx]) + std::norm(nts.spectrum()[idx]);
    });
    return acc;
  };

  const double e0 = energy(n0, n1);
  for (double t : {0.1, 0.7, 2.3}) {
    auto [n, nt] = wave_homogeneous(n0, n1, t);
    c.bound(std::abs(energy(n, nt) - e0) / e0, 1e-12, "wave energy");
  }

  // zero-mode linear growth n(t) = c t from n0 = 0, n1 = c
  {
    ScalarField z = ScalarField::zeros(grid, Representation::spectral);
    std::vector<double> cs(grid->size(), 0.25);
    ScalarField cfield = ScalarField::from_samples(grid, std::move(cs));
    auto [n, nt] = wave_homogeneous(z, cfield, 3.0);
    ScalarField n_phys = to_physical(n);
    double worst = 0.0;
    for (double v : n_phys.samples()) worst = std::max(worst, std::abs(v - 0.75));
    c.bound(worst, 1e-12, "zero-mode growth");
  }

  // stationary particular solution n0 = -g, n1 = 0
  {
    ScalarField g_src = random_scal(grid, 5);
    ScalarField n0_eq = -1.0 * g_src;
    ScalarField z = ScalarField::zeros(grid, Representation::spectral);
    auto [n, nt] = wave_forced_frozen(n0_eq, z, g_src, 0.9);
    ScalarField dn = to_spectral(n) - to_spectral(n0_eq);
    c.bound(l2_norm(dn) / (l2_norm(g_src) + 1e-300), 1e-12, "forced equilibrium");
  }

  std::ostringstream detail;
  detail << "worst relative defect " << c.worst;
  return {"wave", c.ok, c.ok ? detail.str() : c.note};
}

VerifyResult verify_dealias_norms() {
  Check c;
  auto grid = make_grid(16, 1.0);

  ScalarField f = random_scal(grid, 9);
  ScalarField once = dealias(f);
  ScalarField twice = dealias(once);
  ScalarField diff = twice - once;
  c.bound(l2_norm(diff), 0.0, "dealias idempotent");

  const double s0 = sobolev_norm(f, 0.0);
  const double s1 = sobolev_norm(f, 1.0);
  const double s2 = sobolev_norm(f, 2.0);
  c.bound((s0 - s1) / s0, 0.0, "H0 <= H1");
  c.bound((s1 - s2) / s0, 0.0, "H1 <= H2");
  c.bound(std::abs(s0 - lebesgue_norm(f, 2.0)) / s0, 1e-12, "H0 == L2");

  // cos(2 pi x) on L = 1: the sixth-power quadrature is exact for n >= 8
  {
    std::vector<double> samples(grid->size());
    const std::size_t n = grid->n();
    for (std::size_t iz = 0; iz < n; ++iz) {
      for (std::size_t iy = 0; iy < n; ++iy) {
        for (std::size_t ix = 0; ix < n; ++ix) {
          samples[grid->flat(ix, iy, iz)] =
              std::cos(2.0 * std::numbers::pi * grid->coord(ix));
        }
      }
    }
    ScalarField cosx = ScalarField::from_samples(grid, std::move(samples));
    const double l6 = lebesgue_norm(cosx, 6.0);
    c.bound(std::abs(std::pow(l6, 6.0) - 5.0 / 16.0), 1e-12, "cos^6 integral");
  }

  std::ostringstream detail;
  detail << "worst defect " << c.worst;
  return {"dealias-norms", c.ok, c.ok ? detail.str() : c.note};
}

VerifyResult verify_persistence() {
  Check c;
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "zak_verify";
  fs::create_directories(dir);

  auto grid = make_grid(8, 2.0 * std::numbers::pi);
  VectorField u = random_vec(grid, 21);
  const fs::path path = dir / "u.zkf";
  write_snapshot(path.string(), u, 0.25, 4.0);

  Snapshot snap = read_snapshot(path.string());
  if (!snap.vector) {
    c.bound(1.0, 0.0, "snapshot kind");
  } else {
    VectorField diff = to_physical(u);
    diff -= *snap.vector;
    c.bound(l2_norm(diff), 0.0, "snapshot payload bit-exact");
  }

  // write -> read -> write must reproduce the bytes
  const fs::path path2 = dir / "u2.zkf";
  if (snap.vector) {
    write_snapshot(path2.string(), *snap.vector, snap.time, snap.alpha);
    std::ifstream a(path, std::ios::binary), b(path2, std::ios::binary);
    std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
    std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
    c.bound(sa == sb ? 0.0 : 1.0, 0.0, "round-trip bytes");
  }

  // a truncated file must surface an error, not crash
  {
    std::string bytes = read_text_file(path.string());
    bytes.resize(bytes.size() / 2);
    const fs::path trunc = dir / "trunc.zkf";
    std::ofstream out(trunc, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.close();
    bool threw = false;
    try {
      (void)read_snapshot(trunc.string());
    } catch (const SnapshotError&) {
      threw = true;
    }
    c.bound(threw ? 0.0 : 1.0, 0.0, "truncated file surfaces error");
  }

  std::error_code ec;
  fs::remove_all(dir, ec);

  return {"persistence", c.ok, c.ok ? "snapshot round-trip bit-exact" : c.note};
}

}  // namespace

std::vector<VerifyResult> run_verify(const VerifyFaults& faults) {
  std::vector<VerifyResult> results;
  results.push_back(verify_transforms());
  results.push_back(verify_projections(faults));
  results.push_back(verify_propagator());
  results.push_back(verify_wave());
  results.push_back(verify_dealias_norms());
  results.push_back(verify_persistence());
  return results;
}

}  // namespace zak
