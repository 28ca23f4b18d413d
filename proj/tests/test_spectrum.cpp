#include <doctest.h>

#include "desk_models.hpp"
#include "sovxxz/qalgebra.hpp"
#include "sovxxz/spectrum.hpp"

using namespace sovxxz;
using namespace sovxxz::testing;

namespace {

std::vector<EigenvalueFunction> functions(const std::vector<OracleEntry>& sp) {
  std::vector<EigenvalueFunction> out;
  for (const auto& e : sp) out.push_back(e.t);
  return out;
}

}  // namespace

TEST_CASE("eigenvalue function interpolation") {
  ChainModel m({1, 2, 1}, {cplx(0.1, -0.05), cplx(0.6, 0.08), cplx(1.1, 0.21)}, kEta);
  EigenvalueFunction t(m, {cplx(0.3, 0.1), cplx(-0.2, 0.4), cplx(0.5, -0.3)});
  for (int n = 0; n < 3; ++n) CHECK(std::abs(t(m.xi(n)) - t.t_at_xi()[n]) < 1e-14);
  Rng rng(41);
  for (cplx l : random_points(rng, 5)) CHECK(std::abs(t(l + cplx(0, kPi)) - t(l)) < 1e-12);
  std::vector<cplx> pts = random_points(rng, 6), vals;
  for (cplx p : pts) vals.push_back(t(p));
  EigenvalueFunction fit = fit_eigenvalue_function(m, pts, vals);
  CHECK(eigenvalue_distance(m, fit, t) < 1e-12);
}

TEST_CASE("single site spectrum") {
  ChainModel m({1}, {cplx(0.2, 0.1)}, kEta);
  Rng rng(42);
  auto sp = brute_force_spectrum(m, rng);
  REQUIRE(sp.size() == 2);
  CHECK(std::abs(sp[0].t.t_at_xi()[0] + std::sinh(kEta)) < 1e-12);
  CHECK(std::abs(sp[1].t.t_at_xi()[0] - std::sinh(kEta)) < 1e-12);

  CMatrix d = d_matrix(m, sp[1].t, 0);
  CHECK(std::abs(d(0, 1) - std::sinh(kEta)) < 1e-14);
  CHECK(std::abs(d(1, 0) - std::sinh(kEta)) < 1e-14);
  CHECK(std::abs(d.determinant()) < 1e-14);

  NullspaceVectors nv = nullspace_vectors(m, sp[1].t);
  CHECK(std::abs(nv.q[0](0) - 1.0) < 1e-15);
  CHECK(std::abs(nv.q[0](1) + 1.0) < 1e-14);

  EigenvalueFunction zero(m, {0.0});
  CHECK(discrete_residual(m, zero) > 0.5);

  SOVBasis b = build_sov_basis(m);
  Eigenstates st = build_eigenstates(m, b, nv);
  CVector ones(2);
  ones << 1.0, 1.0;
  ChainModel m0({1}, {0.0}, kEta);
  SOVBasis b0 = build_sov_basis(m0);
  EigenvalueFunction plus(m0, {std::sinh(kEta)});
  Eigenstates st0 = build_eigenstates(m0, b0, nullspace_vectors(m0, plus));
  CHECK(overlap_deficiency(st0.right, ones) < 1e-12);
  CHECK(eigen_residual(m, st.right, sp[1].t, random_points(rng, 5)) < 1e-12);
}

TEST_CASE("spin-1 site gives a tridiagonal block") {
  ChainModel m({2, 1}, {cplx(0.1, -0.05), cplx(0.6, 0.08)}, kEta);
  EigenvalueFunction t(m, {0.1, 0.2});
  CMatrix d = d_matrix(m, t, 0);
  CHECK(d.rows() == 3);
  CHECK(d(0, 2) == cplx(0.0));
  CHECK(d(2, 0) == cplx(0.0));
}

TEST_CASE("N=2 spin-1/2 spectrum is simple and kappa independent") {
  ChainModel m({1, 1}, {cplx(0.1, -0.05), cplx(0.6, 0.08)}, kEta);
  Rng rng(43);
  auto a = functions(brute_force_spectrum(m, rng));
  CHECK(a.size() == 4);
  CHECK(min_separation(a) > 1e-3);
  auto b = functions(brute_force_spectrum(m.with_kappa(2.0), rng));
  CHECK(spectrum_distance(a, b) < 1e-9);
}

TEST_CASE("mixed spins: discrete system, nullspace vectors and perturbations") {
  ChainModel m({1, 2}, {cplx(0.1, -0.05), cplx(0.6, 0.08)}, kEta);
  Rng rng(44);
  auto sp = brute_force_spectrum(m, rng);
  for (const auto& e : sp) {
    CHECK(discrete_residual(m, e.t) < 1e-8);
    NullspaceVectors nv = nullspace_vectors(m, e.t);
    for (double c : nv.consistency) CHECK(c < 1e-9);
    CHECK(left_null_residual(m, e.t, nv) < 1e-9);
    std::vector<cplx> pert = e.t.t_at_xi();
    pert[1] += 1e-3;
    CHECK(discrete_residual(m, EigenvalueFunction(m, pert)) > 1e-6);
    NewtonResult nr = refine_eigenvalue(m, EigenvalueFunction(m, pert));
    CHECK(eigenvalue_distance(m, nr.t, e.t) < 1e-10);
  }
}

TEST_CASE("eigenstates on three sites with a complex twist") {
  ChainModel m({1, 1, 1}, {cplx(0.1, -0.05), cplx(0.6, 0.08), cplx(1.1, 0.21)}, kEta,
               std::polar(1.0, 0.3));
  Rng rng(45);
  auto sp = brute_force_spectrum(m, rng);
  SOVBasis b = build_sov_basis(m);
  std::vector<Eigenstates> states;
  for (const auto& e : sp) {
    states.push_back(build_eigenstates(m, b, nullspace_vectors(m, e.t)));
    auto pts = random_points(rng, 5);
    CHECK(eigen_residual(m, states.back().right, e.t, pts) < 1e-8);
    CHECK(eigen_residual(m, states.back().left, e.t, pts) < 1e-8);
    CHECK(overlap_deficiency(states.back().right, e.right) < 1e-8);
  }
  for (std::size_t i = 0; i < states.size(); ++i)
    for (std::size_t j = 0; j < states.size(); ++j) {
      if (i == j) continue;
      cplx o = (states[i].left * states[j].right)(0);
      CHECK(std::abs(o) < 1e-9 * states[i].left.norm() * states[j].right.norm());
    }
}

TEST_CASE("quasi-periodicity of oracle eigenvalues") {
  for (const auto& c : desk_cases()) {
    ChainModel m = desk_model(c);
    Rng rng(46);
    auto sp = brute_force_spectrum(m, rng);
    CHECK(static_cast<int>(sp.size()) == m.hilbert_dim());
    const double sign = m.n_sites() % 2 == 1 ? 1.0 : -1.0;
    for (const auto& e : sp)
      for (cplx l : random_points(rng, 3)) {
        double scale = std::max(1.0, std::abs(e.t(l)));
        CHECK(std::abs(e.t(l + cplx(0, kPi)) - sign * e.t(l)) < 1e-10 * scale);
      }
  }
}
