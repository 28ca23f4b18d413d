#include <doctest.h>

#include "desk_models.hpp"
#include "sovxxz/errors.hpp"
#include "sovxxz/tq_inhom.hpp"

using namespace sovxxz;
using namespace sovxxz::testing;

namespace {

const std::vector<cplx> kXi2{cplx(0.1, -0.05), cplx(0.6, 0.08)};

}  // namespace

TEST_CASE("F function") {
  ChainModel m({1, 2}, kXi2, kEta);
  CHECK(std::abs(f_inhom(m, 0.3, m.xi_shifted(0, 0))) < 1e-15);
  CHECK(std::abs(f_inhom(m, cplx(0.2, 0.1), cplx(0.45, -0.3)) -
                 cplx(0.031283623737621884, -0.038839178446527694)) < 1e-15);

  ChainModel d1({1}, {cplx(0.2, 0.1)}, kEta);
  const cplx x(0.3, -0.4), l(0.9, 0.2);
  const cplx x0 = d1.xi_shifted(0, 0), x1 = d1.xi_shifted(0, 1);
  cplx expected = 2.0 * std::exp(-kEta) * std::sinh(l - x + x1 + kEta) * std::sinh(l - x0) * std::sinh(l - x1);
  CHECK(std::abs(f_inhom(d1, x, l) - expected) < 1e-14);
}

TEST_CASE("two spin-1/2 sites at alpha = 0") {
  ChainModel m({1, 1}, kXi2, kEta);
  Rng rng(51);
  auto sp = brute_force_spectrum(m, rng);
  for (const auto& e : sp) {
    NullspaceVectors nv = nullspace_vectors(m, e.t);
    cplx z0 = draw_zeta0(m, rng);
    cplx det = m_matrix(m, nv, 0.0, z0).determinant();
    cplx closed = det_m_at_zero_closed_form(m, z0);
    CHECK(std::abs(det - closed) < 1e-8 * std::abs(closed));

    QFunctionInhom q = solve_q_inhom(m, e.t, 0.0, z0);
    CHECK(q.roots.size() == 2);
    CHECK(eq_inh_residual(m, e.t, q, residual_grid(40)) < 1e-8);
    QFunctionInhom q2 = solve_q_inhom(m, e.t, 0.0, draw_zeta0(m, rng));
    CHECK(multiset_distance(q.roots, q2.roots, kPi) < 1e-7);
    CHECK(z_degree_residual(m, q) < 1e-9);
    CHECK(homogeneous_map_conditioning(m, e.t, 0.0) > 1e-6);
    Rng prng(52);
    for (cplx l : random_points(prng, 3)) {
      QFunctionInhom back = QFunctionInhom::from_roots(q.roots, 0.0);
      CHECK(std::abs(back(l) - q(l)) < 1e-8 * std::max(1.0, std::abs(q(l))));
    }
  }
}

TEST_CASE("round trip and Bethe residuals for mixed spins") {
  ChainModel m({1, 2}, kXi2, kEta);
  Rng rng(53);
  auto sp = brute_force_spectrum(m, rng);
  for (const auto& e : sp) {
    InhomRetryResult r = solve_q_inhom_retry(m, e.t, rng);
    InhomTReport back = t_from_q_inhom(m, r.q);
    CHECK(eigenvalue_distance(m, back.t, e.t) < 1e-8);
    CHECK(max_of(back.bethe) < 1e-7);
    CHECK(max_of(bethe_residuals_inhom(m, r.q)) < 1e-7);

    std::vector<cplx> roots = r.q.roots;
    roots[0] += 1e-3;
    CHECK(max_of(bethe_residuals_inhom(m, QFunctionInhom::from_roots(roots, r.q.alpha))) > 1e-5);
  }
}

TEST_CASE("Q coordinates") {
  ChainModel m({1}, {cplx(0.2, 0.1)}, kEta, 1.0, cplx(0.3, -0.2));
  Rng rng(54);
  auto sp = brute_force_spectrum(m, rng);
  for (const auto& e : sp) {
    QFunctionInhom q = solve_q_inhom(m, e.t, m.alpha(), draw_zeta0(m, rng));
    NullspaceVectors nv = nullspace_vectors(m, e.t);
    auto x = x_coefficients(m, nv);
    cplx bare = q(m.xi_shifted(0, 1)) / q(m.xi_shifted(0, 0));
    CHECK(std::abs(bare - std::exp(m.alpha()) * x[0](1)) < 1e-9 * std::abs(bare));
    auto coords = q_coordinates_inhom(m, q);
    cplx dressed = coords[0][1] / coords[0][0];
    CHECK(std::abs(dressed - nv.q[0](1)) < 1e-9 * std::abs(dressed));
  }
  CHECK(std::abs(gaussian_prefactor(0.0, cplx(0.4, 0.2), kEta) - 1.0) < 1e-15);
}

TEST_CASE("eigenstates from Q") {
  ChainModel m({1, 2}, kXi2, kEta, std::polar(1.0, 0.3));
  Rng rng(55);
  auto sp = brute_force_spectrum(m, rng);
  SOVBasis b = build_sov_basis(m);
  for (const auto& e : sp) {
    InhomRetryResult r = solve_q_inhom_retry(m, e.t, rng);
    Eigenstates st = eigenstates_from_q_inhom(m, b, r.q);
    CHECK(overlap_deficiency(st.right, e.right) < 1e-8);
    CHECK(overlap_deficiency(st.left.transpose(), e.left.transpose()) < 1e-8);
  }
}

TEST_CASE("root on an inhomogeneity") {
  ChainModel m({1}, {cplx(0.2, 0.1)}, kEta);
  Rng rng(56);
  for (const auto& e : brute_force_spectrum(m, rng)) {
    QFunctionInhom q = solve_q_inhom(m, e.t, 0.0, draw_zeta0(m, rng));
    CHECK(eigenvalue_distance(m, t_from_q_inhom(m, q).t, e.t) < 1e-8);
  }
  QFunctionInhom on_xi = QFunctionInhom::from_roots({m.xi(0) + cplx(0, kPi)}, 0.0);
  CHECK_THROWS_AS(t_from_q_inhom(m, on_xi, 1e-8, false), PoleAtXi);
  CHECK_NOTHROW(t_from_q_inhom(m, on_xi));
}

TEST_CASE("errors") {
  ChainModel m({1, 1}, kXi2, kEta);
  Rng rng(57);
  auto sp = brute_force_spectrum(m, rng);
  InhomOptions strict;
  strict.det_tol = 2.0;
  CHECK_THROWS_AS(solve_q_inhom(m, sp[0].t, 0.0, draw_zeta0(m, rng), strict), ExceptionalAlpha);
  InhomOptions picky;
  picky.admissible_tol = 2.0;
  CHECK_THROWS_AS(solve_q_inhom(m, sp[0].t, 0.0, draw_zeta0(m, rng), picky), NonAdmissible);
  CHECK_THROWS_AS(solve_q_inhom_retry(m, sp[0].t, rng, 3, strict), ExceptionalAlpha);
}
