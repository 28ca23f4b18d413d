#include <doctest.h>

#include "desk_models.hpp"
#include "sovxxz/qalgebra.hpp"
#include "sovxxz/tq_hom.hpp"
#include "sovxxz/tq_inhom.hpp"

using namespace sovxxz;
using namespace sovxxz::testing;

namespace {

const std::vector<std::vector<int>> kShapes{{1}, {2}, {1, 1}, {1, 2}, {2, 1}, {1, 1, 1}, {2, 2}, {3}, {1, 3}};

TrigPoly random_poly(Rng& rng, AngleScale scale) {
  std::uniform_int_distribution<int> deg(0, 5), left(-3, 3);
  std::vector<cplx> c;
  int m2 = deg(rng);
  for (int j = 0; j <= m2; ++j) c.push_back(random_point(rng, -1, 1, -1, 1));
  return TrigPoly(left(rng), c, scale);
}

}  // namespace

TEST_CASE("trig polynomial arithmetic agrees with pointwise arithmetic") {
  Rng rng(81);
  for (int trial = 0; trial < 200; ++trial) {
    AngleScale scale = trial % 2 ? AngleScale::Full : AngleScale::Half;
    TrigPoly p = random_poly(rng, scale), q = random_poly(rng, scale);
    cplx delta = random_point(rng, -1, 1, -3, 3);
    for (cplx l : random_points(rng, 3)) {
      double s = std::max({1.0, std::abs(p(l)) * std::abs(q(l)), std::abs(p(l + delta))});
      CHECK(std::abs((p * q)(l) - p(l) * q(l)) < 1e-12 * s);
      CHECK(std::abs(p.shifted(delta)(l) - p(l + delta)) < 1e-11 * s);
      if (p.parity() == q.parity()) CHECK(std::abs((p - q)(l) - (p(l) - q(l))) < 1e-12 * s);
    }
  }
}

TEST_CASE("roots of random sinh products") {
  Rng rng(82);
  for (int trial = 0; trial < 100; ++trial) {
    AngleScale scale = trial % 2 ? AngleScale::Full : AngleScale::Half;
    double period = half_period(scale);
    std::uniform_int_distribution<int> deg(1, 8);
    std::vector<cplx> r;
    int n = deg(rng);
    for (int j = 0; j < n; ++j) r.push_back(random_point(rng, -1, 1, 0, period));
    bool separated = true;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) separated &= distance_mod_period(r[i] - r[j], period) > 0.05;
    if (!separated) continue;
    RootForm f = roots(TrigPoly::sinh_product(r, scale));
    CHECK(multiset_distance(f.roots, r, period) < 1e-8);
  }
}

TEST_CASE("algebraic identities on random models") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const auto& shape = kShapes[seed % kShapes.size()];
    ChainModel m = generate_model(seed, shape, 0.05).with_kappa(std::polar(1.5, 0.1 * seed));
    Rng rng(seed);
    cplx a = random_point(rng, -1, 1, -1, 1), b = random_point(rng, -1, 1, -1, 1);
    CHECK(qdet_residual(m, a) < 1e-10);
    CHECK(rtt_residual(m, a, b) < 1e-12);
    CHECK(transfer_commutator(m, a, b) < 1e-10);
    CHECK(d_spectrum_gap(m) > 0.0);
  }
}

TEST_CASE("pipelines agree on random models") {
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    const auto& shape = kShapes[seed % kShapes.size()];
    ChainModel m = generate_model(seed, shape, 0.05);
    CAPTURE(seed);
    Rng rng(seed);
    auto sp = brute_force_spectrum(m, rng);
    CHECK(static_cast<int>(sp.size()) == m.hilbert_dim());
    for (const auto& e : sp) {
      CHECK(discrete_residual(m, e.t) < 1e-8);

      InhomRetryResult ri = solve_q_inhom_retry(m, e.t, rng);
      CHECK(eq_inh_residual(m, e.t, ri.q, residual_grid(40)) < 1e-8);
      InhomTReport ti = t_from_q_inhom(m, ri.q);
      CHECK(discrete_residual(m, ti.t) < 1e-8);

      QFunctionHom qh = solve_q_hom(m, e.t, rng);
      WronskianFit wf = verify_wronskian_identity(m, qh, residual_grid(40));
      CHECK(wf.epsilon == qh.epsilon);
      PairTReport th = t_from_q_pair(m, qh, wf.epsilon);
      CHECK(eigenvalue_distance(m, th.t, e.t) < 1e-8);
      CHECK(pair_t_quasi_periodicity(m, qh, wf.epsilon, random_points(rng, 4)) < 1e-9);
      CHECK(q_vector_proportionality(m, qh).max_angle() < 1e-7);
    }
  }
}
