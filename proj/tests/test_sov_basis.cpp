#include <doctest.h>

#include "desk_models.hpp"
#include "sovxxz/errors.hpp"
#include "sovxxz/qalgebra.hpp"
#include "sovxxz/sov_basis.hpp"

using namespace sovxxz;
using namespace sovxxz::testing;

TEST_CASE("tuples") {
  ChainModel m({1, 2}, {0.0, 0.7}, kEta);
  auto tuples = enumerate_tuples(m);
  CHECK(tuples.size() == 6);
  CHECK(tuples[1] == HTuple{0, 1});
  for (std::size_t i = 0; i < tuples.size(); ++i) CHECK(tuple_index(m, tuples[i]) == static_cast<int>(i));
  CHECK_THROWS_AS(check_tuple(m, {2, 0}), IndexOutOfRange);
  CHECK_THROWS_AS(check_tuple(m, {0}), IndexOutOfRange);
}

TEST_CASE("single site reduction") {
  ChainModel m({1}, {cplx(0.2, 0.1)}, kEta);
  SOVBasis b = build_sov_basis(m);
  CHECK(std::abs(d_eigenvalue(m, {0}, 0.5) - std::sinh(0.5 - m.xi(0) - kEta / 2.0)) < 1e-14);
  CHECK(std::abs(overlap(m, b, {0}, {0}) - 1.0) < 1e-12);
  CHECK(std::abs(overlap(m, b, {1}, {1}) - 1.0) < 1e-12);
  CHECK(std::abs(overlap(m, b, {0}, {1})) < 1e-12);
  CHECK(identity_resolution(m, b) < 1e-14);
  // |0> is the highest-weight state
  CHECK(std::abs(b.right(1, 0)) < 1e-15);
}

TEST_CASE("two spin-1/2 sites at real parameters") {
  ChainModel m({1, 1}, {0.0, 0.7}, 0.3);
  SOVBasis b = build_sov_basis(m);
  CHECK(std::abs(overlap(m, b, {0, 0}, {0, 0}) - 1.3182460914662973) < 1e-9);
  CHECK(std::abs(overlap(m, b, {0, 1}, {1, 0})) < 1e-10);
  Rng rng(31);
  for (cplx l : random_points(rng, 3)) {
    ActionResiduals r = action_residuals(m, b, l);
    CHECK(r.d_right < 1e-10);
    CHECK(r.max() < 1e-9);
  }
}

TEST_CASE("identity resolution and overlaps on larger models") {
  ChainModel d3({1, 2}, {cplx(0.1, -0.05), cplx(0.6, 0.08)}, kEta);
  ChainModel d4({1, 1, 1}, {cplx(0.1, -0.05), cplx(0.6, 0.08), cplx(1.1, 0.21)}, kEta);
  for (const ChainModel* m : {&d3, &d4}) {
    SOVBasis b = build_sov_basis(*m);
    CHECK(identity_resolution(*m, b) < 1e-8);
    CHECK(overlap_residual(*m, b) < 1e-9);
    CHECK(b_commutation_residual(*m) < 1e-12);
    CHECK(d_spectrum_gap(*m) > 1e-3);
    Rng rng(32);
    for (cplx l : random_points(rng, 3)) CHECK(action_residuals(*m, b, l).max() < 1e-9);
  }
}

TEST_CASE("shifted and bare reference scales agree for uniform spins") {
  ChainModel m({1, 1}, {cplx(0.1, -0.05), cplx(0.6, 0.08)}, kEta);
  SOVBasis s = build_sov_basis(m, ReferenceScale::Shifted);
  SOVBasis b = build_sov_basis(m, ReferenceScale::Bare);
  CHECK(std::abs(s.normalization - b.normalization) < 1e-14);
}

TEST_CASE("conditioning failure near a lattice collision") {
  ModelLimits loose;
  loose.delta_min = 0.0;
  ChainModel m({1, 1}, {0.0, cplx(0.31, 0.07) + 1e-14}, kEta, 1.0, 0.0, loose);
  CHECK_THROWS_AS(build_sov_basis(m), ConditioningFailure);
}
