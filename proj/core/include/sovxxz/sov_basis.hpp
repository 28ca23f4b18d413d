#pragma once

#include <vector>

#include "sovxxz/chain_model.hpp"
#include "sovxxz/numeric.hpp"

namespace sovxxz {

/// Multi-index (h_1..h_N), h_n in 0..2s_n.
using HTuple = std::vector<int>;

/// All tuples in lexicographic order (last site fastest); the position of a
/// tuple in this list is its linear index.
std::vector<HTuple> enumerate_tuples(const ChainModel& model);
int tuple_index(const ChainModel& model, const HTuple& h);
void check_tuple(const ChainModel& model, const HTuple& h);

/// d_h(lambda) = prod_n sinh(lambda - xi_n^{(h_n)})
cplx d_eigenvalue(const ChainModel& model, const HTuple& h, cplx lambda);
/// prod_{i<j} sinh(xi_j^{(h_j)} - xi_i^{(h_i)})
cplx vandermonde(const ChainModel& model, const HTuple& h);

/// Which constant scales the reference states.
enum class ReferenceScale {
  /// n^2 = prod_{i<j} sinh(xi_j^{(0)} - xi_i^{(0)}); consistent with the
  /// overlap formula for arbitrary spins.
  Shifted,
  /// n^2 = prod_{i<j} sinh(xi_j - xi_i); agrees with Shifted for uniform spins.
  Bare,
};

struct SOVBasis {
  std::vector<HTuple> tuples;
  /// Column k is |h_k>.
  CMatrix right;
  /// Row k is <h_k|.
  CMatrix left;
  cplx normalization = 1.0;
};

SOVBasis build_right_basis(const ChainModel& model,
                           ReferenceScale scale = ReferenceScale::Shifted,
                           double conditioning_tol = 1e-12);
SOVBasis build_left_basis(const ChainModel& model,
                          ReferenceScale scale = ReferenceScale::Shifted,
                          double conditioning_tol = 1e-12);
/// Both halves.
SOVBasis build_sov_basis(const ChainModel& model,
                         ReferenceScale scale = ReferenceScale::Shifted,
                         double conditioning_tol = 1e-12);

/// <h|k> computed from the built states.
cplx overlap(const ChainModel& model, const SOVBasis& basis, const HTuple& h,
             const HTuple& k);
/// <h|k> predicted in closed form.
cplx overlap_expected(const ChainModel& model, const HTuple& h, const HTuple& k);
/// Largest |<h|k> - expected| relative to the largest expected overlap.
double overlap_residual(const ChainModel& model, const SOVBasis& basis);

/// ||sum_h V_h |h><h| - Id||_F / sqrt(dim)
double identity_resolution(const ChainModel& model, const SOVBasis& basis);

/// Representation matrices of the closed-form actions in the SOV basis.
/// Right actions: Op |h_k> = sum_j M(j,k) |h_j>. Left actions:
/// <h_k| Op = sum_j M(k,j) <h_j|.
CMatrix d_action(const ChainModel& model, cplx lambda);
CMatrix c_action_right(const ChainModel& model, cplx lambda);
CMatrix b_action_right(const ChainModel& model, cplx lambda);
CMatrix c_action_left(const ChainModel& model, cplx lambda);
CMatrix b_action_left(const ChainModel& model, cplx lambda);
/// A fixed by the quantum determinant: (a(l) d(l-eta) + B(l) C(l-eta)) D(l-eta)^{-1}.
CMatrix a_action_right(const ChainModel& model, cplx lambda);
CMatrix a_action_left(const ChainModel& model, cplx lambda);

struct ActionResiduals {
  double d_right = 0.0;
  double c_right = 0.0;
  double b_right = 0.0;
  double a_right = 0.0;
  double d_left = 0.0;
  double c_left = 0.0;
  double b_left = 0.0;
  double a_left = 0.0;

  double max() const;
};

/// Compares the operators of the monodromy with the closed-form actions on
/// the built basis at a given lambda.
ActionResiduals action_residuals(const ChainModel& model, const SOVBasis& basis,
                                 cplx lambda);

/// ||[B(x), B(y)]|| relative, over all pairs of shifted inhomogeneities used
/// to build the basis.
double b_commutation_residual(const ChainModel& model);

/// Smallest distance (mod i*pi) between the zero multisets of d_h and d_k,
/// h != k: a positive value certifies that D has simple spectrum.
double d_spectrum_gap(const ChainModel& model);

}  // namespace sovxxz
