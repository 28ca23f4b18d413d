#pragma once

#include "sovxxz/chain_model.hpp"
#include "sovxxz/numeric.hpp"

namespace sovxxz {

/// [j]_q = sinh(j eta) / sinh(eta)
cplx q_int(int j, cplx eta);

struct SpinMatrices {
  CMatrix sz;
  CMatrix splus;
  CMatrix sminus;
};

/// Spin-s representation of U_q(sl2) in the basis |k>, k = 0..2s, with
/// Sz|k> = (s-k)|k>.
SpinMatrices spin_matrices(int two_s, cplx eta);

/// Residual of [S+,S-] = sinh(2 eta Sz)/sinh(eta) and [Sz,S+-] = +-S+-.
double uq_residual(int two_s, cplx eta);

/// 2x2 operator-valued matrix [[a, b], [c, d]] over the auxiliary space.
struct Blocks {
  CMatrix a;
  CMatrix b;
  CMatrix c;
  CMatrix d;

  const CMatrix& operator()(int i, int j) const;
  CMatrix& operator()(int i, int j);
  /// Dense 2*dim matrix with the auxiliary space as the most significant
  /// tensor factor.
  CMatrix dense() const;
};

/// Lax operator of site n (0-based) at spectral parameter lambda.
Blocks lax(const ChainModel& model, int site, cplx lambda);

/// Six-vertex R-matrix on C^2 (x) C^2.
CMatrix r_matrix(cplx lambda, cplx eta);

/// Monodromy L_N(lambda - xi_N) ... L_1(lambda - xi_1). Site 1 is the most
/// significant tensor factor of the quantum space.
Blocks monodromy(const ChainModel& model, cplx lambda);

/// kappa^{-1} B(lambda) + kappa C(lambda)
CMatrix transfer_antiperiodic(const ChainModel& model, cplx lambda);

/// Relative residual of R(l-m) L(l) L'(m) = L'(m) L(l) R(l-m) at one site.
double rll_residual(const ChainModel& model, int site, cplx lambda, cplx mu);
/// Relative residual of the RTT relation for the full monodromy.
double rtt_residual(const ChainModel& model, cplx lambda, cplx mu);
/// Max of both quantum-determinant orderings, relative to |a d|.
double qdet_residual(const ChainModel& model, cplx lambda);
/// ||[T(lambda), T(mu)]|| / (||T(lambda)|| ||T(mu)||)
double transfer_commutator(const ChainModel& model, cplx lambda, cplx mu);

enum class NormalityCase { CaseI, CaseII, NotApplicable };

const char* to_string(NormalityCase c);

struct NormalityReport {
  NormalityCase which = NormalityCase::NotApplicable;
  double residual = 0.0;
  bool passed = false;
};

/// Adjoint identity of the transfer matrix at `samples` random points.
NormalityReport normality_check(const ChainModel& model, Rng& rng,
                                int samples = 5, double tol = 1e-12,
                                double hypothesis_tol = 1e-14);

}  // namespace sovxxz
