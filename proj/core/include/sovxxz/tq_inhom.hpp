#pragma once

#include <vector>

#include "sovxxz/chain_model.hpp"
#include "sovxxz/spectrum.hpp"
#include "sovxxz/trigpoly.hpp"

namespace sovxxz {

/// Solution Q(lambda) = prod_j sinh(lambda - lambda_j) of the inhomogeneous
/// T-Q equation with deformation alpha.
struct QFunctionInhom {
  std::vector<cplx> roots;
  cplx lambda_bar = 0.0;
  TrigPoly poly;
  cplx alpha = 0.0;
  cplx zeta0 = 0.0;

  cplx operator()(cplx lambda) const;
  /// Q with `roots` replaced (used for perturbation experiments).
  static QFunctionInhom from_roots(std::vector<cplx> roots, cplx alpha);
};

/// F_x(lambda)
cplx f_inhom(const ChainModel& model, cplx x, cplx lambda);

/// Interpolation nodes zeta_0, xi_n^{(h)} (h <= 2s_n - 1), in solver order.
std::vector<cplx> inhom_nodes(const ChainModel& model, cplx zeta0);

/// Draws zeta_0 away (mod i*pi) from every xi_n^{(h)} by at least `margin`.
cplx draw_zeta0(const ChainModel& model, Rng& rng, double margin = 1e-2,
                double period = kPi);

/// x_h = [prod_{l<h} e^{xi_n^{(l)}}]^{-1} q_h
std::vector<CVector> x_coefficients(const ChainModel& model, const NullspaceVectors& nv);

/// N x N matrix M(beta, zeta) and the right-hand side multiplying Q(zeta_0).
CMatrix m_matrix(const ChainModel& model, const NullspaceVectors& nv, cplx beta, cplx zeta);
CVector m_rhs(const ChainModel& model, cplx zeta);
/// Closed-form value of det M(0, zeta).
cplx det_m_at_zero_closed_form(const ChainModel& model, cplx zeta);

struct InhomOptions {
  /// Relative (Hadamard-scaled) determinant below which alpha is exceptional.
  double det_tol = 1e-11;
  /// |Q(xi_j^{(0)})| below this fraction of max|Q(node)| is non-admissible.
  double admissible_tol = 1e-9;
  TrigPolyOptions trig;
};

/// One solve at fixed (alpha, zeta_0). Throws ExceptionalAlpha, NonAdmissible
/// or NotFullDegree.
QFunctionInhom solve_q_inhom(const ChainModel& model, const EigenvalueFunction& t,
                             cplx alpha, cplx zeta0, const InhomOptions& opts = {});

struct InhomRetryResult {
  QFunctionInhom q;
  int retries = 0;
};

/// Solve at the model's alpha; on ExceptionalAlpha or NonAdmissible redraw
/// alpha with |e^alpha| in [1/2, 2], at most `max_retries` times.
InhomRetryResult solve_q_inhom_retry(const ChainModel& model, const EigenvalueFunction& t,
                                     Rng& rng, int max_retries = 3,
                                     const InhomOptions& opts = {});

/// Relative residual of the inhomogeneous T-Q equation over `grid`.
double eq_inh_residual(const ChainModel& model, const EigenvalueFunction& t,
                       const QFunctionInhom& q, const std::vector<cplx>& grid);

/// Pole numerators at the roots, each divided by its largest term.
std::vector<double> bethe_residuals_inhom(const ChainModel& model, const QFunctionInhom& q);

struct InhomTReport {
  EigenvalueFunction t;
  std::vector<double> bethe;
};

/// Eigenvalue from Q at the inhomogeneities. When a root sits on some xi_n
/// the values are fitted from generic points instead, or PoleAtXi is thrown
/// if `generic_fallback` is false.
InhomTReport t_from_q_inhom(const ChainModel& model, const QFunctionInhom& q,
                            double pole_tol = 1e-8, bool generic_fallback = true);

/// exp(-lambda (lambda + eta - 2 alpha) / (2 eta))
cplx gaussian_prefactor(cplx lambda, cplx alpha, cplx eta);

/// Gauss-dressed Q values at xi_n^{(h)}, indexed [n][h].
std::vector<std::vector<cplx>> q_coordinates_inhom(const ChainModel& model,
                                                   const QFunctionInhom& q);

/// Eigenstates built from the dressed Q values.
Eigenstates eigenstates_from_q_inhom(const ChainModel& model, const SOVBasis& basis,
                                     const QFunctionInhom& q, double zero_tol = 1e-12);

/// sigma_min / sigma_max of the map Q -> -e^{l-alpha} a Q(l-eta)
/// + e^{-l-eta+alpha} d Q(l+eta) - t Q on the coefficients of T_{N_s}.
double homogeneous_map_conditioning(const ChainModel& model, const EigenvalueFunction& t,
                                    cplx alpha);

/// The extreme coefficients (e^{+-(N_s+N+1) lambda}) of
/// Z = -e^{l-alpha} a Q(l-eta) + e^{-l-eta+alpha} d Q(l+eta) + F, relative to
/// the largest coefficient of the individual terms.
double z_degree_residual(const ChainModel& model, const QFunctionInhom& q);

}  // namespace sovxxz
