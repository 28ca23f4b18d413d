#pragma once

#include <optional>
#include <vector>

#include "sovxxz/chain_model.hpp"
#include "sovxxz/spectrum.hpp"
#include "sovxxz/trigpoly.hpp"

namespace sovxxz {

/// Q(lambda) = prod_a sinh((lambda - lambda_a)/2) together with the sign
/// epsilon and the integer m of the sum rule.
struct QFunctionHom {
  std::vector<cplx> roots;
  int epsilon = 1;
  int m = 0;
  TrigPoly poly;
  cplx zeta0 = 0.0;
  /// Distance of the root sum from its lattice position.
  double sum_rule_residual = 0.0;

  cplx operator()(cplx lambda) const;
  /// Q^{(eps)}(lambda) = Q(lambda + (1 - eps) i pi / 2)
  cplx shifted(int eps, cplx lambda) const;

  /// Roots are taken as given; epsilon and m come from the sum rule.
  static QFunctionHom from_roots(const ChainModel& model, std::vector<cplx> roots);
};

struct SumRule {
  int epsilon = 1;
  int m = 0;
  double residual = 0.0;
};

/// Reads epsilon and m off sum_a lambda_a - sum xi^{(h<2s)} + N_s eta / 2.
SumRule sum_rule(const ChainModel& model, const std::vector<cplx>& roots);

/// N x (N+1) matrix whose nullspace holds (Q(zeta), Q(xi_1^{(0)}), ...).
CMatrix n_bar_matrix(const ChainModel& model, const NullspaceVectors& nv, cplx zeta);

struct HomOptions {
  /// sigma_N / sigma_1 of the solve matrix at or below this is rank deficient.
  double rank_tol = 1e-8;
  /// |Q| at xi^{(0)} and xi^{(0)} + i pi below this fraction of max|Q(node)|
  /// counts as zero.
  double admissible_tol = 1e-9;
  /// Largest Wronskian residual accepted for the epsilon fit.
  double wronskian_tol = 1e-7;
  /// Newton steps on the Bethe equations applied to the extracted roots.
  int polish_steps = 3;
  TrigPolyOptions trig;
};

/// Throws RankDeficient, NonAdmissible, NotFullDegree or NoEpsilonFits (when
/// the sum-rule sign and the Wronskian sign disagree).
QFunctionHom solve_q_hom(const ChainModel& model, const EigenvalueFunction& t, cplx zeta0,
                         const HomOptions& opts = {});
QFunctionHom solve_q_hom(const ChainModel& model, const EigenvalueFunction& t, Rng& rng,
                         const HomOptions& opts = {});

/// sigma_N / sigma_1 of the solve matrix.
double n_bar_rank_ratio(const ChainModel& model, const EigenvalueFunction& t, cplx zeta0);

/// Relative residual of t Q = -a Q(l-eta) + d Q(l+eta) over `grid`.
double bax_hom_residual(const ChainModel& model, const EigenvalueFunction& t,
                        const QFunctionHom& q, const std::vector<cplx>& grid);

/// Q(l + i pi) Q(l - eta) + Q(l) Q(l + i pi - eta)
cplx wronskian(const QFunctionHom& q, cplx eta, cplx lambda);
/// Expanded product form of the same function.
cplx wronskian_expanded(const QFunctionHom& q, cplx eta, cplx lambda);

/// 2 eps (i/2)^{N_s} prod_{n, 1 <= h <= 2s_n - 1} sinh(lambda - xi_n^{(h)})
cplx w_epsilon(const ChainModel& model, int eps, cplx lambda);

struct WronskianFit {
  int epsilon = 1;
  double residual = 0.0;
};

/// Fits W = d w_eps over `grid` for both signs. Throws NoEpsilonFits when
/// neither residual is below `tol`.
WronskianFit verify_wronskian_identity(const ChainModel& model, const QFunctionHom& q,
                                       const std::vector<cplx>& grid, double tol = 1e-7);

struct PairTReport {
  EigenvalueFunction t;
  /// Relative numerator magnitude at each zero of w_eps.
  std::vector<double> entirety;
};

/// Eigenvalue from the pair Q(l), Q(l + i pi). Throws NotEntire when the
/// numerator does not vanish at a zero of w_eps.
PairTReport t_from_q_pair(const ChainModel& model, const QFunctionHom& q, int epsilon,
                          double tol = 1e-7);

struct ProportionalityReport {
  /// Principal angle between Q^{(n)} and tilde Q^{(n)} per site.
  std::vector<double> angle;
  std::vector<bool> both_zero;
  double max_angle() const;
};

ProportionalityReport q_vector_proportionality(const ChainModel& model, const QFunctionHom& q,
                                               double zero_tol = 1e-12);

/// |a Pi sinh((l_j - l_k - eta)/2) + d Pi sinh((l_j - l_k + eta)/2)| over the
/// larger term, per root. Throws CoincidentRoots.
std::vector<double> bethe_residuals_hom(const ChainModel& model, const std::vector<cplx>& roots,
                                        double coincide_tol = 1e-8);

/// Newton refinement of roots on the homogeneous Bethe equations; a step is
/// kept only when it lowers the largest residual.
std::vector<cplx> polish_roots_hom(const ChainModel& model, std::vector<cplx> roots, int steps);

/// The rational Bethe function -a Pi sinh((l-l_j-eta)/2)/sinh((l-l_j)/2)
/// + d Pi sinh((l-l_j+eta)/2)/sinh((l-l_j)/2).
cplx bethe_t_hom(const ChainModel& model, const std::vector<cplx>& roots, cplx lambda);

/// max |f(l + i pi) - (-1)^{N-1} f(l)| over `pts` for f = bethe_t_hom,
/// relative to the size of its two terms.
double bethe_t_quasi_periodicity(const ChainModel& model, const std::vector<cplx>& roots,
                                 const std::vector<cplx>& pts);

/// Same for the ratio formula of t_from_q_pair evaluated directly.
double pair_t_quasi_periodicity(const ChainModel& model, const QFunctionHom& q, int epsilon,
                                const std::vector<cplx>& pts);

struct HomEigenstates {
  std::optional<Eigenstates> plus;
  std::optional<Eigenstates> minus;
};

/// States from Q^{(+1)} and Q^{(-1)}; a choice whose state vanishes is left
/// empty. Throws BothChoicesZero.
HomEigenstates eigenstates_from_q_hom(const ChainModel& model, const SOVBasis& basis,
                                      const QFunctionHom& q, double zero_tol = 1e-10);

}  // namespace sovxxz
