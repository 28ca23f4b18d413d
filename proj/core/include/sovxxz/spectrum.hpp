#pragma once

#include <utility>
#include <vector>

#include "sovxxz/chain_model.hpp"
#include "sovxxz/numeric.hpp"
#include "sovxxz/sov_basis.hpp"

namespace sovxxz {

/// Transfer-matrix eigenvalue stored through its values at the
/// inhomogeneities and evaluated by trigonometric interpolation.
class EigenvalueFunction {
 public:
  EigenvalueFunction() = default;
  EigenvalueFunction(std::vector<cplx> nodes, std::vector<cplx> t_at_xi);
  EigenvalueFunction(const ChainModel& model, std::vector<cplx> t_at_xi);

  const std::vector<cplx>& nodes() const { return nodes_; }
  const std::vector<cplx>& t_at_xi() const { return values_; }
  int size() const { return static_cast<int>(values_.size()); }

  cplx operator()(cplx lambda) const;

 private:
  std::vector<cplx> nodes_;
  std::vector<cplx> values_;
};

/// Least-squares fit of t_at_xi from values of t at arbitrary points.
EigenvalueFunction fit_eigenvalue_function(const ChainModel& model,
                                           const std::vector<cplx>& points,
                                           const std::vector<cplx>& values);

struct OracleOptions {
  /// Minimal relative eigenvalue gap of T(lambda*) accepted for a draw.
  double gap_tol = 1e-8;
  /// Largest overlap deficiency accepted when matching eigenvectors of two draws.
  double match_tol = 1e-6;
  /// Largest eigen-residual accepted at the verification points.
  double verify_tol = 1e-8;
  int verify_points = 3;
  int max_draws = 8;
};

struct OracleEntry {
  EigenvalueFunction t;
  /// Unit-norm right eigenvector.
  CVector right;
  /// Left eigenvector (row), scaled so that left * right = 1.
  Eigen::RowVectorXcd left;
  /// Largest eigen-residual at the verification points.
  double verify_residual = 0.0;
};

/// Diagonalizes the antiperiodic transfer matrix at generic points and
/// returns one entry per eigenvalue, sorted by t(xi_1) (real part, then
/// imaginary part). Throws DegenerateSpectrum when eigenvectors of two
/// independent draws cannot be matched.
std::vector<OracleEntry> brute_force_spectrum(const ChainModel& model, Rng& rng,
                                              const OracleOptions& opts = {});

/// Sorts eigenvalue functions (and anything attached) by t(xi_1).
bool eigenvalue_order(const EigenvalueFunction& a, const EigenvalueFunction& b);

/// Tridiagonal matrix with diagonal t(xi^{(h)}), superdiagonal a(xi^{(h)})
/// and subdiagonal -d(xi^{(h)}) at site n.
CMatrix d_matrix(const ChainModel& model, const EigenvalueFunction& t, int site);

/// max_n |det D_n| / prod(row norms of D_n)
double discrete_residual(const ChainModel& model, const EigenvalueFunction& t);

struct NullspaceVectors {
  /// Right null vectors, q_0 = 1.
  std::vector<CVector> q;
  /// Left null vectors obtained from q.
  std::vector<CVector> p;
  /// |last row of D_n . q| / (row norm * |q|), the equation the recursion skips.
  std::vector<double> consistency;
};

/// Builds q by the three-term recursion. Throws RecursionBlowup when an
/// a(xi^{(h)}) needed by the recursion vanishes.
NullspaceVectors nullspace_vectors(const ChainModel& model, const EigenvalueFunction& t,
                                   double blowup_tol = 1e-12);

/// max_n |p_n^T D_n| / (|p_n| |D_n|)
double left_null_residual(const ChainModel& model, const EigenvalueFunction& t,
                          const NullspaceVectors& nv);

/// Sums coefficient(site, h) products over the SOV basis:
///   sum_h prod_n coef(n, h_n) V_h <h|   (left)   or   ... |h>   (right)
template <typename Coef>
Eigen::RowVectorXcd assemble_left(const ChainModel& model, const SOVBasis& basis, Coef coef) {
  Eigen::RowVectorXcd out = Eigen::RowVectorXcd::Zero(model.hilbert_dim());
  for (std::size_t i = 0; i < basis.tuples.size(); ++i) {
    const HTuple& h = basis.tuples[i];
    cplx c = vandermonde(model, h);
    for (int n = 0; n < model.n_sites(); ++n) c *= coef(n, h[n]);
    out += c * basis.left.row(static_cast<Eigen::Index>(i));
  }
  return out;
}

template <typename Coef>
CVector assemble_right(const ChainModel& model, const SOVBasis& basis, Coef coef) {
  CVector out = CVector::Zero(model.hilbert_dim());
  for (std::size_t i = 0; i < basis.tuples.size(); ++i) {
    const HTuple& h = basis.tuples[i];
    cplx c = vandermonde(model, h);
    for (int n = 0; n < model.n_sites(); ++n) c *= coef(n, h[n]);
    out += c * basis.right.col(static_cast<Eigen::Index>(i));
  }
  return out;
}

/// prod_{l<h} a(xi_n^{(l)}) / d(xi_n^{(l+1)})
cplx ad_ratio_product(const ChainModel& model, int site, int h);

struct Eigenstates {
  Eigen::RowVectorXcd left;
  CVector right;
};

/// SOV eigenstates of the transfer matrix with the model's twist. Throws
/// ZeroState if either state vanishes.
Eigenstates build_eigenstates(const ChainModel& model, const SOVBasis& basis,
                              const NullspaceVectors& nv, double zero_tol = 1e-12);

/// max over lambdas of |T v - t v| / (|T|_F |v|)
double eigen_residual(const ChainModel& model, const CVector& v,
                      const EigenvalueFunction& t, const std::vector<cplx>& lambdas);
/// Same for a left eigenvector.
double eigen_residual(const ChainModel& model, const Eigen::RowVectorXcd& w,
                      const EigenvalueFunction& t, const std::vector<cplx>& lambdas);

/// Largest difference between two spectra after nearest matching, relative
/// to the largest |t(xi_n)| of either spectrum; infinity when sizes differ or
/// the matching is not one-to-one.
double spectrum_distance(const std::vector<EigenvalueFunction>& a,
                         const std::vector<EigenvalueFunction>& b);

/// Smallest distance between two distinct eigenvalue functions, on the same
/// scale as spectrum_distance.
double min_separation(const std::vector<EigenvalueFunction>& spectrum);

/// max_n |a(xi_n) - b(xi_n)| relative to the size of t and of the a, d
/// coefficients at site n (meaningful also for t = 0).
double eigenvalue_distance(const ChainModel& model, const EigenvalueFunction& a,
                           const EigenvalueFunction& b);

struct NewtonResult {
  EigenvalueFunction t;
  double residual = 0.0;
  int iterations = 0;
};

/// Newton refinement of the discrete system from a seed.
NewtonResult refine_eigenvalue(const ChainModel& model, const EigenvalueFunction& seed,
                               int max_iter = 20, double tol = 1e-14);

}  // namespace sovxxz
