#include "sovxxz/sov_basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include "sovxxz/errors.hpp"
#include "sovxxz/qalgebra.hpp"

namespace sovxxz {

std::vector<HTuple> enumerate_tuples(const ChainModel& model) {
  const int n = model.n_sites();
  std::vector<HTuple> out;
  out.reserve(static_cast<std::size_t>(model.hilbert_dim()));
  HTuple h(static_cast<std::size_t>(n), 0);
  while (true) {
    out.push_back(h);
    int pos = n - 1;
    while (pos >= 0 && h[pos] == model.two_s(pos)) {
      h[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++h[pos];
  }
  return out;
}

void check_tuple(const ChainModel& model, const HTuple& h) {
  if (static_cast<int>(h.size()) != model.n_sites()) {
    throw IndexOutOfRange("tuple length differs from the number of sites");
  }
  for (int n = 0; n < model.n_sites(); ++n) {
    if (h[n] < 0 || h[n] > model.two_s(n)) throw IndexOutOfRange("tuple entry out of range");
  }
}

int tuple_index(const ChainModel& model, const HTuple& h) {
  check_tuple(model, h);
  int idx = 0;
  for (int n = 0; n < model.n_sites(); ++n) idx = idx * (model.two_s(n) + 1) + h[n];
  return idx;
}

cplx d_eigenvalue(const ChainModel& model, const HTuple& h, cplx lambda) {
  cplx p = 1.0;
  for (int n = 0; n < model.n_sites(); ++n) p *= std::sinh(lambda - model.xi_shifted(n, h[n]));
  return p;
}

cplx vandermonde(const ChainModel& model, const HTuple& h) {
  cplx p = 1.0;
  for (int j = 0; j < model.n_sites(); ++j) {
    for (int i = 0; i < j; ++i) {
      p *= std::sinh(model.xi_shifted(j, h[j]) - model.xi_shifted(i, h[i]));
    }
  }
  return p;
}

namespace {

cplx reference_scale(const ChainModel& model, ReferenceScale scale) {
  cplx p = 1.0;
  for (int j = 0; j < model.n_sites(); ++j) {
    for (int i = 0; i < j; ++i) {
      const cplx diff = scale == ReferenceScale::Shifted
                            ? model.xi_shifted(j, 0) - model.xi_shifted(i, 0)
                            : model.xi(j) - model.xi(i);
      p *= std::sqrt(std::sinh(diff));
    }
  }
  return p;
}

// Interpolation weight prod_{b != a} sinh(lambda - x_b) / sinh(x_a - x_b)
// with x_b = xi_b^{(h_b)}.
cplx lagrange_weight(const ChainModel& model, const HTuple& h, int a, cplx lambda) {
  cplx w = 1.0;
  const cplx xa = model.xi_shifted(a, h[a]);
  for (int b = 0; b < model.n_sites(); ++b) {
    if (b == a) continue;
    const cplx xb = model.xi_shifted(b, h[b]);
    w *= std::sinh(lambda - xb) / std::sinh(xa - xb);
  }
  return w;
}

void check_conditioning(const CMatrix& vecs, bool columns, double tol) {
  const Eigen::Index count = columns ? vecs.cols() : vecs.rows();
  double biggest = 0.0;
  for (Eigen::Index k = 0; k < count; ++k) {
    biggest = std::max(biggest, columns ? vecs.col(k).norm() : vecs.row(k).norm());
  }
  for (Eigen::Index k = 0; k < count; ++k) {
    const double nk = columns ? vecs.col(k).norm() : vecs.row(k).norm();
    if (!(nk > tol * biggest)) {
      throw ConditioningFailure("SOV state " + std::to_string(k) +
                                " is numerically zero; inhomogeneities too close");
    }
  }
}

double rel(const CMatrix& x, const CMatrix& y) { return relative_difference(x, y); }

}  // namespace

SOVBasis build_right_basis(const ChainModel& model, ReferenceScale scale,
                           double conditioning_tol) {
  SOVBasis basis;
  basis.tuples = enumerate_tuples(model);
  basis.normalization = reference_scale(model, scale);
  const int dim = model.hilbert_dim();

  std::map<std::pair<int, int>, CMatrix> step;
  for (int n = 0; n < model.n_sites(); ++n) {
    for (int k = 0; k < model.two_s(n); ++k) {
      const cplx x = model.xi_shifted(n, k);
      step[{n, k}] = -monodromy(model, x).b / model.a_of(x);
    }
  }

  basis.right = CMatrix::Zero(dim, dim);
  for (int idx = 0; idx < dim; ++idx) {
    const HTuple& h = basis.tuples[idx];
    CVector v = CVector::Zero(dim);
    v(0) = 1.0 / basis.normalization;
    for (int n = 0; n < model.n_sites(); ++n) {
      for (int k = 0; k < h[n]; ++k) v = step[{n, k}] * v;
    }
    basis.right.col(idx) = v;
  }
  check_conditioning(basis.right, true, conditioning_tol);
  return basis;
}

SOVBasis build_left_basis(const ChainModel& model, ReferenceScale scale,
                          double conditioning_tol) {
  SOVBasis basis;
  basis.tuples = enumerate_tuples(model);
  basis.normalization = reference_scale(model, scale);
  const int dim = model.hilbert_dim();

  std::map<std::pair<int, int>, CMatrix> step;
  for (int n = 0; n < model.n_sites(); ++n) {
    for (int k = 0; k < model.two_s(n); ++k) {
      step[{n, k}] = monodromy(model, model.xi_shifted(n, k)).c /
                     model.d_of(model.xi_shifted(n, k + 1));
    }
  }

  basis.left = CMatrix::Zero(dim, dim);
  for (int idx = 0; idx < dim; ++idx) {
    const HTuple& h = basis.tuples[idx];
    Eigen::RowVectorXcd w = Eigen::RowVectorXcd::Zero(dim);
    w(0) = 1.0 / basis.normalization;
    for (int n = 0; n < model.n_sites(); ++n) {
      for (int k = 0; k < h[n]; ++k) w = w * step[{n, k}];
    }
    basis.left.row(idx) = w;
  }
  check_conditioning(basis.left, false, conditioning_tol);
  return basis;
}

SOVBasis build_sov_basis(const ChainModel& model, ReferenceScale scale,
                         double conditioning_tol) {
  SOVBasis basis = build_right_basis(model, scale, conditioning_tol);
  basis.left = build_left_basis(model, scale, conditioning_tol).left;
  return basis;
}

cplx overlap(const ChainModel& model, const SOVBasis& basis, const HTuple& h,
             const HTuple& k) {
  return (basis.left.row(tuple_index(model, h)) * basis.right.col(tuple_index(model, k)))(0, 0);
}

cplx overlap_expected(const ChainModel& model, const HTuple& h, const HTuple& k) {
  if (h != k) return 0.0;
  return 1.0 / vandermonde(model, h);
}

double overlap_residual(const ChainModel& model, const SOVBasis& basis) {
  const CMatrix g = basis.left * basis.right;
  double scale = 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < basis.tuples.size(); ++i) {
    scale = std::max(scale, std::abs(overlap_expected(model, basis.tuples[i], basis.tuples[i])));
  }
  for (std::size_t i = 0; i < basis.tuples.size(); ++i) {
    for (std::size_t j = 0; j < basis.tuples.size(); ++j) {
      const cplx e = overlap_expected(model, basis.tuples[i], basis.tuples[j]);
      worst = std::max(worst, std::abs(g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - e));
    }
  }
  return worst / scale;
}

double identity_resolution(const ChainModel& model, const SOVBasis& basis) {
  const int dim = model.hilbert_dim();
  CMatrix sum = CMatrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    sum += vandermonde(model, basis.tuples[i]) * basis.right.col(i) * basis.left.row(i);
  }
  return (sum - CMatrix::Identity(dim, dim)).norm() / std::sqrt(static_cast<double>(dim));
}

CMatrix d_action(const ChainModel& model, cplx lambda) {
  const auto tuples = enumerate_tuples(model);
  const int dim = model.hilbert_dim();
  CMatrix m = CMatrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) m(i, i) = d_eigenvalue(model, tuples[i], lambda);
  return m;
}

namespace {

// Fills an action matrix from the interpolation-sum formulas. `shift` is the
// tuple step (+1 or -1), `coef(h, a)` the site-a coefficient, `right`
// selects the column (right) or row (left) convention.
template <typename Coef>
CMatrix interpolation_action(const ChainModel& model, cplx lambda, int shift,
                             bool right, Coef coef) {
  const auto tuples = enumerate_tuples(model);
  const int dim = model.hilbert_dim();
  CMatrix m = CMatrix::Zero(dim, dim);
  for (int idx = 0; idx < dim; ++idx) {
    const HTuple& h = tuples[idx];
    for (int a = 0; a < model.n_sites(); ++a) {
      const int target = h[a] + shift;
      if (target < 0 || target > model.two_s(a)) continue;
      HTuple t = h;
      t[a] = target;
      const cplx c = lagrange_weight(model, h, a, lambda) * coef(h, a);
      const int j = tuple_index(model, t);
      if (right) {
        m(j, idx) += c;
      } else {
        m(idx, j) += c;
      }
    }
  }
  return m;
}

}  // namespace

CMatrix c_action_right(const ChainModel& model, cplx lambda) {
  return interpolation_action(model, lambda, -1, true, [&](const HTuple& h, int a) {
    return model.d_of(model.xi_shifted(a, h[a]));
  });
}

CMatrix b_action_right(const ChainModel& model, cplx lambda) {
  return interpolation_action(model, lambda, +1, true, [&](const HTuple& h, int a) {
    return -model.a_of(model.xi_shifted(a, h[a]));
  });
}

CMatrix c_action_left(const ChainModel& model, cplx lambda) {
  return interpolation_action(model, lambda, +1, false, [&](const HTuple& h, int a) {
    return model.d_of(model.xi_shifted(a, h[a] + 1));
  });
}

CMatrix b_action_left(const ChainModel& model, cplx lambda) {
  return interpolation_action(model, lambda, -1, false, [&](const HTuple& h, int a) {
    return -model.a_of(model.xi_shifted(a, h[a] - 1));
  });
}

namespace {

CMatrix a_from_qdet(const ChainModel& model, cplx lambda, const CMatrix& b,
                    const CMatrix& c) {
  const cplx eta = model.eta();
  const int dim = model.hilbert_dim();
  const cplx qd = model.a_of(lambda) * model.d_of(lambda - eta);
  const CMatrix dinv = d_action(model, lambda - eta).diagonal().cwiseInverse().asDiagonal();
  return (qd * CMatrix::Identity(dim, dim) + b * c) * dinv;
}

}  // namespace

CMatrix a_action_right(const ChainModel& model, cplx lambda) {
  return a_from_qdet(model, lambda, b_action_right(model, lambda),
                     c_action_right(model, lambda - model.eta()));
}

CMatrix a_action_left(const ChainModel& model, cplx lambda) {
  return a_from_qdet(model, lambda, b_action_left(model, lambda),
                     c_action_left(model, lambda - model.eta()));
}

double ActionResiduals::max() const {
  return std::max({d_right, c_right, b_right, a_right, d_left, c_left, b_left, a_left});
}

ActionResiduals action_residuals(const ChainModel& model, const SOVBasis& basis,
                                 cplx lambda) {
  const Blocks m = monodromy(model, lambda);
  const CMatrix& r = basis.right;
  const CMatrix& l = basis.left;
  ActionResiduals out;
  if (r.size() > 0) {
    out.d_right = rel(m.d * r, r * d_action(model, lambda));
    out.c_right = rel(m.c * r, r * c_action_right(model, lambda));
    out.b_right = rel(m.b * r, r * b_action_right(model, lambda));
    out.a_right = rel(m.a * r, r * a_action_right(model, lambda));
  }
  if (l.size() > 0) {
    out.d_left = rel(l * m.d, d_action(model, lambda) * l);
    out.c_left = rel(l * m.c, c_action_left(model, lambda) * l);
    out.b_left = rel(l * m.b, b_action_left(model, lambda) * l);
    out.a_left = rel(l * m.a, a_action_left(model, lambda) * l);
  }
  return out;
}

double b_commutation_residual(const ChainModel& model) {
  std::vector<CMatrix> bs;
  for (int n = 0; n < model.n_sites(); ++n) {
    for (int k = 0; k < model.two_s(n); ++k) bs.push_back(monodromy(model, model.xi_shifted(n, k)).b);
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < bs.size(); ++i) {
    for (std::size_t j = i + 1; j < bs.size(); ++j) {
      worst = std::max(worst, rel(bs[i] * bs[j], bs[j] * bs[i]));
    }
  }
  return worst;
}

double d_spectrum_gap(const ChainModel& model) {
  const auto tuples = enumerate_tuples(model);
  std::vector<std::vector<cplx>> zeros;
  for (const auto& h : tuples) {
    std::vector<cplx> z;
    for (int n = 0; n < model.n_sites(); ++n) z.push_back(model.xi_shifted(n, h[n]));
    zeros.push_back(std::move(z));
  }
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    for (std::size_t j = i + 1; j < zeros.size(); ++j) {
      gap = std::min(gap, multiset_distance(zeros[i], zeros[j], kPi));
    }
  }
  return gap;
}

}  // namespace sovxxz
