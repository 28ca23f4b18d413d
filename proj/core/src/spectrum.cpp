#include "sovxxz/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/QR>

#include "sovxxz/errors.hpp"
#include "sovxxz/qalgebra.hpp"

namespace sovxxz {

EigenvalueFunction::EigenvalueFunction(std::vector<cplx> nodes, std::vector<cplx> t_at_xi)
    : nodes_(std::move(nodes)), values_(std::move(t_at_xi)) {
  if (nodes_.size() != values_.size()) {
    throw InvalidModel("eigenvalue function needs one value per inhomogeneity");
  }
}

EigenvalueFunction::EigenvalueFunction(const ChainModel& model, std::vector<cplx> t_at_xi)
    : EigenvalueFunction(model.xi(), std::move(t_at_xi)) {}

cplx EigenvalueFunction::operator()(cplx lambda) const {
  cplx sum = 0.0;
  const std::size_t n = nodes_.size();
  for (std::size_t k = 0; k < n; ++k) {
    cplx w = 1.0;
    for (std::size_t l = 0; l < n; ++l) {
      if (l != k) w *= std::sinh(lambda - nodes_[l]) / std::sinh(nodes_[k] - nodes_[l]);
    }
    sum += w * values_[k];
  }
  return sum;
}

bool eigenvalue_order(const EigenvalueFunction& a, const EigenvalueFunction& b) {
  const cplx x = a.t_at_xi().front();
  const cplx y = b.t_at_xi().front();
  if (x.real() != y.real()) return x.real() < y.real();
  return x.imag() < y.imag();
}

namespace {

struct Diag {
  CMatrix vecs;
  CMatrix inv;
  double gap = 0.0;
};

Diag diagonalize(const CMatrix& t) {
  Eigen::ComplexEigenSolver<CMatrix> es(t);
  if (es.info() != Eigen::Success) throw DegenerateSpectrum("eigensolver failed");
  Diag d;
  d.vecs = es.eigenvectors();
  for (Eigen::Index k = 0; k < d.vecs.cols(); ++k) d.vecs.col(k).normalize();
  d.inv = d.vecs.inverse();
  const auto& ev = es.eigenvalues();
  double scale = 0.0;
  for (Eigen::Index k = 0; k < ev.size(); ++k) scale = std::max(scale, std::abs(ev(k)));
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    for (Eigen::Index j = i + 1; j < ev.size(); ++j) gap = std::min(gap, std::abs(ev(i) - ev(j)));
  }
  d.gap = scale > 0.0 ? gap / scale : 0.0;
  return d;
}

}  // namespace

std::vector<OracleEntry> brute_force_spectrum(const ChainModel& model, Rng& rng,
                                              const OracleOptions& opts) {
  const int dim = model.hilbert_dim();
  for (int draw = 0; draw < opts.max_draws; ++draw) {
    const cplx l1 = random_point(rng, -1.0, 1.0, 0.2, 1.4);
    const cplx l2 = random_point(rng, -1.0, 1.0, 0.2, 1.4);
    const Diag d1 = diagonalize(transfer_antiperiodic(model, l1));
    if (d1.gap < opts.gap_tol) continue;
    const Diag d2 = diagonalize(transfer_antiperiodic(model, l2));
    if (d2.gap < opts.gap_tol) continue;

    // Each eigenvector of the first draw must reappear in the second.
    std::vector<int> match(dim, -1);
    std::vector<bool> used(dim, false);
    bool ok = true;
    for (int i = 0; i < dim && ok; ++i) {
      double best = -1.0;
      int arg = -1;
      for (int j = 0; j < dim; ++j) {
        const double ov = std::abs(d1.vecs.col(i).dot(d2.vecs.col(j)));
        if (ov > best) {
          best = ov;
          arg = j;
        }
      }
      if (used[arg] || overlap_deficiency(d1.vecs.col(i), d2.vecs.col(arg)) > opts.match_tol) {
        ok = false;
      } else {
        used[arg] = true;
        match[i] = arg;
      }
    }
    if (!ok) continue;

    std::vector<CMatrix> t_xi;
    for (int n = 0; n < model.n_sites(); ++n) t_xi.push_back(transfer_antiperiodic(model, model.xi(n)));

    std::vector<OracleEntry> out;
    for (int i = 0; i < dim; ++i) {
      OracleEntry e;
      e.right = d1.vecs.col(i);
      e.left = d1.inv.row(i);
      e.left /= (e.left * e.right)(0, 0);
      std::vector<cplx> vals;
      for (int n = 0; n < model.n_sites(); ++n) vals.push_back((e.left * t_xi[n] * e.right)(0, 0));
      e.t = EigenvalueFunction(model, std::move(vals));
      std::vector<cplx> pts;
      for (int k = 0; k < opts.verify_points; ++k) pts.push_back(random_point(rng, -1.5, 1.5, -1.5, 1.5));
      e.verify_residual = std::max(eigen_residual(model, e.right, e.t, pts),
                                   eigen_residual(model, e.left, e.t, pts));
      out.push_back(std::move(e));
    }
    const bool verified = std::all_of(out.begin(), out.end(), [&](const OracleEntry& e) {
      return e.verify_residual <= opts.verify_tol;
    });
    if (!verified) continue;
    std::sort(out.begin(), out.end(),
              [](const OracleEntry& a, const OracleEntry& b) { return eigenvalue_order(a.t, b.t); });
    return out;
  }
  throw DegenerateSpectrum("eigenvectors of independent draws could not be matched");
}

CMatrix d_matrix(const ChainModel& model, const EigenvalueFunction& t, int site) {
  const int m = model.two_s(site) + 1;
  CMatrix d = CMatrix::Zero(m, m);
  for (int h = 0; h < m; ++h) {
    const cplx x = model.xi_shifted(site, h);
    d(h, h) = t(x);
    if (h + 1 < m) d(h, h + 1) = model.a_of(x);
    if (h >= 1) d(h, h - 1) = -model.d_of(x);
  }
  return d;
}

namespace {

double relative_det(const CMatrix& d) {
  double scale = 1.0;
  for (Eigen::Index r = 0; r < d.rows(); ++r) scale *= d.row(r).norm();
  if (scale == 0.0) return 0.0;
  return std::abs(d.determinant()) / scale;
}

}  // namespace

double discrete_residual(const ChainModel& model, const EigenvalueFunction& t) {
  double worst = 0.0;
  for (int n = 0; n < model.n_sites(); ++n) worst = std::max(worst, relative_det(d_matrix(model, t, n)));
  return worst;
}

cplx ad_ratio_product(const ChainModel& model, int site, int h) {
  cplx p = 1.0;
  for (int l = 0; l < h; ++l) {
    p *= model.a_of(model.xi_shifted(site, l)) / model.d_of(model.xi_shifted(site, l + 1));
  }
  return p;
}

NullspaceVectors nullspace_vectors(const ChainModel& model, const EigenvalueFunction& t,
                                   double blowup_tol) {
  NullspaceVectors nv;
  for (int n = 0; n < model.n_sites(); ++n) {
    const int ts = model.two_s(n);
    CVector q = CVector::Zero(ts + 1);
    q(0) = 1.0;
    for (int h = 0; h < ts; ++h) {
      const cplx x = model.xi_shifted(n, h);
      const cplx a = model.a_of(x);
      if (std::abs(a) < blowup_tol) {
        throw RecursionBlowup("a(xi^{(h)}) vanishes at site " + std::to_string(n + 1));
      }
      const cplx prev = h >= 1 ? q(h - 1) : cplx(0.0);
      q(h + 1) = (-t(x) * q(h) + model.d_of(x) * prev) / a;
    }
    const CMatrix d = d_matrix(model, t, n);
    const double denom = d.row(ts).norm() * q.norm();
    nv.consistency.push_back(denom == 0.0 ? 0.0 : std::abs((d.row(ts) * q)(0, 0)) / denom);
    CVector p(ts + 1);
    for (int h = 0; h <= ts; ++h) p(h) = (h % 2 == 0 ? 1.0 : -1.0) * ad_ratio_product(model, n, h) * q(h);
    nv.q.push_back(std::move(q));
    nv.p.push_back(std::move(p));
  }
  return nv;
}

double left_null_residual(const ChainModel& model, const EigenvalueFunction& t,
                          const NullspaceVectors& nv) {
  double worst = 0.0;
  for (int n = 0; n < model.n_sites(); ++n) {
    const CMatrix d = d_matrix(model, t, n);
    const double denom = nv.p[n].norm() * d.norm();
    if (denom > 0.0) worst = std::max(worst, (nv.p[n].transpose() * d).norm() / denom);
  }
  return worst;
}

Eigenstates build_eigenstates(const ChainModel& model, const SOVBasis& basis,
                              const NullspaceVectors& nv, double zero_tol) {
  const cplx kappa = model.kappa();
  Eigenstates st;
  st.left = assemble_left(model, basis, [&](int n, int h) { return std::pow(kappa, h) * nv.q[n](h); });
  st.right = assemble_right(model, basis, [&](int n, int h) { return std::pow(kappa, -h) * nv.p[n](h); });
  if (!(st.left.norm() > zero_tol) || !(st.right.norm() > zero_tol)) {
    throw ZeroState("assembled eigenstate vanishes");
  }
  return st;
}

double eigen_residual(const ChainModel& model, const CVector& v, const EigenvalueFunction& t,
                      const std::vector<cplx>& lambdas) {
  double worst = 0.0;
  for (const cplx& l : lambdas) {
    const CMatrix tm = transfer_antiperiodic(model, l);
    const double denom = tm.norm() * v.norm();
    if (denom > 0.0) worst = std::max(worst, (tm * v - t(l) * v).norm() / denom);
  }
  return worst;
}

double eigen_residual(const ChainModel& model, const Eigen::RowVectorXcd& w,
                      const EigenvalueFunction& t, const std::vector<cplx>& lambdas) {
  double worst = 0.0;
  for (const cplx& l : lambdas) {
    const CMatrix tm = transfer_antiperiodic(model, l);
    const double denom = tm.norm() * w.norm();
    if (denom > 0.0) worst = std::max(worst, (w * tm - t(l) * w).norm() / denom);
  }
  return worst;
}

namespace {

double abs_distance(const EigenvalueFunction& a, const EigenvalueFunction& b) {
  double diff = 0.0;
  for (int n = 0; n < a.size(); ++n) diff = std::max(diff, std::abs(a.t_at_xi()[n] - b.t_at_xi()[n]));
  return diff;
}

double spectral_scale(const std::vector<EigenvalueFunction>& a,
                      const std::vector<EigenvalueFunction>& b) {
  double scale = 0.0;
  for (const auto* s : {&a, &b}) {
    for (const auto& t : *s) {
      for (const cplx& v : t.t_at_xi()) scale = std::max(scale, std::abs(v));
    }
  }
  return scale == 0.0 ? 1.0 : scale;
}

}  // namespace

double spectrum_distance(const std::vector<EigenvalueFunction>& a,
                         const std::vector<EigenvalueFunction>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  const double scale = spectral_scale(a, b);
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const auto& x : a) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double d = abs_distance(x, b[j]) / scale;
      if (d < best) {
        best = d;
        arg = j;
      }
    }
    if (used[arg]) return std::numeric_limits<double>::infinity();
    used[arg] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

double min_separation(const std::vector<EigenvalueFunction>& spectrum) {
  const double scale = spectral_scale(spectrum, {});
  double sep = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    for (std::size_t j = i + 1; j < spectrum.size(); ++j) {
      sep = std::min(sep, abs_distance(spectrum[i], spectrum[j]) / scale);
    }
  }
  return sep;
}

double eigenvalue_distance(const ChainModel& model, const EigenvalueFunction& a,
                           const EigenvalueFunction& b) {
  double worst = 0.0;
  for (int n = 0; n < model.n_sites(); ++n) {
    double scale = std::max(std::abs(a.t_at_xi()[n]), std::abs(b.t_at_xi()[n]));
    for (int h = 0; h <= model.two_s(n); ++h) {
      const cplx x = model.xi_shifted(n, h);
      scale = std::max({scale, std::abs(model.a_of(x)), std::abs(model.d_of(x))});
    }
    worst = std::max(worst, std::abs(a.t_at_xi()[n] - b.t_at_xi()[n]) / scale);
  }
  return worst;
}

NewtonResult refine_eigenvalue(const ChainModel& model, const EigenvalueFunction& seed,
                               int max_iter, double tol) {
  const int n = model.n_sites();
  std::vector<double> scales(n, 1.0);
  for (int k = 0; k < n; ++k) {
    const CMatrix d = d_matrix(model, seed, k);
    double s = 1.0;
    for (Eigen::Index r = 0; r < d.rows(); ++r) s *= d.row(r).norm();
    scales[k] = s == 0.0 ? 1.0 : s;
  }
  auto system = [&](const std::vector<cplx>& vals) {
    const EigenvalueFunction t(model, vals);
    CVector f(n);
    for (int k = 0; k < n; ++k) f(k) = d_matrix(model, t, k).determinant() / scales[k];
    return f;
  };

  NewtonResult res;
  std::vector<cplx> x = seed.t_at_xi();
  CVector f = system(x);
  for (int it = 0; it < max_iter && f.norm() > tol; ++it) {
    CMatrix jac(n, n);
    for (int k = 0; k < n; ++k) {
      const double h = 1e-6 * (1.0 + std::abs(x[k]));
      std::vector<cplx> xp = x;
      std::vector<cplx> xm = x;
      xp[k] += h;
      xm[k] -= h;
      jac.col(k) = (system(xp) - system(xm)) / (2.0 * h);
    }
    const CVector step = jac.fullPivLu().solve(-f);
    std::vector<cplx> xn = x;
    for (int k = 0; k < n; ++k) xn[k] += step(k);
    const CVector fn = system(xn);
    if (!(fn.norm() < f.norm())) break;
    x = std::move(xn);
    f = fn;
    res.iterations = it + 1;
  }
  res.t = EigenvalueFunction(model, x);
  res.residual = discrete_residual(model, res.t);
  return res;
}

EigenvalueFunction fit_eigenvalue_function(const ChainModel& model,
                                           const std::vector<cplx>& points,
                                           const std::vector<cplx>& values) {
  const int n_sites = model.n_sites();
  const auto rows = static_cast<Eigen::Index>(points.size());
  CMatrix basis(rows, n_sites);
  for (int n = 0; n < n_sites; ++n) {
    std::vector<cplx> unit(static_cast<std::size_t>(n_sites), 0.0);
    unit[n] = 1.0;
    const EigenvalueFunction e(model, unit);
    for (Eigen::Index k = 0; k < rows; ++k) basis(k, n) = e(points[k]);
  }
  const CVector rhs = Eigen::Map<const CVector>(values.data(), rows);
  const CVector sol = basis.colPivHouseholderQr().solve(rhs);
  return EigenvalueFunction(model, std::vector<cplx>(sol.data(), sol.data() + sol.size()));
}

}  // namespace sovxxz
