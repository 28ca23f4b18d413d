#include "sovxxz/tq_inhom.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "sovxxz/errors.hpp"

namespace sovxxz {

namespace {

struct Node {
  int site;
  int h;
  cplx value;
};

// xi_n^{(h)} for h <= 2s_n - 1, site-major.
std::vector<Node> shifted_nodes(const ChainModel& model) {
  std::vector<Node> out;
  for (int n = 0; n < model.n_sites(); ++n) {
    for (int h = 0; h < model.two_s(n); ++h) out.push_back({n, h, model.xi_shifted(n, h)});
  }
  return out;
}

cplx sum_upper_shifts(const ChainModel& model) {
  cplx s = 0.0;
  for (int n = 0; n < model.n_sites(); ++n) {
    for (int h = 1; h <= model.two_s(n); ++h) s += model.xi_shifted(n, h);
  }
  return s;
}

std::vector<cplx> all_shifts(const ChainModel& model) {
  std::vector<cplx> out;
  for (int n = 0; n < model.n_sites(); ++n) {
    for (int h = 0; h <= model.two_s(n); ++h) out.push_back(model.xi_shifted(n, h));
  }
  return out;
}

struct TqTerms {
  cplx minus;  // -e^{l-alpha} a(l) Q(l-eta)
  cplx plus;   // e^{alpha-l-eta} d(l) Q(l+eta)
  cplx f;
};

TqTerms tq_terms(const ChainModel& model, const QFunctionInhom& q, cplx l) {
  const cplx eta = model.eta();
  return {-std::exp(l - q.alpha) * model.a_of(l) * q(l - eta),
          std::exp(q.alpha - l - eta) * model.d_of(l) * q(l + eta),
          f_inhom(model, q.alpha + q.lambda_bar, l)};
}

double hadamard_ratio(const CMatrix& m) {
  double rows = 1.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows *= m.row(i).norm();
  if (rows == 0.0) return 0.0;
  return std::abs(m.determinant()) / rows;
}

}  // namespace

cplx QFunctionInhom::operator()(cplx lambda) const {
  cplx p = 1.0;
  for (const cplx& r : roots) p *= std::sinh(lambda - r);
  return p;
}

QFunctionInhom QFunctionInhom::from_roots(std::vector<cplx> r, cplx alpha) {
  QFunctionInhom q;
  q.roots = std::move(r);
  q.lambda_bar = 0.0;
  for (const cplx& x : q.roots) q.lambda_bar += x;
  q.poly = TrigPoly::sinh_product(q.roots);
  q.alpha = alpha;
  return q;
}

cplx f_inhom(const ChainModel& model, cplx x, cplx lambda) {
  const cplx eta = model.eta();
  const double ns1 = model.n_s() + 1.0;
  cplx p = 2.0 * std::exp(-ns1 * eta / 2.0) *
           std::sinh(lambda - x + sum_upper_shifts(model) + ns1 * eta / 2.0);
  for (const cplx& z : all_shifts(model)) p *= std::sinh(lambda - z);
  return p;
}

std::vector<cplx> inhom_nodes(const ChainModel& model, cplx zeta0) {
  std::vector<cplx> out{zeta0};
  for (const Node& nd : shifted_nodes(model)) out.push_back(nd.value);
  return out;
}

cplx draw_zeta0(const ChainModel& model, Rng& rng, double margin, double period) {
  const std::vector<cplx> nodes = all_shifts(model);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const cplx z = random_point(rng, -1.5, 1.5, 0.0, period);
    bool ok = true;
    for (const cplx& x : nodes) {
      if (distance_mod_period(z - x, period) < margin) {
        ok = false;
        break;
      }
    }
    if (ok) return z;
  }
  throw DegenerateNodes("no admissible zeta_0 found");
}

std::vector<CVector> x_coefficients(const ChainModel& model, const NullspaceVectors& nv) {
  std::vector<CVector> out;
  for (int n = 0; n < model.n_sites(); ++n) {
    CVector x = nv.q[n];
    cplx f = 1.0;
    for (int h = 0; h < x.size(); ++h) {
      x(h) /= f;
      f *= std::exp(model.xi_shifted(n, h));
    }
    out.push_back(std::move(x));
  }
  return out;
}

CMatrix m_matrix(const ChainModel& model, const NullspaceVectors& nv, cplx beta, cplx zeta) {
  const int n_sites = model.n_sites();
  const std::vector<Node> nodes = shifted_nodes(model);
  const std::vector<CVector> x = x_coefficients(model, nv);
  CMatrix m = CMatrix::Zero(n_sites, n_sites);
  for (int i = 0; i < n_sites; ++i) {
    const int top = model.two_s(i);
    const cplx target = model.xi_shifted(i, top);
    m(i, i) += std::pow(beta, top) * x[i](top);
    for (std::size_t a = 0; a < nodes.size(); ++a) {
      const Node& nd = nodes[a];
      cplx l = std::sinh(target - zeta) / std::sinh(nd.value - zeta);
      for (std::size_t b = 0; b < nodes.size(); ++b) {
        if (b == a) continue;
        l *= std::sinh(target - nodes[b].value) / std::sinh(nd.value - nodes[b].value);
      }
      m(i, nd.site) -= std::pow(beta, nd.h) * l * x[nd.site](nd.h);
    }
  }
  return m;
}

CVector m_rhs(const ChainModel& model, cplx zeta) {
  const std::vector<Node> nodes = shifted_nodes(model);
  CVector r(model.n_sites());
  for (int i = 0; i < model.n_sites(); ++i) {
    const cplx target = model.xi_shifted(i, model.two_s(i));
    cplx l = 1.0;
    for (const Node& nd : nodes) l *= std::sinh(target - nd.value) / std::sinh(zeta - nd.value);
    r(i) = l;
  }
  return r;
}

cplx det_m_at_zero_closed_form(const ChainModel& model, cplx zeta) {
  const int n_sites = model.n_sites();
  auto top = [&](int n) { return model.xi_shifted(n, model.two_s(n)); };
  auto bottom = [&](int n) { return model.xi_shifted(n, 0); };
  cplx num = 1.0;
  cplx den = 1.0;
  for (int a = 0; a < n_sites; ++a) {
    for (int b = a + 1; b < n_sites; ++b) {
      num *= std::sinh(top(a) - top(b)) * std::sinh(bottom(b) - bottom(a));
    }
    for (int b = 0; b < n_sites; ++b) den *= std::sinh(top(a) - bottom(b));
  }
  const std::vector<cplx> zetas = inhom_nodes(model, zeta);
  for (int n = 0; n < n_sites; ++n) {
    for (const cplx& z : zetas) num *= std::sinh(top(n) - z);
    for (const cplx& z : zetas) {
      if (z == bottom(n)) continue;
      den *= std::sinh(bottom(n) - z);
    }
  }
  const double sign = (n_sites % 2 == 0) ? 1.0 : -1.0;
  return sign * num / den;
}

QFunctionInhom solve_q_inhom(const ChainModel& model, const EigenvalueFunction& t, cplx alpha,
                             cplx zeta0, const InhomOptions& opts) {
  const NullspaceVectors nv = nullspace_vectors(model, t);
  const cplx beta = std::exp(alpha);
  const CMatrix m = m_matrix(model, nv, beta, zeta0);
  const double ratio = hadamard_ratio(m);
  if (!(ratio > opts.det_tol)) {
    throw ExceptionalAlpha("det M(e^alpha, zeta_0) vanishes (relative " + std::to_string(ratio) +
                           ")");
  }
  const CVector qj = m.fullPivLu().solve(m_rhs(model, zeta0));

  const std::vector<CVector> x = x_coefficients(model, nv);
  std::vector<cplx> nodes{zeta0};
  std::vector<cplx> values{1.0};
  for (const Node& nd : shifted_nodes(model)) {
    nodes.push_back(nd.value);
    values.push_back(std::pow(beta, nd.h) * x[nd.site](nd.h) * qj(nd.site));
  }
  const TrigPoly p = TrigPoly::from_values(nodes, values, 0);
  const RootForm rf = roots(p, opts.trig);

  QFunctionInhom q = QFunctionInhom::from_roots(rf.roots, alpha);
  q.zeta0 = zeta0;

  double scale = 0.0;
  for (const cplx& v : values) scale = std::max(scale, std::abs(v / rf.normalization));
  for (int n = 0; n < model.n_sites(); ++n) {
    if (std::abs(q(model.xi_shifted(n, 0))) < opts.admissible_tol * scale) {
      throw NonAdmissible("Q vanishes at xi^{(0)} of site " + std::to_string(n + 1));
    }
  }
  return q;
}

InhomRetryResult solve_q_inhom_retry(const ChainModel& model, const EigenvalueFunction& t,
                                     Rng& rng, int max_retries, const InhomOptions& opts) {
  cplx alpha = model.alpha();
  std::uniform_real_distribution<double> modulus(std::log(0.5), std::log(2.0));
  std::uniform_real_distribution<double> phase(-kPi, kPi);
  for (int attempt = 0;; ++attempt) {
    try {
      const cplx zeta0 = draw_zeta0(model, rng);
      return {solve_q_inhom(model, t, alpha, zeta0, opts), attempt};
    } catch (const ExceptionalAlpha&) {
      if (attempt >= max_retries) throw;
    } catch (const NonAdmissible&) {
      if (attempt >= max_retries) throw;
    }
    alpha = cplx(modulus(rng), phase(rng));
  }
}

double eq_inh_residual(const ChainModel& model, const EigenvalueFunction& t,
                       const QFunctionInhom& q, const std::vector<cplx>& grid) {
  double worst = 0.0;
  for (const cplx& l : grid) {
    const cplx lhs = t(l) * q(l);
    const TqTerms tm = tq_terms(model, q, l);
    const double scale =
        std::max({std::abs(lhs), std::abs(tm.minus), std::abs(tm.plus), std::abs(tm.f)});
    if (scale > 0.0) worst = std::max(worst, std::abs(lhs - tm.minus - tm.plus - tm.f) / scale);
  }
  return worst;
}

std::vector<double> bethe_residuals_inhom(const ChainModel& model, const QFunctionInhom& q) {
  std::vector<double> out;
  for (const cplx& r : q.roots) {
    const TqTerms tm = tq_terms(model, q, r);
    const double scale = std::max({std::abs(tm.minus), std::abs(tm.plus), std::abs(tm.f)});
    out.push_back(scale > 0.0 ? std::abs(tm.minus + tm.plus + tm.f) / scale : 0.0);
  }
  return out;
}

InhomTReport t_from_q_inhom(const ChainModel& model, const QFunctionInhom& q, double pole_tol,
                            bool generic_fallback) {
  const int n_sites = model.n_sites();
  auto near_root = [&](cplx l) {
    for (const cplx& r : q.roots) {
      if (distance_mod_period(r - l, kPi) < pole_tol) return true;
    }
    return false;
  };
  auto value = [&](cplx l) {
    const TqTerms tm = tq_terms(model, q, l);
    return (tm.minus + tm.plus + tm.f) / q(l);
  };

  std::vector<cplx> vals;
  bool pole = false;
  for (int n = 0; n < n_sites && !pole; ++n) {
    if (near_root(model.xi(n))) {
      if (!generic_fallback) {
        throw PoleAtXi("Bethe root coincides with xi of site " + std::to_string(n + 1));
      }
      pole = true;
    } else {
      vals.push_back(value(model.xi(n)));
    }
  }
  if (pole) {
    // Fit t_at_xi from values at generic points away from the roots.
    std::vector<cplx> pts;
    for (const cplx& l : residual_grid(4 * n_sites + 16)) {
      bool ok = true;
      for (const cplx& r : q.roots) ok = ok && distance_mod_period(r - l, kPi) > 5e-2;
      if (ok) pts.push_back(l);
      if (static_cast<int>(pts.size()) == 2 * n_sites) break;
    }
    std::vector<cplx> pv;
    for (const cplx& l : pts) pv.push_back(value(l));
    return {fit_eigenvalue_function(model, pts, pv), bethe_residuals_inhom(model, q)};
  }
  return {EigenvalueFunction(model, std::move(vals)), bethe_residuals_inhom(model, q)};
}

cplx gaussian_prefactor(cplx lambda, cplx alpha, cplx eta) {
  return std::exp(-lambda * (lambda + eta - 2.0 * alpha) / (2.0 * eta));
}

std::vector<std::vector<cplx>> q_coordinates_inhom(const ChainModel& model,
                                                   const QFunctionInhom& q) {
  std::vector<std::vector<cplx>> out(static_cast<std::size_t>(model.n_sites()));
  for (int n = 0; n < model.n_sites(); ++n) {
    for (int h = 0; h <= model.two_s(n); ++h) {
      const cplx l = model.xi_shifted(n, h);
      out[n].push_back(gaussian_prefactor(l, q.alpha, model.eta()) * q(l));
    }
  }
  return out;
}

Eigenstates eigenstates_from_q_inhom(const ChainModel& model, const SOVBasis& basis,
                                     const QFunctionInhom& q, double zero_tol) {
  const auto c = q_coordinates_inhom(model, q);
  const cplx kappa = model.kappa();
  Eigenstates st;
  st.left = assemble_left(model, basis, [&](int n, int h) { return std::pow(kappa, h) * c[n][h]; });
  st.right = assemble_right(model, basis, [&](int n, int h) {
    return std::pow(-kappa, -h) * ad_ratio_product(model, n, h) * c[n][h];
  });
  if (!(st.left.norm() > zero_tol) || !(st.right.norm() > zero_tol)) {
    throw ZeroState("eigenstate assembled from Q vanishes");
  }
  return st;
}

double homogeneous_map_conditioning(const ChainModel& model, const EigenvalueFunction& t,
                                    cplx alpha) {
  const int ns = model.n_s();
  const cplx eta = model.eta();
  const std::vector<cplx> pts = residual_grid(2 * (ns + model.n_sites()) + 8);
  CMatrix a(static_cast<Eigen::Index>(pts.size()), ns + 1);
  for (int j = 0; j <= ns; ++j) {
    const double k = 2.0 * j - ns;
    for (std::size_t r = 0; r < pts.size(); ++r) {
      const cplx l = pts[r];
      auto e = [&](cplx z) { return std::exp(k * z); };
      a(static_cast<Eigen::Index>(r), j) = -std::exp(l - alpha) * model.a_of(l) * e(l - eta) +
                                           std::exp(alpha - l - eta) * model.d_of(l) * e(l + eta) -
                                           t(l) * e(l);
    }
    a.col(j).normalize();
  }
  const Eigen::JacobiSVD<CMatrix> svd(a);
  const auto& s = svd.singularValues();
  return s(s.size() - 1) / s(0);
}

double z_degree_residual(const ChainModel& model, const QFunctionInhom& q) {
  const cplx eta = model.eta();
  std::vector<cplx> a_roots;
  std::vector<cplx> d_roots;
  for (int n = 0; n < model.n_sites(); ++n) {
    a_roots.push_back(model.xi(n) - model.spin(n) * eta);
    d_roots.push_back(model.xi(n) + model.spin(n) * eta);
  }
  const TrigPoly a = TrigPoly::sinh_product(a_roots);
  const TrigPoly d = TrigPoly::sinh_product(d_roots);

  const TrigPoly minus = TrigPoly::exponential(1) * a * q.poly.shifted(-eta) * (-std::exp(-q.alpha));
  const TrigPoly plus = TrigPoly::exponential(-1) * d * q.poly.shifted(eta) * std::exp(q.alpha - eta);

  const double ns1 = model.n_s() + 1.0;
  std::vector<cplx> f_roots = all_shifts(model);
  f_roots.push_back(q.alpha + q.lambda_bar - sum_upper_shifts(model) - ns1 * eta / 2.0);
  const TrigPoly f = TrigPoly::sinh_product(f_roots) * (2.0 * std::exp(-ns1 * eta / 2.0));

  const TrigPoly z = minus + plus + f;
  const double scale =
      std::max({minus.max_abs_coeff(), plus.max_abs_coeff(), f.max_abs_coeff()});
  const int top = model.n_s() + model.n_sites() + 1;
  const double lead = std::max(std::abs(z.coefficient_of_exponent(top)),
                               std::abs(z.coefficient_of_exponent(-top)));
  return scale > 0.0 ? lead / scale : 0.0;
}

}  // namespace sovxxz
