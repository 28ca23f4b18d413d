#include "sovxxz/tq_hom.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "sovxxz/errors.hpp"
#include "sovxxz/tq_inhom.hpp"

namespace sovxxz {

namespace {

const cplx kIPi(0.0, kPi);

struct Node {
  int site;
  int h;
  cplx value;
};

std::vector<Node> shifted_nodes(const ChainModel& model) {
  std::vector<Node> out;
  for (int n = 0; n < model.n_sites(); ++n) {
    for (int h = 0; h < model.two_s(n); ++h) out.push_back({n, h, model.xi_shifted(n, h)});
  }
  return out;
}

cplx half_sinh(cplx z) { return std::sinh(0.5 * z); }

std::vector<cplx> generic_points(const std::vector<cplx>& avoid, int count, double margin) {
  std::vector<cplx> pts;
  for (const cplx& l : residual_grid(4 * count + 24)) {
    bool ok = true;
    for (const cplx& a : avoid) ok = ok && distance_mod_period(l - a, kPi) > margin;
    if (ok) pts.push_back(l);
    if (static_cast<int>(pts.size()) == count) break;
  }
  return pts;
}

}  // namespace

cplx QFunctionHom::operator()(cplx lambda) const {
  cplx p = 1.0;
  for (const cplx& r : roots) p *= half_sinh(lambda - r);
  return p;
}

cplx QFunctionHom::shifted(int eps, cplx lambda) const {
  return (*this)(lambda + (eps == 1 ? cplx(0.0) : kIPi));
}

QFunctionHom QFunctionHom::from_roots(const ChainModel& model, std::vector<cplx> r) {
  QFunctionHom q;
  q.roots = std::move(r);
  q.poly = TrigPoly::sinh_product(q.roots, AngleScale::Half);
  const SumRule sr = sum_rule(model, q.roots);
  q.epsilon = sr.epsilon;
  q.m = sr.m;
  q.sum_rule_residual = sr.residual;
  return q;
}

SumRule sum_rule(const ChainModel& model, const std::vector<cplx>& roots) {
  cplx d = 0.0;
  for (const cplx& r : roots) d += r;
  for (const Node& nd : shifted_nodes(model)) d -= nd.value;
  d += 0.5 * model.n_s() * model.eta();
  const cplx k = d / kIPi;
  const long n = std::lround(k.real());
  SumRule sr;
  sr.residual = std::abs(d - kIPi * static_cast<double>(n));
  const bool odd = (n % 2) != 0;
  sr.epsilon = odd ? -1 : 1;
  sr.m = static_cast<int>((n - (odd ? 1 : 0)) / 2);
  return sr;
}

CMatrix n_bar_matrix(const ChainModel& model, const NullspaceVectors& nv, cplx zeta) {
  const int n_sites = model.n_sites();
  const std::vector<Node> nodes = shifted_nodes(model);
  CMatrix m = CMatrix::Zero(n_sites, n_sites + 1);
  for (int i = 0; i < n_sites; ++i) {
    const int top = model.two_s(i);
    const cplx target = model.xi_shifted(i, top);
    cplx l0 = 1.0;
    for (const Node& nd : nodes) l0 *= half_sinh(target - nd.value) / half_sinh(zeta - nd.value);
    m(i, 0) = -l0;
    m(i, i + 1) += nv.q[i](top);
    for (std::size_t a = 0; a < nodes.size(); ++a) {
      const Node& nd = nodes[a];
      cplx l = half_sinh(target - zeta) / half_sinh(nd.value - zeta);
      for (std::size_t b = 0; b < nodes.size(); ++b) {
        if (b == a) continue;
        l *= half_sinh(target - nodes[b].value) / half_sinh(nd.value - nodes[b].value);
      }
      m(i, nd.site + 1) -= l * nv.q[nd.site](nd.h);
    }
  }
  return m;
}

double n_bar_rank_ratio(const ChainModel& model, const EigenvalueFunction& t, cplx zeta0) {
  const CMatrix m = n_bar_matrix(model, nullspace_vectors(model, t), zeta0);
  const Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& s = svd.singularValues();
  return s(s.size() - 1) / s(0);
}

QFunctionHom solve_q_hom(const ChainModel& model, const EigenvalueFunction& t, cplx zeta0,
                         const HomOptions& opts) {
  const NullspaceVectors nv = nullspace_vectors(model, t);
  const CMatrix m = n_bar_matrix(model, nv, zeta0);
  const Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double ratio = s(s.size() - 1) / s(0);
  if (!(ratio > opts.rank_tol)) {
    throw RankDeficient("solve matrix has a nullspace of dimension >= 2 (sigma ratio " +
                        std::to_string(ratio) + ")");
  }
  const CVector v = svd.matrixV().col(model.n_sites());

  std::vector<cplx> nodes{zeta0};
  std::vector<cplx> values{v(0)};
  for (const Node& nd : shifted_nodes(model)) {
    nodes.push_back(nd.value);
    values.push_back(nv.q[nd.site](nd.h) * v(nd.site + 1));
  }
  const TrigPoly p = TrigPoly::from_values(nodes, values, 0, AngleScale::Half);
  const RootForm rf = roots(p, opts.trig);

  QFunctionHom q = QFunctionHom::from_roots(model, polish_roots_hom(model, rf.roots, opts.polish_steps));
  q.zeta0 = zeta0;

  double scale = 0.0;
  for (const cplx& x : values) scale = std::max(scale, std::abs(x / rf.normalization));
  for (int n = 0; n < model.n_sites(); ++n) {
    const cplx x0 = model.xi_shifted(n, 0);
    const double tol = opts.admissible_tol * scale;
    if (std::abs(q(x0)) < tol && std::abs(q(x0 + kIPi)) < tol) {
      throw NonAdmissible("Q and Q(. + i pi) both vanish at xi^{(0)} of site " +
                          std::to_string(n + 1));
    }
  }

  const WronskianFit fit =
      verify_wronskian_identity(model, q, residual_grid(40), opts.wronskian_tol);
  if (fit.epsilon != q.epsilon) {
    throw NoEpsilonFits("sum rule gives epsilon = " + std::to_string(q.epsilon) +
                        " but the Wronskian fit gives " + std::to_string(fit.epsilon));
  }
  return q;
}

QFunctionHom solve_q_hom(const ChainModel& model, const EigenvalueFunction& t, Rng& rng,
                         const HomOptions& opts) {
  return solve_q_hom(model, t, draw_zeta0(model, rng, 1e-2, 2.0 * kPi), opts);
}

double bax_hom_residual(const ChainModel& model, const EigenvalueFunction& t,
                        const QFunctionHom& q, const std::vector<cplx>& grid) {
  const cplx eta = model.eta();
  double worst = 0.0;
  for (const cplx& l : grid) {
    const cplx lhs = t(l) * q(l);
    const cplx minus = -model.a_of(l) * q(l - eta);
    const cplx plus = model.d_of(l) * q(l + eta);
    const double scale = std::max({std::abs(lhs), std::abs(minus), std::abs(plus)});
    if (scale > 0.0) worst = std::max(worst, std::abs(lhs - minus - plus) / scale);
  }
  return worst;
}

cplx wronskian(const QFunctionHom& q, cplx eta, cplx lambda) {
  return q(lambda + kIPi) * q(lambda - eta) + q(lambda) * q(lambda + kIPi - eta);
}

cplx wronskian_expanded(const QFunctionHom& q, cplx eta, cplx lambda) {
  const cplx sh = std::sinh(0.5 * eta);
  cplx minus = 1.0;
  cplx plus = 1.0;
  for (const cplx& r : q.roots) {
    const cplx u = std::sinh(lambda - r - 0.5 * eta);
    minus *= u - sh;
    plus *= u + sh;
  }
  return std::pow(cplx(0.0, 0.5), static_cast<int>(q.roots.size())) * (minus + plus);
}

cplx w_epsilon(const ChainModel& model, int eps, cplx lambda) {
  cplx p = 2.0 * static_cast<double>(eps) * std::pow(cplx(0.0, 0.5), model.n_s());
  for (int n = 0; n < model.n_sites(); ++n) {
    for (int h = 1; h < model.two_s(n); ++h) p *= std::sinh(lambda - model.xi_shifted(n, h));
  }
  return p;
}

WronskianFit verify_wronskian_identity(const ChainModel& model, const QFunctionHom& q,
                                       const std::vector<cplx>& grid, double tol) {
  double res[2] = {0.0, 0.0};
  const cplx eta = model.eta();
  for (const cplx& l : grid) {
    const cplx u = q(l + kIPi) * q(l - eta);
    const cplx v = q(l) * q(l + kIPi - eta);
    const cplx w = u + v;
    const cplx d = model.d_of(l);
    for (int k = 0; k < 2; ++k) {
      const cplx rhs = d * w_epsilon(model, k == 0 ? 1 : -1, l);
      const double scale = std::max({std::abs(u), std::abs(v), std::abs(rhs)});
      if (scale > 0.0) res[k] = std::max(res[k], std::abs(w - rhs) / scale);
    }
  }
  WronskianFit fit;
  fit.epsilon = res[0] <= res[1] ? 1 : -1;
  fit.residual = std::min(res[0], res[1]);
  if (!(fit.residual < tol)) {
    throw NoEpsilonFits("Wronskian identity fails for both signs (residuals " +
                        std::to_string(res[0]) + ", " + std::to_string(res[1]) + ")");
  }
  return fit;
}

PairTReport t_from_q_pair(const ChainModel& model, const QFunctionHom& q, int epsilon,
                          double tol) {
  const cplx eta = model.eta();
  auto terms = [&](cplx l) {
    return std::pair{q(l + eta) * q(l + kIPi - eta), q(l + eta + kIPi) * q(l - eta)};
  };

  PairTReport rep;
  std::vector<cplx> zeros;
  for (int n = 0; n < model.n_sites(); ++n) {
    for (int h = 1; h < model.two_s(n); ++h) {
      const cplx z = model.xi_shifted(n, h);
      zeros.push_back(z);
      const auto [u, v] = terms(z);
      const double scale = std::max(std::abs(u), std::abs(v));
      const double r = scale > 0.0 ? std::abs(u - v) / scale : 0.0;
      rep.entirety.push_back(r);
      if (!(r < tol)) {
        throw NotEntire("numerator does not vanish at xi^{(" + std::to_string(h) +
                        ")} of site " + std::to_string(n + 1));
      }
    }
  }

  const std::vector<cplx> pts = generic_points(zeros, 2 * model.n_sites() + 2, 5e-2);
  std::vector<cplx> vals;
  for (const cplx& l : pts) {
    const auto [u, v] = terms(l);
    vals.push_back((u - v) / w_epsilon(model, epsilon, l));
  }
  rep.t = fit_eigenvalue_function(model, pts, vals);
  return rep;
}

double ProportionalityReport::max_angle() const {
  double m = 0.0;
  for (double a : angle) m = std::max(m, a);
  return m;
}

ProportionalityReport q_vector_proportionality(const ChainModel& model, const QFunctionHom& q,
                                               double zero_tol) {
  ProportionalityReport rep;
  for (int n = 0; n < model.n_sites(); ++n) {
    const int len = model.two_s(n) + 1;
    CVector u(len);
    CVector v(len);
    for (int h = 0; h < len; ++h) {
      const cplx x = model.xi_shifted(n, h);
      u(h) = q(x);
      v(h) = ((h % 2 == 0) ? 1.0 : -1.0) * q(x + kIPi);
    }
    const bool zero = u.norm() < zero_tol && v.norm() < zero_tol;
    rep.both_zero.push_back(zero);
    rep.angle.push_back(zero ? 0.0 : principal_angle(u, v));
  }
  return rep;
}

std::vector<double> bethe_residuals_hom(const ChainModel& model, const std::vector<cplx>& roots,
                                        double coincide_tol) {
  const cplx eta = model.eta();
  for (std::size_t j = 0; j < roots.size(); ++j) {
    for (std::size_t k = j + 1; k < roots.size(); ++k) {
      if (distance_mod_period(roots[j] - roots[k], 2.0 * kPi) < coincide_tol) {
        throw CoincidentRoots("roots " + std::to_string(j + 1) + " and " +
                              std::to_string(k + 1) + " coincide");
      }
    }
  }
  std::vector<double> out;
  for (std::size_t j = 0; j < roots.size(); ++j) {
    const cplx l = roots[j];
    cplx minus = model.a_of(l);
    cplx plus = model.d_of(l);
    for (std::size_t k = 0; k < roots.size(); ++k) {
      if (k == j) continue;
      minus *= half_sinh(l - roots[k] - eta);
      plus *= half_sinh(l - roots[k] + eta);
    }
    const double scale = std::max(std::abs(minus), std::abs(plus));
    out.push_back(scale > 0.0 ? std::abs(minus + plus) / scale : 0.0);
  }
  return out;
}

std::vector<cplx> polish_roots_hom(const ChainModel& model, std::vector<cplx> roots, int steps) {
  const int n = static_cast<int>(roots.size());
  if (n == 0 || steps <= 0) return roots;
  const cplx eta = model.eta();
  auto equations = [&](const std::vector<cplx>& r) {
    CVector f(n);
    for (int j = 0; j < n; ++j) {
      cplx minus = model.a_of(r[j]);
      cplx plus = model.d_of(r[j]);
      for (int k = 0; k < n; ++k) {
        if (k == j) continue;
        minus *= half_sinh(r[j] - r[k] - eta);
        plus *= half_sinh(r[j] - r[k] + eta);
      }
      f(j) = minus + plus;
    }
    return f;
  };
  std::vector<double> scale(static_cast<std::size_t>(n), 1.0);
  for (int j = 0; j < n; ++j) {
    cplx minus = model.a_of(roots[j]);
    cplx plus = model.d_of(roots[j]);
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      minus *= half_sinh(roots[j] - roots[k] - eta);
      plus *= half_sinh(roots[j] - roots[k] + eta);
    }
    const double s = std::max(std::abs(minus), std::abs(plus));
    if (s > 0.0) scale[j] = s;
  }
  auto scaled = [&](const std::vector<cplx>& r) {
    CVector f = equations(r);
    for (int j = 0; j < n; ++j) f(j) /= scale[j];
    return f;
  };

  CVector f = scaled(roots);
  const double step = 1e-6;
  for (int it = 0; it < steps; ++it) {
    CMatrix jac(n, n);
    for (int k = 0; k < n; ++k) {
      std::vector<cplx> up = roots;
      std::vector<cplx> down = roots;
      up[k] += step;
      down[k] -= step;
      jac.col(k) = (scaled(up) - scaled(down)) / (2.0 * step);
    }
    const Eigen::FullPivLU<CMatrix> lu(jac);
    if (!lu.isInvertible()) break;
    const CVector delta = lu.solve(-f);
    std::vector<cplx> next = roots;
    for (int k = 0; k < n; ++k) next[k] += delta(k);
    const CVector fn = scaled(next);
    if (!(fn.cwiseAbs().maxCoeff() < f.cwiseAbs().maxCoeff())) break;
    roots = std::move(next);
    f = fn;
  }
  for (cplx& r : roots) r = normalize_imag(r, 2.0 * kPi);
  return roots;
}

cplx bethe_t_hom(const ChainModel& model, const std::vector<cplx>& roots, cplx lambda) {
  const cplx eta = model.eta();
  cplx minus = -model.a_of(lambda);
  cplx plus = model.d_of(lambda);
  for (const cplx& r : roots) {
    const cplx den = half_sinh(lambda - r);
    minus *= half_sinh(lambda - r - eta) / den;
    plus *= half_sinh(lambda - r + eta) / den;
  }
  return minus + plus;
}

namespace {

struct Valued {
  cplx value;
  double scale;
};

double quasi_periodicity(const ChainModel& model, const std::vector<cplx>& pts,
                         const std::function<Valued(cplx)>& f) {
  const double sign = (model.n_sites() % 2 == 1) ? 1.0 : -1.0;
  double worst = 0.0;
  for (const cplx& l : pts) {
    const Valued u = f(l);
    const Valued v = f(l + kIPi);
    const double scale = std::max(u.scale, v.scale);
    if (scale > 0.0) worst = std::max(worst, std::abs(v.value - sign * u.value) / scale);
  }
  return worst;
}

}  // namespace

double bethe_t_quasi_periodicity(const ChainModel& model, const std::vector<cplx>& roots,
                                 const std::vector<cplx>& pts) {
  const cplx eta = model.eta();
  return quasi_periodicity(model, pts, [&](cplx l) {
    cplx minus = -model.a_of(l);
    cplx plus = model.d_of(l);
    for (const cplx& r : roots) {
      const cplx den = half_sinh(l - r);
      minus *= half_sinh(l - r - eta) / den;
      plus *= half_sinh(l - r + eta) / den;
    }
    return Valued{minus + plus, std::max(std::abs(minus), std::abs(plus))};
  });
}

double pair_t_quasi_periodicity(const ChainModel& model, const QFunctionHom& q, int epsilon,
                                const std::vector<cplx>& pts) {
  const cplx eta = model.eta();
  return quasi_periodicity(model, pts, [&](cplx l) {
    const cplx w = w_epsilon(model, epsilon, l);
    const cplx u = q(l + eta) * q(l + kIPi - eta) / w;
    const cplx v = q(l + eta + kIPi) * q(l - eta) / w;
    return Valued{u - v, std::max(std::abs(u), std::abs(v))};
  });
}

HomEigenstates eigenstates_from_q_hom(const ChainModel& model, const SOVBasis& basis,
                                      const QFunctionHom& q, double zero_tol) {
  const cplx kappa = model.kappa();
  HomEigenstates out;
  for (int eps : {1, -1}) {
    auto qv = [&](int n, int h) { return q.shifted(eps, model.xi_shifted(n, h)); };
    auto lc = [&](int n, int h) { return std::pow(static_cast<double>(eps) * kappa, h) * qv(n, h); };
    auto rc = [&](int n, int h) {
      return std::pow(-static_cast<double>(eps) * kappa, -h) * ad_ratio_product(model, n, h) * qv(n, h);
    };
    Eigenstates st{assemble_left(model, basis, lc), assemble_right(model, basis, rc)};
    double lb = 0.0;
    double rb = 0.0;
    for (std::size_t i = 0; i < basis.tuples.size(); ++i) {
      const HTuple& h = basis.tuples[i];
      cplx cl = vandermonde(model, h);
      cplx cr = cl;
      for (int n = 0; n < model.n_sites(); ++n) {
        cl *= lc(n, h[n]);
        cr *= rc(n, h[n]);
      }
      const auto idx = static_cast<Eigen::Index>(i);
      lb += std::abs(cl) * basis.left.row(idx).norm();
      rb += std::abs(cr) * basis.right.col(idx).norm();
    }
    if (st.left.norm() > zero_tol * lb && st.right.norm() > zero_tol * rb) {
      (eps == 1 ? out.plus : out.minus) = std::move(st);
    }
  }
  if (!out.plus && !out.minus) throw BothChoicesZero("both Q choices give the zero state");
  return out;
}

}  // namespace sovxxz
