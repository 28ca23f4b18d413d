#include "sovxxz/qalgebra.hpp"

#include <algorithm>
#include <cmath>

#include "sovxxz/errors.hpp"

namespace sovxxz {

cplx q_int(int j, cplx eta) {
  return std::sinh(static_cast<double>(j) * eta) / std::sinh(eta);
}

SpinMatrices spin_matrices(int two_s, cplx eta) {
  if (two_s < 1) throw InvalidModel("spin_matrices needs 2s >= 1");
  const int d = two_s + 1;
  SpinMatrices m{CMatrix::Zero(d, d), CMatrix::Zero(d, d), CMatrix::Zero(d, d)};
  auto x = [&](int k) { return std::sqrt(q_int(k, eta) * q_int(two_s - k + 1, eta)); };
  for (int k = 0; k < d; ++k) {
    m.sz(k, k) = 0.5 * two_s - k;
    if (k + 1 < d) m.sminus(k + 1, k) = x(k + 1);
    if (k >= 1) m.splus(k - 1, k) = x(k);
  }
  return m;
}

namespace {

CMatrix sinh_diag(const CMatrix& sz, cplx shift, cplx factor) {
  const Eigen::Index d = sz.rows();
  CMatrix out = CMatrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) out(k, k) = std::sinh(shift + factor * sz(k, k));
  return out;
}

double rel(const CMatrix& lhs, const CMatrix& rhs) {
  const double scale = std::max(lhs.norm(), rhs.norm());
  return scale == 0.0 ? 0.0 : (lhs - rhs).norm() / scale;
}

}  // namespace

double uq_residual(int two_s, cplx eta) {
  const SpinMatrices m = spin_matrices(two_s, eta);
  const CMatrix rhs = sinh_diag(m.sz, 0.0, 2.0 * eta) / std::sinh(eta);
  double r = (m.splus * m.sminus - m.sminus * m.splus - rhs).norm();
  r = std::max(r, (m.sz * m.splus - m.splus * m.sz - m.splus).norm());
  r = std::max(r, (m.sz * m.sminus - m.sminus * m.sz + m.sminus).norm());
  return r;
}

const CMatrix& Blocks::operator()(int i, int j) const {
  return i == 0 ? (j == 0 ? a : b) : (j == 0 ? c : d);
}

CMatrix& Blocks::operator()(int i, int j) {
  return i == 0 ? (j == 0 ? a : b) : (j == 0 ? c : d);
}

CMatrix Blocks::dense() const {
  const Eigen::Index n = a.rows();
  CMatrix out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = a;
  out.topRightCorner(n, n) = b;
  out.bottomLeftCorner(n, n) = c;
  out.bottomRightCorner(n, n) = d;
  return out;
}

Blocks lax(const ChainModel& model, int site, cplx lambda) {
  if (site < 0 || site >= model.n_sites()) throw IndexOutOfRange("site index out of range");
  const cplx eta = model.eta();
  const SpinMatrices s = spin_matrices(model.two_s(site), eta);
  const cplx lp = lambda - model.xi(site);
  return {sinh_diag(s.sz, lp, eta), s.sminus * std::sinh(eta), s.splus * std::sinh(eta),
          sinh_diag(s.sz, lp, -eta)};
}

CMatrix r_matrix(cplx lambda, cplx eta) {
  CMatrix r = CMatrix::Zero(4, 4);
  r(0, 0) = r(3, 3) = std::sinh(lambda + eta);
  r(1, 1) = r(2, 2) = std::sinh(lambda);
  r(1, 2) = r(2, 1) = std::sinh(eta);
  return r;
}

Blocks monodromy(const ChainModel& model, cplx lambda) {
  Blocks m = lax(model, 0, lambda);
  for (int n = 1; n < model.n_sites(); ++n) {
    const Blocks l = lax(model, n, lambda);
    Blocks next;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        next(i, j) = kron(m(0, j), l(i, 0)) + kron(m(1, j), l(i, 1));
      }
    }
    m = std::move(next);
  }
  return m;
}

CMatrix transfer_antiperiodic(const ChainModel& model, cplx lambda) {
  const Blocks m = monodromy(model, lambda);
  return m.b / model.kappa() + model.kappa() * m.c;
}

namespace {

// Embeds aux-space blocks into V0 (x) V0' (x) H, acting on V0 (slot 0) or
// V0' (slot 1).
CMatrix embed(const Blocks& m, int slot) {
  const Eigen::Index n = m.a.rows();
  CMatrix out = CMatrix::Zero(4 * n, 4 * n);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int o = 0; o < 2; ++o) {
        const int r = slot == 0 ? 2 * i + o : 2 * o + i;
        const int c = slot == 0 ? 2 * j + o : 2 * o + j;
        out.block(r * n, c * n, n, n) = m(i, j);
      }
    }
  }
  return out;
}

double yang_baxter(const Blocks& ml, const Blocks& mm, cplx lambda, cplx mu, cplx eta) {
  const Eigen::Index n = ml.a.rows();
  const CMatrix r = kron(r_matrix(lambda - mu, eta), CMatrix::Identity(n, n));
  const CMatrix l0 = embed(ml, 0);
  const CMatrix l1 = embed(mm, 1);
  return rel(r * l0 * l1, l1 * l0 * r);
}

}  // namespace

double rll_residual(const ChainModel& model, int site, cplx lambda, cplx mu) {
  return yang_baxter(lax(model, site, lambda), lax(model, site, mu), lambda, mu, model.eta());
}

double rtt_residual(const ChainModel& model, cplx lambda, cplx mu) {
  return yang_baxter(monodromy(model, lambda), monodromy(model, mu), lambda, mu, model.eta());
}

double qdet_residual(const ChainModel& model, cplx lambda) {
  const cplx eta = model.eta();
  const Blocks m = monodromy(model, lambda);
  const Blocks s = monodromy(model, lambda - eta);
  const cplx qd = model.a_of(lambda) * model.d_of(lambda - eta);
  const CMatrix id = CMatrix::Identity(m.a.rows(), m.a.rows()) * qd;
  const double r1 = rel(m.a * s.d - m.b * s.c, id);
  const double r2 = rel(m.d * s.a - m.c * s.b, id);
  return std::max(r1, r2);
}

double transfer_commutator(const ChainModel& model, cplx lambda, cplx mu) {
  const CMatrix t1 = transfer_antiperiodic(model, lambda);
  const CMatrix t2 = transfer_antiperiodic(model, mu);
  const double scale = t1.norm() * t2.norm();
  return scale == 0.0 ? 0.0 : (t1 * t2 - t2 * t1).norm() / scale;
}

const char* to_string(NormalityCase c) {
  switch (c) {
    case NormalityCase::CaseI:
      return "CaseI";
    case NormalityCase::CaseII:
      return "CaseII";
    case NormalityCase::NotApplicable:
      return "NotApplicable";
  }
  return "NotApplicable";
}

NormalityReport normality_check(const ChainModel& model, Rng& rng, int samples,
                                double tol, double hypothesis_tol) {
  NormalityReport rep;
  const cplx eta = model.eta();
  const bool unit_kappa = std::abs(std::abs(model.kappa()) - 1.0) <= hypothesis_tol;
  auto all_xi = [&](auto pred) {
    return std::all_of(model.xi().begin(), model.xi().end(), pred);
  };
  const bool case1 = unit_kappa && std::abs(eta.real()) <= hypothesis_tol &&
                     all_xi([&](cplx x) { return std::abs(x.imag()) <= hypothesis_tol; });
  const bool case2 = unit_kappa && std::abs(eta.imag()) <= hypothesis_tol &&
                     all_xi([&](cplx x) { return std::abs(x.real()) <= hypothesis_tol; });
  if (case1) {
    rep.which = NormalityCase::CaseI;
  } else if (case2) {
    rep.which = NormalityCase::CaseII;
  } else {
    return rep;
  }
  const double sign = model.n_sites() % 2 == 1 ? 1.0 : -1.0;
  for (int k = 0; k < samples; ++k) {
    const cplx lam = random_point(rng, -1.5, 1.5, -1.5, 1.5);
    const CMatrix lhs = transfer_antiperiodic(model, lam).adjoint();
    const CMatrix rhs = rep.which == NormalityCase::CaseI
                            ? CMatrix(-transfer_antiperiodic(model, std::conj(lam)))
                            : CMatrix(sign * transfer_antiperiodic(model, -std::conj(lam)));
    rep.residual = std::max(rep.residual, rel(lhs, rhs));
  }
  rep.passed = rep.residual < tol;
  return rep;
}

}  // namespace sovxxz
