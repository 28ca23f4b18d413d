#include "sovxxz/trigpoly.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sovxxz/errors.hpp"

namespace sovxxz {

namespace {

void require_same_scale(const TrigPoly& p, const TrigPoly& q) {
  if (p.scale() != q.scale()) {
    throw ScaleMismatch("trig polynomials with different angle scales");
  }
}

// Parlett-Reinsch diagonal balancing with radix 2.
void balance(CMatrix& a) {
  const Eigen::Index n = a.rows();
  bool converged = false;
  while (!converged) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0;
      double r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      while (c < 0.5 * r) {
        c *= 2.0;
        r *= 0.5;
        f *= 2.0;
      }
      while (c >= 2.0 * r) {
        c *= 0.5;
        r *= 2.0;
        f *= 0.5;
      }
      if ((c + r) / f < 0.95 * s) {
        converged = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

std::pair<cplx, cplx> horner_with_derivative(const std::vector<cplx>& c,
                                             cplx z) {
  cplx p = 0.0;
  cplx dp = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
  return {p, dp};
}

}  // namespace

TrigPoly::TrigPoly(int m1, std::vector<cplx> coeffs, AngleScale scale)
    : m1_(m1), coeffs_(std::move(coeffs)), scale_(scale) {}

TrigPoly TrigPoly::zero(int parity, AngleScale scale) {
  return TrigPoly(parity & 1, {}, scale);
}

TrigPoly TrigPoly::constant(cplx c, AngleScale scale) {
  return TrigPoly(0, {c}, scale);
}

TrigPoly TrigPoly::exponential(int k, AngleScale scale) {
  return TrigPoly(-k, {1.0}, scale);
}

TrigPoly TrigPoly::sinh_product(std::span<const cplx> roots, AngleScale scale) {
  const double s = scale_factor(scale);
  TrigPoly out = constant(1.0, scale);
  for (const cplx& r : roots) {
    // sinh(x - u) = e^{-x} (-e^{u}/2 + e^{-u}/2 e^{2x})
    const cplx u = s * r;
    out = out * TrigPoly(1, {-0.5 * std::exp(u), 0.5 * std::exp(-u)}, scale);
  }
  return out;
}

TrigPoly TrigPoly::from_values(std::span<const cplx> nodes,
                               std::span<const cplx> values, int m,
                               AngleScale scale) {
  if (nodes.size() != values.size() || nodes.empty()) {
    throw DegenerateNodes("from_values needs equally many nodes and values");
  }
  const double s = scale_factor(scale);
  const int n = static_cast<int>(nodes.size());
  const int m2 = n - 1;
  const int m1 = m2 - m;

  std::vector<cplx> x(n);
  std::vector<cplx> z(n);
  for (int k = 0; k < n; ++k) {
    x[k] = s * nodes[k];
    z[k] = std::exp(2.0 * x[k]);
  }
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      if (std::abs(std::sinh(x[j] - x[k])) < 1e-12) {
        throw DegenerateNodes("interpolation nodes " + std::to_string(j) +
                              " and " + std::to_string(k) +
                              " coincide modulo the period");
      }
    }
  }

  // Lagrange interpolation in z of v_k e^{m1 x_k}.
  std::vector<cplx> coeffs(n, 0.0);
  std::vector<cplx> basis;
  for (int k = 0; k < n; ++k) {
    const cplx target = values[k] * std::exp(static_cast<double>(m1) * x[k]);
    if (target == 0.0) continue;
    basis.assign(1, 1.0);
    cplx denom = 1.0;
    for (int l = 0; l < n; ++l) {
      if (l == k) continue;
      basis.push_back(0.0);
      for (std::size_t i = basis.size() - 1; i > 0; --i) {
        basis[i] = basis[i - 1] - z[l] * basis[i];
      }
      basis[0] *= -z[l];
      denom *= z[k] - z[l];
    }
    const cplx w = target / denom;
    for (int i = 0; i < n; ++i) coeffs[i] += w * basis[i];
  }
  return TrigPoly(m1, std::move(coeffs), scale);
}

cplx TrigPoly::coefficient_of_exponent(int k) const {
  const int t = k + m1_;
  if (t < 0 || t % 2 != 0) return 0.0;
  const int j = t / 2;
  if (j > m2()) return 0.0;
  return coeffs_[j];
}

double TrigPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const cplx& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

bool TrigPoly::is_zero(double tol) const { return max_abs_coeff() <= tol; }

cplx TrigPoly::operator()(cplx lambda) const {
  if (coeffs_.empty()) return 0.0;
  const cplx x = scale_factor(scale_) * lambda;
  const cplx z = std::exp(2.0 * x);
  cplx acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return std::exp(-static_cast<double>(m1_) * x) * acc;
}

TrigPoly TrigPoly::shifted(cplx delta) const {
  const cplx d = scale_factor(scale_) * delta;
  std::vector<cplx> c = coeffs_;
  for (int j = 0; j < static_cast<int>(c.size()); ++j) {
    c[j] *= std::exp(static_cast<double>(2 * j - m1_) * d);
  }
  return TrigPoly(m1_, std::move(c), scale_);
}

TrigPoly TrigPoly::trimmed(double rel_tol) const {
  const double cut = rel_tol * max_abs_coeff();
  if (coeffs_.empty() || max_abs_coeff() == 0.0) return zero(parity(), scale_);
  std::size_t lo = 0;
  std::size_t hi = coeffs_.size();
  while (lo < hi && std::abs(coeffs_[lo]) <= cut) ++lo;
  while (hi > lo && std::abs(coeffs_[hi - 1]) <= cut) --hi;
  std::vector<cplx> c(coeffs_.begin() + lo, coeffs_.begin() + hi);
  return TrigPoly(m1_ - 2 * static_cast<int>(lo), std::move(c), scale_);
}

TrigPoly& TrigPoly::operator*=(cplx c) {
  for (cplx& v : coeffs_) v *= c;
  return *this;
}

TrigPoly operator*(const TrigPoly& p, const TrigPoly& q) {
  require_same_scale(p, q);
  if (p.coeffs_.empty() || q.coeffs_.empty()) {
    return TrigPoly::zero(p.parity() ^ q.parity(), p.scale_);
  }
  std::vector<cplx> c(p.coeffs_.size() + q.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < q.coeffs_.size(); ++j) {
      c[i + j] += p.coeffs_[i] * q.coeffs_[j];
    }
  }
  return TrigPoly(p.m1_ + q.m1_, std::move(c), p.scale_);
}

TrigPoly operator+(const TrigPoly& p, const TrigPoly& q) {
  require_same_scale(p, q);
  if (p.coeffs_.empty()) return q;
  if (q.coeffs_.empty()) return p;
  if (p.parity() != q.parity()) {
    throw ParityMismatch("adding trig polynomials of different parity");
  }
  const int m1 = std::max(p.m1_, q.m1_);
  const int top = std::max(p.max_exponent(), q.max_exponent());
  std::vector<cplx> c(static_cast<std::size_t>((top + m1) / 2 + 1), 0.0);
  for (const TrigPoly* r : {&p, &q}) {
    const int off = (m1 - r->m1_) / 2;
    for (std::size_t j = 0; j < r->coeffs_.size(); ++j) c[off + j] += r->coeffs_[j];
  }
  return TrigPoly(m1, std::move(c), p.scale_);
}

TrigPoly operator-(const TrigPoly& p, const TrigPoly& q) { return p + q * cplx(-1.0); }

cplx RootForm::operator()(cplx lambda) const {
  const double s = scale_factor(scale);
  const cplx x = s * lambda;
  const int n = static_cast<int>(roots.size());
  cplx acc = normalization * std::exp(static_cast<double>(n - m1) * x);
  for (const cplx& r : roots) acc *= std::sinh(x - s * r);
  return acc;
}

TrigPoly RootForm::to_poly() const {
  const int n = static_cast<int>(roots.size());
  return TrigPoly::sinh_product(roots, scale) *
         TrigPoly::exponential(n - m1, scale) * normalization;
}

RootForm roots(const TrigPoly& p, const TrigPolyOptions& opts) {
  const auto& c = p.coeffs();
  const double cmax = p.max_abs_coeff();
  if (c.empty() || cmax == 0.0) throw NotFullDegree("zero polynomial has no root form");
  const int n = p.m2();
  if (std::abs(c.front()) <= opts.rel_tol * cmax) {
    throw NotFullDegree("trailing coefficient vanishes");
  }
  if (std::abs(c.back()) <= opts.rel_tol * cmax) {
    throw NotFullDegree("leading coefficient vanishes");
  }

  RootForm out;
  out.m1 = p.m1();
  out.scale = p.scale();
  if (n == 0) {
    out.normalization = c[0];
    return out;
  }

  std::vector<cplx> monic(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) monic[j] = c[j] / c.back();

  CMatrix comp = CMatrix::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -monic[i];
  balance(comp);
  Eigen::ComplexEigenSolver<CMatrix> es(comp, false);
  if (es.info() != Eigen::Success) throw NotFullDegree("companion eigensolver failed");

  const double s = scale_factor(p.scale());
  const double period = half_period(p.scale());
  cplx mu_sum = 0.0;
  for (int k = 0; k < n; ++k) {
    cplx z = es.eigenvalues()(k);
    for (int it = 0; it < opts.polish_steps; ++it) {
      const auto [f, df] = horner_with_derivative(monic, z);
      if (df == 0.0) break;
      const cplx zn = z - f / df;
      if (std::abs(horner_with_derivative(monic, zn).first) < std::abs(f)) {
        z = zn;
      } else {
        break;
      }
    }
    const double az = std::abs(z);
    if (!(az >= opts.min_root_modulus && az <= opts.max_root_modulus)) {
      throw NotFullDegree("root modulus outside the trusted range");
    }
    const cplx lam = normalize_imag(0.5 * std::log(z) / s, period);
    out.roots.push_back(lam);
    mu_sum += s * lam;
  }
  out.normalization = c.back() * std::pow(2.0, n) * std::exp(mu_sum);
  return out;
}

}  // namespace sovxxz
