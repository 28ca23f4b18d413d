#pragma once

#include <span>
#include <vector>

#include "sovxxz/numeric.hpp"

namespace sovxxz {

/// Whether a polynomial is a Laurent polynomial in e^{lambda} (Full) or in
/// e^{lambda/2} (Half, the double-period class used by the homogeneous
/// Baxter equation).
enum class AngleScale { Full, Half };

inline double scale_factor(AngleScale s) {
  return s == AngleScale::Full ? 1.0 : 0.5;
}

/// Period of the sign-alternation of a polynomial in the given class: i*pi
/// for Full, 2*i*pi for Half (measured in lambda).
inline double half_period(AngleScale s) {
  return s == AngleScale::Full ? kPi : 2.0 * kPi;
}

struct TrigPolyOptions {
  /// Coefficients below rel_tol * max|c| count as zero.
  double rel_tol = 1e-10;
  /// Companion roots with |z| outside [min_root_modulus, max_root_modulus]
  /// are rejected instead of being passed through log().
  double min_root_modulus = 1e-12;
  double max_root_modulus = 1e12;
  /// Newton polishing steps applied to companion-matrix roots.
  int polish_steps = 3;
};

/// Trigonometric polynomial
///
///   P(lambda) = e^{-m1 x} * sum_{j=0}^{M2} c_j e^{2 j x},   x = s * lambda,
///
/// with s = 1 (Full) or s = 1/2 (Half). The parity class is m1 mod 2:
/// P(lambda + i*pi/s) = (-1)^{m1} P(lambda). An empty coefficient vector is
/// the zero polynomial.
class TrigPoly {
 public:
  TrigPoly() = default;
  TrigPoly(int m1, std::vector<cplx> coeffs,
           AngleScale scale = AngleScale::Full);

  static TrigPoly zero(int parity = 0, AngleScale scale = AngleScale::Full);
  static TrigPoly constant(cplx c, AngleScale scale = AngleScale::Full);
  /// e^{k x}
  static TrigPoly exponential(int k, AngleScale scale = AngleScale::Full);
  /// prod_j sinh(x - s*root_j); for Half this is prod sinh((lambda-root_j)/2).
  static TrigPoly sinh_product(std::span<const cplx> roots,
                               AngleScale scale = AngleScale::Full);

  /// Unique element of T_{M2-m, M2} (M2 = nodes.size()-1) taking `values`
  /// at `nodes`. Throws DegenerateNodes when two nodes coincide modulo the
  /// period of the class.
  static TrigPoly from_values(std::span<const cplx> nodes,
                              std::span<const cplx> values, int m,
                              AngleScale scale = AngleScale::Full);

  int m1() const { return m1_; }
  int m2() const { return static_cast<int>(coeffs_.size()) - 1; }
  int parity() const { return ((m1_ % 2) + 2) % 2; }
  AngleScale scale() const { return scale_; }
  const std::vector<cplx>& coeffs() const { return coeffs_; }

  /// Exponent range in x: e^{min_exponent x} .. e^{max_exponent x}.
  int min_exponent() const { return -m1_; }
  int max_exponent() const { return -m1_ + 2 * m2(); }
  /// Coefficient of e^{k x}; zero when k is outside the stored range or of
  /// the wrong parity.
  cplx coefficient_of_exponent(int k) const;

  double max_abs_coeff() const;
  bool is_zero(double rel_or_abs_tol = 0.0) const;

  cplx operator()(cplx lambda) const;

  /// lambda -> P(lambda + delta), exact at coefficient level.
  TrigPoly shifted(cplx delta) const;
  /// Drops leading/trailing coefficients below tol * max|c|.
  TrigPoly trimmed(double rel_tol) const;

  TrigPoly& operator*=(cplx c);
  friend TrigPoly operator*(const TrigPoly& p, cplx c) {
    TrigPoly out = p;
    out *= c;
    return out;
  }
  friend TrigPoly operator*(cplx c, const TrigPoly& p) { return p * c; }
  friend TrigPoly operator*(const TrigPoly& p, const TrigPoly& q);
  friend TrigPoly operator+(const TrigPoly& p, const TrigPoly& q);
  friend TrigPoly operator-(const TrigPoly& p, const TrigPoly& q);

 private:
  int m1_ = 0;
  std::vector<cplx> coeffs_;
  AngleScale scale_ = AngleScale::Full;
};

inline cplx eval(const TrigPoly& p, cplx lambda) { return p(lambda); }
inline TrigPoly mul(const TrigPoly& p, const TrigPoly& q) { return p * q; }
inline TrigPoly add(const TrigPoly& p, const TrigPoly& q) { return p + q; }
inline TrigPoly shift(const TrigPoly& p, cplx delta) { return p.shifted(delta); }

/// Factored form P(lambda) = c_P e^{(M2-M1) x} prod_j sinh(x - s*lambda_j).
/// Roots are reduced to Im lambda_j in [0, pi) (Full) or [0, 2pi) (Half).
struct RootForm {
  cplx normalization;
  std::vector<cplx> roots;
  int m1 = 0;
  AngleScale scale = AngleScale::Full;

  cplx operator()(cplx lambda) const;
  TrigPoly to_poly() const;
};

/// Normalization and roots via eigenvalues of the balanced companion matrix
/// in z = e^{2x}. Throws NotFullDegree when c_0 or c_{M2} vanishes, or when
/// a root modulus leaves the trusted range.
RootForm roots(const TrigPoly& p, const TrigPolyOptions& opts = {});

}  // namespace sovxxz
