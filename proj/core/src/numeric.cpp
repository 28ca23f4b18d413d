#include "sovxxz/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace sovxxz {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double relative_difference(const CMatrix& x, const CMatrix& y) {
  const double scale = std::max(x.norm(), y.norm());
  if (scale == 0.0) return 0.0;
  return (x - y).norm() / scale;
}

double distance_mod_period(cplx w, double period) {
  double im = std::fmod(w.imag(), period);
  if (im > 0.5 * period) im -= period;
  if (im < -0.5 * period) im += period;
  return std::hypot(w.real(), im);
}

cplx normalize_imag(cplx z, double period) {
  double im = std::fmod(z.imag(), period);
  if (im < 0.0) im += period;
  // fmod can land exactly on `period` after the shift for tiny negatives
  if (im >= period) im -= period;
  return {z.real(), im};
}

double principal_angle(const CVector& u, const CVector& v) {
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu == 0.0 || nv == 0.0) return 0.0;
  const CVector uh = u / nu;
  const CVector vh = v / nv;
  const CVector r = vh - uh * uh.dot(vh);
  const double s = std::min(1.0, r.norm());
  return std::asin(s);
}

double overlap_deficiency(const CVector& u, const CVector& v) {
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu == 0.0 || nv == 0.0) return 1.0;
  const double ang = principal_angle(u, v);
  // 1 - cos(theta) without cancellation
  const double s = std::sin(0.5 * ang);
  return 2.0 * s * s;
}

double multiset_distance(std::span<const cplx> a, std::span<const cplx> b,
                         double period) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  const std::size_t n = a.size();
  if (n == 0) return 0.0;
  auto dist = [&](std::size_t i, std::size_t j) {
    return distance_mod_period(a[i] - b[j], period);
  };
  if (n <= 8) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
      double worst = 0.0;
      for (std::size_t i = 0; i < n && worst < best; ++i) {
        worst = std::max(worst, dist(i, perm[i]));
      }
      best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
  }
  // greedy fallback for large multisets
  std::vector<bool> used(n, false);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (!used[j] && dist(i, j) < best) {
        best = dist(i, j);
        arg = j;
      }
    }
    used[arg] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

cplx random_point(Rng& rng, double re_lo, double re_hi, double im_lo,
                  double im_hi) {
  std::uniform_real_distribution<double> re(re_lo, re_hi);
  std::uniform_real_distribution<double> im(im_lo, im_hi);
  const double x = re(rng);
  const double y = im(rng);
  return {x, y};
}

std::vector<cplx> residual_grid(int count) {
  std::vector<cplx> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const double s = count > 1 ? static_cast<double>(k) / (count - 1) : 0.5;
    pts.emplace_back(-1.6 + 3.2 * s, 1.4 * std::sin(2.3 * k + 0.4));
  }
  return pts;
}

}  // namespace sovxxz
