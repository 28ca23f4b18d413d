#include "sovxxz/chain_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sovxxz/errors.hpp"

namespace sovxxz {

CondInhMargin cond_inh_margin(const std::vector<int>& two_s,
                              const std::vector<cplx>& xi, cplx eta) {
  CondInhMargin out;
  out.margin = std::numeric_limits<double>::infinity();
  const int n = static_cast<int>(xi.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      // Xi_i and Xi_j meet iff xi_i - xi_j + K eta in i*pi*Z for some
      // K in [-(s_i+s_j), s_i+s_j] with the right parity.
      for (int k2 = -(two_s[i] + two_s[j]); k2 <= two_s[i] + two_s[j]; k2 += 2) {
        const cplx w = xi[i] - xi[j] + 0.5 * static_cast<double>(k2) * eta;
        const double d = distance_mod_period(w, kPi);
        if (d < out.margin) {
          out.margin = d;
          out.site_i = i;
          out.site_j = j;
          out.shift = k2;
        }
      }
    }
  }
  return out;
}

ChainModel::ChainModel(std::vector<int> two_s, std::vector<cplx> xi, cplx eta,
                       cplx kappa, cplx alpha, const ModelLimits& limits)
    : two_s_(std::move(two_s)),
      xi_(std::move(xi)),
      eta_(eta),
      kappa_(kappa),
      alpha_(alpha),
      limits_(limits) {
  if (two_s_.empty()) throw InvalidModel("model needs at least one site");
  if (two_s_.size() != xi_.size()) {
    throw InvalidModel("two_s and xi have different lengths");
  }
  for (int t : two_s_) {
    if (t < 1) throw InvalidModel("every 2s must be a positive integer");
  }
  if (kappa_ == 0.0) throw InvalidModel("kappa must be nonzero");

  double dim = 1.0;
  for (int t : two_s_) {
    dim *= t + 1;
    n_s_ += t;
  }
  if (dim > limits_.max_dim) {
    std::ostringstream os;
    os << "hilbert dimension " << dim << " exceeds cap " << limits_.max_dim;
    throw InvalidModel(os.str());
  }
  dim_ = static_cast<int>(dim);

  const int kmax = *std::max_element(two_s_.begin(), two_s_.end()) + 1;
  for (int k = 1; k <= kmax; ++k) {
    if (std::abs(std::sinh(static_cast<double>(k) * eta_)) <= limits_.eta_tol) {
      std::ostringstream os;
      os << "eta is numerically commensurate to i*pi (|sinh(" << k
         << " eta)| <= " << limits_.eta_tol << ")";
      throw InvalidModel(os.str());
    }
  }

  margin_ = sovxxz::cond_inh_margin(two_s_, xi_, eta_);
  if (n_sites() > 1 && margin_.margin < limits_.delta_min) {
    std::ostringstream os;
    os << "inhomogeneities of sites " << margin_.site_i + 1 << " and "
       << margin_.site_j + 1 << " collide (shift " << 0.5 * margin_.shift
       << " eta, margin " << margin_.margin << " < " << limits_.delta_min << ")";
    throw InvalidModel(os.str());
  }
}

cplx ChainModel::xi_shifted(int n, int k) const {
  if (n < 0 || n >= n_sites()) throw IndexOutOfRange("site index out of range");
  if (k < 0 || k > two_s_[n]) throw IndexOutOfRange("shift index out of range");
  return xi_[n] + (0.5 * two_s_[n] - k) * eta_;
}

cplx ChainModel::a_of(cplx lambda) const {
  cplx p = 1.0;
  for (int n = 0; n < n_sites(); ++n) p *= std::sinh(lambda - xi_[n] + spin(n) * eta_);
  return p;
}

cplx ChainModel::d_of(cplx lambda) const {
  cplx p = 1.0;
  for (int n = 0; n < n_sites(); ++n) p *= std::sinh(lambda - xi_[n] - spin(n) * eta_);
  return p;
}

ChainModel ChainModel::with_kappa(cplx kappa) const {
  ChainModel m = *this;
  if (kappa == 0.0) throw InvalidModel("kappa must be nonzero");
  m.kappa_ = kappa;
  return m;
}

ChainModel ChainModel::with_alpha(cplx alpha) const {
  ChainModel m = *this;
  m.alpha_ = alpha;
  return m;
}

}  // namespace sovxxz
