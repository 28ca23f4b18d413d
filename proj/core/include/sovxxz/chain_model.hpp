#pragma once

#include <vector>

#include "sovxxz/numeric.hpp"

namespace sovxxz {

struct ModelLimits {
  /// Minimal distance between shift lattices of different sites.
  double delta_min = 1e-3;
  /// Largest admissible Hilbert-space dimension.
  int max_dim = 64;
  /// Lower bound on |sinh(k eta)|, k = 1..max(2s)+1.
  double eta_tol = 1e-8;
};

/// Smallest distance between the shift lattices of two sites and the pair
/// realizing it.
struct CondInhMargin {
  double margin = 0.0;
  int site_i = -1;
  int site_j = -1;
  int shift = 0;
};

CondInhMargin cond_inh_margin(const std::vector<int>& two_s,
                              const std::vector<cplx>& xi, cplx eta);

/// Immutable chain description. Sites are indexed 0..N-1; spins are stored
/// as 2s. Construction validates every invariant and throws InvalidModel.
class ChainModel {
 public:
  ChainModel(std::vector<int> two_s, std::vector<cplx> xi, cplx eta,
             cplx kappa = 1.0, cplx alpha = 0.0, const ModelLimits& limits = {});

  int n_sites() const { return static_cast<int>(two_s_.size()); }
  const std::vector<int>& two_s() const { return two_s_; }
  int two_s(int n) const { return two_s_.at(static_cast<std::size_t>(n)); }
  double spin(int n) const { return 0.5 * two_s(n); }
  const std::vector<cplx>& xi() const { return xi_; }
  cplx xi(int n) const { return xi_.at(static_cast<std::size_t>(n)); }
  cplx eta() const { return eta_; }
  cplx kappa() const { return kappa_; }
  cplx alpha() const { return alpha_; }
  const ModelLimits& limits() const { return limits_; }

  int hilbert_dim() const { return dim_; }
  /// N_s = sum of 2s_n.
  int n_s() const { return n_s_; }
  double cond_inh_margin() const { return margin_.margin; }

  /// xi_n + (s_n - k) eta for 0 <= k <= 2 s_n.
  cplx xi_shifted(int n, int k) const;

  cplx a_of(cplx lambda) const;
  cplx d_of(cplx lambda) const;

  ChainModel with_kappa(cplx kappa) const;
  ChainModel with_alpha(cplx alpha) const;

 private:
  std::vector<int> two_s_;
  std::vector<cplx> xi_;
  cplx eta_;
  cplx kappa_;
  cplx alpha_;
  ModelLimits limits_;
  int dim_ = 1;
  int n_s_ = 0;
  CondInhMargin margin_;
};

}  // namespace sovxxz
