#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace sovxxz {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Rng = std::mt19937_64;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

/// Kronecker product a (x) b, with `a` as the most significant factor.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// ||x - y||_F / max(||x||_F, ||y||_F); zero when both vanish.
double relative_difference(const CMatrix& x, const CMatrix& y);

/// Distance from w to the lattice period*i*Z (period = pi or 2*pi).
double distance_mod_period(cplx w, double period);

/// Reduces Im(z) into [0, period) by subtracting multiples of i*period.
cplx normalize_imag(cplx z, double period);

/// Smallest principal angle between span{u} and span{v}. Returns 0 when
/// either vector vanishes (the caller flags that case separately).
double principal_angle(const CVector& u, const CVector& v);

/// 1 - |<u,v>| / (|u||v|): zero iff u and v are parallel.
double overlap_deficiency(const CVector& u, const CVector& v);

/// Smallest total distance (mod i*period) between two root multisets of
/// equal size, minimized over matchings. Returns the largest single-pair
/// distance of the optimal matching.
double multiset_distance(std::span<const cplx> a, std::span<const cplx> b,
                         double period);

/// Uniform complex sample in the box [re_lo, re_hi] x [im_lo, im_hi].
cplx random_point(Rng& rng, double re_lo, double re_hi, double im_lo,
                  double im_hi);

/// Grid of `count` points on a slanted segment through the strip used by
/// the functional-equation residual checks; deterministic.
std::vector<cplx> residual_grid(int count);

}  // namespace sovxxz
