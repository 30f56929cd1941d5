#pragma once

#include <array>
#include <complex>
#include <utility>

#include "sketchsolve/linalg.hpp"

namespace sketchsolve {

using Complex = std::complex<double>;

/// Limiting aspect ratios gamma = d/n and xi = m/n, 0 < gamma < xi <= 1.
class AspectRatios {
 public:
  /// Throws BadRatios.
  AspectRatios(double gamma, double xi);

  /// Finite-sample ratios gamma = d/n, xi = m/n.
  static AspectRatios from_sizes(Index n, Index d, Index m);

  double gamma() const { return gamma_; }
  double xi() const { return xi_; }
  double rho_g() const { return gamma_ / xi_; }

 private:
  double gamma_;
  double xi_;
};

/// Closed-form quantities at one aspect-ratio pair. rate is the limiting
/// per-iteration contraction of E||Delta_t||^2 for the embedding family
/// (rho_h for Haar/SRHT, rho_g for Gaussian); mu_star = theta1 / theta2.
struct TheoryPoint {
  double theta1;
  double theta2;
  double mu_star;
  double rho_g;
  double rate;
};

/// Haar / SRHT: inverse moments, optimal step and rate.
TheoryPoint closed_forms(const AspectRatios& r);

/// rho_g * xi (1 - xi) / (gamma^2 + xi - 2 xi gamma), the direct rate formula.
double haar_rate(const AspectRatios& r);

/// 1 - theta1^2 / theta2: rate of the fixed step mu = theta1/theta2.
double rate_from_moments(double theta1, double theta2);

/// Gaussian N(0, 1/m) sketches: moments of Marchenko-Pastur(rho_g).
TheoryPoint gaussian_closed_forms(const AspectRatios& r);

/// Marchenko-Pastur density with shape rho in (0, 1). Throws BadRho.
double mp_density(double x, double rho);
double mp_cdf(double x, double rho);
/// [(1 - sqrt rho)^2, (1 + sqrt rho)^2]
std::pair<double, double> mp_support(double rho);

struct StieltjesValues {
  Complex m_c;  // transform of the auxiliary n x n Gram limit F_C
  Complex m_h;  // transform of F_h, the limit law of U^T S^T S U
};

/// Both roots of the closed-form quadratic for m_C at z (no branch choice).
/// Requires z != 0, z != 1. Throws InvalidZ.
std::array<Complex, 2> m_c_roots(Complex z, const AspectRatios& r);

/// Physical branch: C+ -> C+, C- -> C-, and the larger (positive) root on
/// the negative real axis. z must lie off [0, inf). Throws InvalidZ,
/// BadRatios (xi = 1).
StieltjesValues stieltjes(Complex z, const AspectRatios& r);

/// eta_C(z) = m_C(-1/z) / z for real z > 0.
double eta_c(double z, const AspectRatios& r);

/// |eta_C - (1 - gamma) - gamma / (1 + z (1 + (xi - 1)/eta_C))| at real z > 0.
double eta_c_residual(double z, const AspectRatios& r);

inline constexpr double kDensitySmoothing = 1e-6;
inline constexpr double kOverlaySmoothing = 1e-4;

/// (1/pi) Im m_h(x + i eps): density of F_h by Stieltjes inversion.
/// Needs x > 0, eps in (0, 1e-3]. Throws InvalidZ.
double haar_density(double x, const AspectRatios& r, double eps = kDensitySmoothing);

/// Density of (n/m) U^T S^T S U: xi * f_h(xi * y).
double haar_density_rescaled(double y, const AspectRatios& r, double eps = kOverlaySmoothing);

/// Mass of the atom of F_h at x = 1: max(0, (gamma + xi - 1) / gamma).
/// When d + m > n the column space of U and the row space of S share at
/// least d + m - n dimensions, so that fraction of eigenvalues equals 1.
/// haar_density carries it as a Lorentzian of width eps centred at 1.
double haar_atom_at_one(const AspectRatios& r);

/// Edges of the absolutely continuous part of F_h: (sqrt(gamma (1-xi)) -+ sqrt(xi (1-gamma)))^2.
std::pair<double, double> haar_support_edges(const AspectRatios& r);

/// (1 - sqrt rho_g)^2 / (1 + 1/sqrt xi)^2, a lower bound on inf supp(F_h).
double support_lower_bound(const AspectRatios& r);

/// S-transform of (1 - p) delta_0 + p delta_1: (y + 1) / (y + p).
double s_transform_bernoulli(double y, double p);

/// Product S_U(y) S_B(y) = (y + 1)^2 / ((y + xi)(y + gamma)).
double s_transform_gram(double y, const AspectRatios& r);

/// Residual of eta(-y S(y)/(y+1)) = y + 1 evaluated on the closed form.
/// With z = -(y+gamma)(y+xi)/(y(y+1)), returns the distance from y + 1 to
/// the nearest of the two closed-form values z * m_C(-z). Throws PoleInput.
double free_convolution_check(double y, const AspectRatios& r);

/// Same identity on the physical branch only; defined when the eta argument
/// -y(y+1)/((y+gamma)(y+xi)) is positive. Throws PoleInput, InvalidZ.
double free_convolution_physical_residual(double y, const AspectRatios& r);

struct CostModel {
  double c_ihs;  // (nd log d + d^3 + nd) log(1/eps)
  double c_pcg;  // nd log d + d^3 log d + nd log(1/eps)
  double ratio;  // c_ihs / c_pcg
};

/// Leading-order operation counts with unit constants, natural logs.
/// Needs n >= d >= 2 and eps in (0, 1). Throws BadDimensions.
CostModel cost_model(double n, double d, double eps);

}  // namespace sketchsolve
