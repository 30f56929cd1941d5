#include "sketchsolve/theory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sketchsolve/error.hpp"
#include "sketchsolve/quadrature.hpp"

namespace sketchsolve {

namespace {

constexpr double kPoleTolerance = 1e-12;

void require_open_xi(const AspectRatios& r, const char* what) {
  require(r.xi() < 1.0, ErrorCode::BadRatios,
          std::string(what) + ": xi = 1 is a degenerate limit (F_h is a point mass)");
}

void require_rho(double rho) {
  require(std::isfinite(rho) && rho > 0.0 && rho < 1.0, ErrorCode::BadRho,
          "Marchenko-Pastur shape must lie in (0, 1), got " + std::to_string(rho));
}

// Roots of z^2 (1 - z) m^2 - z (z + c) m + k = 0, c = gamma + xi - 2,
// k = (1 - gamma)(1 - xi). The larger-magnitude root is formed directly and
// the other from the product of roots, which avoids cancellation.
std::array<Complex, 2> quadratic_roots(Complex z, const AspectRatios& r) {
  const double c = r.gamma() + r.xi() - 2.0;
  const double k = (1.0 - r.gamma()) * (1.0 - r.xi());
  const Complex zc = z + c;
  const Complex g = zc * zc + 4.0 * (z - 1.0) * k;
  Complex s = std::sqrt(g);
  if (std::real(std::conj(zc) * s) > 0.0) s = -s;  // |zc - s| >= |zc + s|
  const Complex denom = 2.0 * z * (1.0 - z);
  const Complex big = (zc - s) / denom;
  const Complex product = k / (z * z * (1.0 - z));
  const Complex small = std::abs(big) > 0.0 ? product / big : (zc + s) / denom;
  return {big, small};
}

bool valid_complex(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

AspectRatios::AspectRatios(double gamma, double xi) : gamma_(gamma), xi_(xi) {
  require(std::isfinite(gamma) && std::isfinite(xi) && gamma > 0.0 && gamma < xi && xi <= 1.0,
          ErrorCode::BadRatios,
          "need 0 < gamma < xi <= 1 (gamma=" + std::to_string(gamma) +
              ", xi=" + std::to_string(xi) + ")");
}

AspectRatios AspectRatios::from_sizes(Index n, Index d, Index m) {
  require(n > 0 && d > 0 && m > 0, ErrorCode::BadDimensions, "sizes must be positive");
  return AspectRatios(static_cast<double>(d) / static_cast<double>(n),
                      static_cast<double>(m) / static_cast<double>(n));
}

double haar_rate(const AspectRatios& r) {
  const double g = r.gamma();
  const double x = r.xi();
  return r.rho_g() * x * (1.0 - x) / (g * g + x - 2.0 * x * g);
}

double rate_from_moments(double theta1, double theta2) { return 1.0 - theta1 * theta1 / theta2; }

TheoryPoint closed_forms(const AspectRatios& r) {
  const double g = r.gamma();
  const double x = r.xi();
  const double gap = x - g;
  TheoryPoint p{};
  p.theta1 = (1.0 - g) / gap;
  p.theta2 = (1.0 - g) * (g * g + x - 2.0 * g * x) / (gap * gap * gap);
  p.mu_star = p.theta1 / p.theta2;
  p.rho_g = r.rho_g();
  p.rate = haar_rate(r);
  return p;
}

TheoryPoint gaussian_closed_forms(const AspectRatios& r) {
  const double rho = r.rho_g();
  const double slack = 1.0 - rho;
  TheoryPoint p{};
  p.theta1 = 1.0 / slack;
  p.theta2 = 1.0 / (slack * slack * slack);
  p.mu_star = slack * slack;
  p.rho_g = rho;
  p.rate = rho;
  return p;
}

std::pair<double, double> mp_support(double rho) {
  require_rho(rho);
  const double s = std::sqrt(rho);
  return {(1.0 - s) * (1.0 - s), (1.0 + s) * (1.0 + s)};
}

double mp_density(double x, double rho) {
  const auto [a, b] = mp_support(rho);
  if (!(x > a && x < b)) return 0.0;
  return std::sqrt((b - x) * (x - a)) / (2.0 * std::numbers::pi * rho * x);
}

double mp_cdf(double x, double rho) {
  const auto [a, b] = mp_support(rho);
  if (x <= a) return 0.0;
  if (x >= b) return 1.0;
  // x = center + radius cos(theta) turns the square-root edges into a
  // smooth integrand.
  const double center = 0.5 * (a + b);
  const double radius = 0.5 * (b - a);
  const double theta_x = std::acos(std::clamp((x - center) / radius, -1.0, 1.0));
  auto integrand = [&](double theta) {
    const double s = std::sin(theta);
    return radius * radius * s * s /
           (2.0 * std::numbers::pi * rho * (center + radius * std::cos(theta)));
  };
  const double mass = adaptive_simpson(integrand, theta_x, std::numbers::pi, 1e-13);
  return std::clamp(mass, 0.0, 1.0);
}

std::array<Complex, 2> m_c_roots(Complex z, const AspectRatios& r) {
  require(valid_complex(z), ErrorCode::InvalidZ, "m_c_roots: non-finite z");
  require(std::abs(z) > kPoleTolerance && std::abs(z - 1.0) > kPoleTolerance,
          ErrorCode::InvalidZ, "m_c_roots: z = 0 and z = 1 are poles");
  return quadratic_roots(z, r);
}

StieltjesValues stieltjes(Complex z, const AspectRatios& r) {
  require_open_xi(r, "stieltjes");
  require(valid_complex(z), ErrorCode::InvalidZ, "stieltjes: non-finite z");
  require(z.imag() != 0.0 || z.real() < 0.0, ErrorCode::InvalidZ,
          "stieltjes: z must lie off the nonnegative real axis");
  const auto roots = m_c_roots(z, r);

  Complex m_c;
  if (z.imag() == 0.0) {
    // On z < 0 both roots are positive; z m_C(z) = -eta_C(-1/z) must lie in
    // (1 - gamma, 1], which only the larger root satisfies.
    m_c = Complex(std::max(roots[0].real(), roots[1].real()), 0.0);
  } else {
    const double side = z.imag() > 0.0 ? 1.0 : -1.0;
    auto score = [&](Complex m) { return side * m.imag() + side * (z * m).imag(); };
    auto admissible = [&](Complex m) {
      return side * m.imag() >= 0.0 && side * (z * m).imag() >= 0.0;
    };
    const bool first = admissible(roots[0]);
    const bool second = admissible(roots[1]);
    if (first != second) {
      m_c = first ? roots[0] : roots[1];
    } else {
      m_c = score(roots[0]) >= score(roots[1]) ? roots[0] : roots[1];
    }
  }
  const double g = r.gamma();
  return {m_c, m_c / g + (1.0 - g) / (g * z)};
}

double eta_c(double z, const AspectRatios& r) {
  require(std::isfinite(z) && z > 0.0, ErrorCode::InvalidZ, "eta_c: need real z > 0");
  return (stieltjes(Complex(-1.0 / z, 0.0), r).m_c / z).real();
}

double eta_c_residual(double z, const AspectRatios& r) {
  const double eta = eta_c(z, r);
  const double g = r.gamma();
  const double rhs = (1.0 - g) + g / (1.0 + z * (1.0 + (r.xi() - 1.0) / eta));
  return std::abs(eta - rhs);
}

double haar_density(double x, const AspectRatios& r, double eps) {
  require(std::isfinite(x) && x > 0.0, ErrorCode::InvalidZ, "haar_density: need x > 0");
  require(eps > 0.0 && eps <= 1e-3, ErrorCode::InvalidZ, "haar_density: eps must be in (0, 1e-3]");
  const double value = stieltjes(Complex(x, eps), r).m_h.imag() / std::numbers::pi;
  return std::max(0.0, value);
}

double haar_density_rescaled(double y, const AspectRatios& r, double eps) {
  return r.xi() * haar_density(r.xi() * y, r, eps);
}

double haar_atom_at_one(const AspectRatios& r) {
  return std::max(0.0, (r.gamma() + r.xi() - 1.0) / r.gamma());
}

std::pair<double, double> haar_support_edges(const AspectRatios& r) {
  const double a = std::sqrt(r.gamma() * (1.0 - r.xi()));
  const double b = std::sqrt(r.xi() * (1.0 - r.gamma()));
  return {(a - b) * (a - b), (a + b) * (a + b)};
}

double support_lower_bound(const AspectRatios& r) {
  const double num = 1.0 - std::sqrt(r.rho_g());
  const double den = 1.0 + 1.0 / std::sqrt(r.xi());
  return num * num / (den * den);
}

double s_transform_bernoulli(double y, double p) {
  require(std::abs(y + p) > kPoleTolerance, ErrorCode::PoleInput, "s_transform: y = -p is a pole");
  return (y + 1.0) / (y + p);
}

double s_transform_gram(double y, const AspectRatios& r) {
  return s_transform_bernoulli(y, r.gamma()) * s_transform_bernoulli(y, r.xi());
}

namespace {

// z = -(y + gamma)(y + xi) / (y (y + 1)); eta is evaluated at 1/z.
double free_convolution_argument(double y, const AspectRatios& r) {
  require(std::isfinite(y), ErrorCode::PoleInput, "free_convolution: non-finite y");
  for (double pole : {-r.xi(), -r.gamma(), -1.0, 0.0}) {
    require(std::abs(y - pole) > kPoleTolerance, ErrorCode::PoleInput,
            "free_convolution: y = " + std::to_string(y) + " is a pole");
  }
  const double z = -(y + r.gamma()) * (y + r.xi()) / (y * (y + 1.0));
  require(std::abs(z + 1.0) > kPoleTolerance, ErrorCode::PoleInput,
          "free_convolution: m_C argument hits z = 1");
  return z;
}

}  // namespace

double free_convolution_check(double y, const AspectRatios& r) {
  require_open_xi(r, "free_convolution_check");
  const double z = free_convolution_argument(y, r);
  const auto roots = m_c_roots(Complex(-z, 0.0), r);
  const double target = y + 1.0;
  double best = std::abs(z * roots[0] - target);
  best = std::min(best, std::abs(z * roots[1] - target));
  return best;
}

double free_convolution_physical_residual(double y, const AspectRatios& r) {
  require_open_xi(r, "free_convolution_physical_residual");
  const double z = free_convolution_argument(y, r);
  require(z > 0.0, ErrorCode::InvalidZ,
          "free_convolution_physical_residual: eta argument must be positive");
  return std::abs(eta_c(1.0 / z, r) - (y + 1.0));
}

CostModel cost_model(double n, double d, double eps) {
  require(std::isfinite(n) && std::isfinite(d) && d >= 2.0 && n >= d, ErrorCode::BadDimensions,
          "cost_model: need n >= d >= 2");
  require(eps > 0.0 && eps < 1.0, ErrorCode::BadDimensions, "cost_model: eps must lie in (0, 1)");
  const double log_d = std::log(d);
  const double log_inv_eps = std::log(1.0 / eps);
  const double nd = n * d;
  const double d3 = d * d * d;
  CostModel c{};
  c.c_ihs = (nd * log_d + d3 + nd) * log_inv_eps;
  c.c_pcg = nd * log_d + d3 * log_d + nd * log_inv_eps;
  c.ratio = c.c_ihs / c.c_pcg;
  return c;
}

}  // namespace sketchsolve
