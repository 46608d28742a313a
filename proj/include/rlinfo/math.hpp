#pragma once

#include <cmath>
#include <functional>

namespace rlinfo {

// Digamma via upward recurrence into the asymptotic regime.
inline double digamma(double x) {
  double result = 0.0;
  while (x < 8.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // psi(x) ~ ln x - 1/(2x) - 1/(12x^2) + 1/(120x^4) - 1/(252x^6) + ...
  result += std::log(x) - 0.5 * inv -
            inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 / 252.0));
  return result;
}

inline double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

namespace detail {

// 15-point Gauss-Legendre on [a,b].
inline double gauss15(const std::function<double(double)>& f, double a, double b) {
  static const double xs[8] = {0.0,
                               0.2011940939974345,
                               0.3941513470775634,
                               0.5709721726085388,
                               0.7244177313601700,
                               0.8482065834104272,
                               0.9372733924007060,
                               0.9879925180204854};
  static const double ws[8] = {0.2025782419255613, 0.1984314853271116, 0.1861610000155622,
                               0.1662692058169939, 0.1395706779261543, 0.1071592204671719,
                               0.0703660474881081, 0.0307532419961173};
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double sum = ws[0] * f(c);
  for (int i = 1; i < 8; ++i) sum += ws[i] * (f(c - h * xs[i]) + f(c + h * xs[i]));
  return sum * h;
}

inline double adaptive(const std::function<double(double)>& f, double a, double b,
                       double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double left = gauss15(f, a, m);
  const double right = gauss15(f, m, b);
  if (depth <= 0 || std::fabs(left + right - whole) < tol) return left + right;
  return adaptive(f, a, m, left, 0.5 * tol, depth - 1) +
         adaptive(f, m, b, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Gauss-Legendre with absolute tolerance.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double abs_tol = 1e-9) {
  return detail::adaptive(f, a, b, detail::gauss15(f, a, b), abs_tol, 40);
}

namespace detail {

inline double beta_continued_fraction(double x, double a, double b) {
  const int max_iter = 300;
  const double tiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= max_iter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 3e-15) break;
  }
  return h;
}

}  // namespace detail

// Regularized incomplete beta I_x(a, b), i.e. the Beta(a,b) CDF at x.
inline double beta_cdf(double x, double a, double b) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = a * std::log(x) + b * std::log(1.0 - x) - log_beta(a, b);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0))
    return front * detail::beta_continued_fraction(x, a, b) / a;
  return 1.0 - front * detail::beta_continued_fraction(1.0 - x, b, a) / b;
}

inline double beta_pdf(double x, double a, double b) {
  if (x <= 0.0 || x >= 1.0) {
    if (x == 0.0 && a == 1.0) return std::exp(-log_beta(a, b));
    if (x == 1.0 && b == 1.0) return std::exp(-log_beta(a, b));
    return 0.0;
  }
  return std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log(1.0 - x) - log_beta(a, b));
}

}  // namespace rlinfo
