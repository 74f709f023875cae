#include "demograph/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "demograph/common.hpp"

namespace demograph {

double norm_pdf(double x) {
  return 0.3989422804014326779399461 * std::exp(-0.5 * x * x);
}

double norm_cdf(double x) {
  return 0.5 * std::erfc(-x * 0.7071067811865475244008444);
}

namespace {

// Continued fraction for the incomplete beta (Lentz's method).
double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-16;
  constexpr double kFpMin = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw NumericError("incomplete beta continued fraction did not converge");
}

// Gauss-Legendre nodes/weights on [-1, 1], computed once by Newton iteration
// on the Legendre polynomial roots.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendre(int n) : nodes(n), weights(n) {
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
      double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double pp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < n; ++j) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
        }
        pp = n * (z * p0 - p1) / (z * z - 1.0);
        const double z1 = z;
        z = z1 - p0 / pp;
        if (std::fabs(z - z1) < 1e-15) break;
      }
      nodes[i] = -z;
      nodes[n - 1 - i] = z;
      weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
      weights[n - 1 - i] = weights[i];
    }
  }
};

const GaussLegendre& gl96() {
  static const GaussLegendre g(96);
  return g;
}

const GaussLegendre& gl128() {
  static const GaussLegendre g(128);
  return g;
}

// CDF of the range of k iid standard normals:
//   R_k(x) = k * integral phi(z) * (Phi(z) - Phi(z - x))^(k-1) dz.
double normal_range_cdf(double x, int k) {
  if (x <= 0.0) return 0.0;
  const auto& gl = gl96();
  const double lo = -8.5;
  const double hi = x + 8.5;
  const double c = 0.5 * (hi + lo);
  const double hw = 0.5 * (hi - lo);
  double sum = 0.0;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double z = c + hw * gl.nodes[i];
    const double inner = norm_cdf(z) - norm_cdf(z - x);
    if (inner <= 0.0) continue;
    double powed;
    switch (k - 1) {
      case 1: powed = inner; break;
      case 2: powed = inner * inner; break;
      case 3: powed = inner * inner * inner; break;
      default: powed = std::pow(inner, k - 1); break;
    }
    sum += gl.weights[i] * norm_pdf(z) * powed;
  }
  return std::min(1.0, k * hw * sum);
}

// log density of u = s/sigma where s^2 ~ sigma^2 chi2_df / df.
double log_chi_scale_density(double u, double df) {
  return 0.5 * df * std::log(df) - (0.5 * df - 1.0) * std::log(2.0) -
         std::lgamma(0.5 * df) + (df - 1.0) * std::log(u) - 0.5 * df * u * u;
}

}  // namespace

double reg_inc_beta(double a, double b, double x) {
  if (!(a > 0) || !(b > 0)) throw NumericError("reg_inc_beta: bad parameters");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) -
                          std::lgamma(b) + a * std::log(x) +
                          b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_cf(a, b, x) / a;
  }
  return 1.0 - std::exp(std::lgamma(a + b) - std::lgamma(a) -
                        std::lgamma(b) + b * std::log1p(-x) +
                        a * std::log(x)) *
                   beta_cf(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double df) {
  if (df <= 0) throw NumericError("student_t_cdf: df must be positive");
  if (t == 0.0) return 0.5;
  const double x = df / (df + t * t);
  const double half_tail = 0.5 * reg_inc_beta(0.5 * df, 0.5, x);
  return t > 0 ? 1.0 - half_tail : half_tail;
}

double student_t_two_sided_p(double t, double df) {
  const double x = df / (df + t * t);
  return reg_inc_beta(0.5 * df, 0.5, x);
}

double student_t_upper_p(double t, double df) { return 1.0 - student_t_cdf(t, df); }

double studentized_range_cdf(double q, int k, double df) {
  if (k < 2) throw NumericError("studentized_range_cdf: k must be >= 2");
  if (df < 1) throw NumericError("studentized_range_cdf: df must be >= 1");
  if (q <= 0.0) return 0.0;
  // Effectively infinite df: the scale factor is the constant 1.
  if (df > 1e7) return normal_range_cdf(q, k);

  double ulo, uhi;
  if (df >= 10.0) {
    const double sd = 1.0 / std::sqrt(2.0 * df);
    ulo = std::max(1e-10, 1.0 - 14.0 * sd);
    uhi = 1.0 + 14.0 * sd;
  } else {
    ulo = 1e-10;
    uhi = 1.0 + 45.0 / df;
  }
  const auto& gl = gl128();
  const double c = 0.5 * (uhi + ulo);
  const double hw = 0.5 * (uhi - ulo);
  double sum = 0.0;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double u = c + hw * gl.nodes[i];
    sum += gl.weights[i] * std::exp(log_chi_scale_density(u, df)) *
           normal_range_cdf(q * u, k);
  }
  return std::min(1.0, hw * sum);
}

double studentized_range_quantile(double p, int k, double df) {
  if (!(p > 0.0 && p < 1.0))
    throw NumericError("studentized_range_quantile: p must be in (0,1)");
  double lo = 1e-3;
  double hi = 4.0;
  while (studentized_range_cdf(hi, k, df) < p) {
    hi *= 1.5;
    if (hi > 1e4) throw NumericError("studentized_range_quantile: no bracket");
  }
  while (hi - lo > 1e-8) {
    const double mid = 0.5 * (lo + hi);
    if (studentized_range_cdf(mid, k, df) < p)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace demograph
