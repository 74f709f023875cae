#pragma once

namespace demograph {

double norm_pdf(double x);
double norm_cdf(double x);

// Regularized incomplete beta I_x(a, b).
double reg_inc_beta(double a, double b, double x);

double student_t_cdf(double t, double df);

// Two-sided p-value for a t statistic with df degrees of freedom.
double student_t_two_sided_p(double t, double df);

// One-sided upper-tail p-value, P(T >= t).
double student_t_upper_p(double t, double df);

// CDF of the studentized range statistic for k groups and df error degrees
// of freedom. Evaluated by Gauss-Legendre quadrature of
//   P(Q <= q) = integral over u of f_df(u) * R_k(q * u) du
// where R_k is the range CDF of k standard normals and f_df the density of
// sqrt(chi2_df / df). Absolute accuracy is well inside the documented 1e-6.
double studentized_range_cdf(double q, int k, double df);

// Inverse of the above in q, solved by bisection to 1e-8.
double studentized_range_quantile(double p, int k, double df);

}  // namespace demograph
