#pragma once

namespace retrialq {

/// Regularized incomplete beta function I_x(a, b), a,b > 0, x in [0,1].
double regularized_incomplete_beta(double a, double b, double x);

/// Upper tail P{T > t} of a (two-sided) Student-t variable with `dof`
/// degrees of freedom; valid for any real t.
double student_t_tail(double dof, double t);

/// Quantile q with P{T <= q} = p for the Student-t distribution.
double student_t_quantile(double dof, double p);

}  // namespace retrialq
