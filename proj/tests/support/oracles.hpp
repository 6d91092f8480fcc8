#pragma once

// Reference values computed without the library's own formulas.

#include <functional>

namespace oracle {

/// zeta-regularized sum_m m, from S(e) = sum_m m e^{-e m} - 1/e^2 summed
/// term by term and Richardson-extrapolated to e -> 0. Tends to -1/12.
double regularized_mode_sum();

/// 1-D cavity between perfect reflectors: (hbar/2) sum_m omega_m with
/// omega_m = m pi c / L, regularized as above.
double mode_sum_1d_energy(double separation);

/// int_0^inf u^2 / (e^u - 1) du = 2 zeta(3) by a fine trapezoid rule.
double two_zeta3_trapezoid();

/// Pressure on the grounded plate z = L when the plate z = 0 carries
/// V_a cos(k x): finite differences for the Laplace equation on one period,
/// normal Maxwell stress averaged over x, Richardson over three grids.
double fd_single_mode_pressure(double k, double separation, double v_a);

/// Five-point central derivative with step h.
double central_derivative(const std::function<double(double)>& f, double x, double h);

} // namespace oracle
