#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "pwlb/pwl_core.hpp"
#include "pwlb/rational.hpp"
#include "pwlb/rng.hpp"

namespace pwlb {

// A value together with an error estimate (Richardson from panel doubling,
// or a standard error for Monte Carlo).
struct Estimate {
    double value = 0.0;
    double error = 0.0;
};

// --- exact piecewise-polynomial path ------------------------------------------

// Exact integral over (0,1) of the product of two family dilations. The
// integrand is piecewise quadratic on the merged kink set; Simpson's rule is
// exact on quadratics and is evaluated in rational arithmetic.
// Dilation indices are capped at 2^14 (breakpoint count guard).
Rational integrate_pwl_product(const Dilation& f, const Dilation& g);

// --- closed-form PWL x trig path ----------------------------------------------

enum class TrigFactor {
    sin_jpi,  // sin(freq * pi * t)
    cos_2pik, // cos(2 * pi * freq * t)
    sin_2pik  // sin(2 * pi * freq * t)
};

// Integral over (0,1) of dilation(t) * trig(t) via the per-segment closed
// form of int (a + b t) trig(w t) dt; accuracy limited only by rounding.
double integrate_pwl_trig(const Dilation& f, long long freq, TrigFactor kind);

// --- composite Gauss-Legendre -------------------------------------------------

// Signed integral of f over (0,1), split at the interior hint points, each
// segment subdivided into `panels` equal panels of 16-node Gauss-Legendre.
double gl_integrate(const std::function<double(double)>& f,
                    std::span<const double> hints, int panels);

// L_q norm on (0,1) for q > 1; hints mark kinks of f. Error estimate from
// panel doubling.
Estimate lq_norm(const std::function<double(double)>& f, double q,
                 std::span<const double> hints, int panels);

enum class MultiMode { tensor_GL, qmc };

// L_q norm on (0,1)^n. tensor_GL (n <= 3): per-axis panels split at
// axis_hints. qmc: rank-1 lattice with >= 2^16 points, seed-shifted;
// error from the spread over 8 independent shifts.
Estimate lq_norm_multi(const std::function<double(std::span<const double>)>& f,
                       double q, int n, MultiMode mode,
                       std::span<const std::vector<double>> axis_hints,
                       int panels_or_log2_points, std::uint64_t seed = 0);

// Plain Monte-Carlo estimate of int f g over (0,1)^n with standard error;
// deterministic given the seed (counter-based RNG). samples >= 1000.
Estimate mc_inner_product(const std::function<double(std::span<const double>)>& f,
                          const std::function<double(std::span<const double>)>& g,
                          int n, std::int64_t samples, std::uint64_t seed);

// Tensor-product Gauss-Legendre integral over (0,1)^n (signed), n <= 3.
double gl_integrate_multi(const std::function<double(std::span<const double>)>& f,
                          int n, std::span<const std::vector<double>> axis_hints,
                          int panels);

} // namespace pwlb
