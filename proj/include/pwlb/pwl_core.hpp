#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "pwlb/rational.hpp"

namespace pwlb {

// The three periodic piecewise-linear families:
//   C_saw: 4|x - 1/2| - 1 on [0,1], 1-periodic, even about 1/2
//   S_saw: |2 - 4|x - 1/4|| - 1 on [0,1], 1-periodic, odd about 1/2
//   Hat:   2t on [0,1/2], 2(1-t) on [1/2,1], antiperiodic: f(t+1) = -f(t)
enum class Family { C_saw, S_saw, Hat };

// A periodic piecewise-linear function: sorted breakpoints on [0, period]
// with stored values, linear in between. If antiperiodic, the value flips
// sign on each period shift.
struct PwlPeriodic {
    Rational period;
    std::vector<Rational> breakpoints; // first = 0, last = period
    std::vector<Rational> values;      // same length as breakpoints
    bool antiperiodic = false;

    PwlPeriodic(Rational period_, std::vector<Rational> bps, std::vector<Rational> vals,
                bool anti = false);

    double eval(double t) const;
    Rational eval_exact(const Rational& t) const;
};

// Canonical shapes of the three families (period-1 storage; Hat carries the
// antiperiodic flag so its fundamental period is 2).
const PwlPeriodic& family_shape(Family f);

// Frequency vector in Z^n, n >= 1, not all zero. Canonical means the first
// non-zero entry is positive.
struct FreqIndex {
    std::vector<long long> entries;

    int dim() const { return static_cast<int>(entries.size()); }
    bool is_canonical() const;
    bool operator==(const FreqIndex&) const = default;
    auto operator<=>(const FreqIndex&) const = default;
};

// Positive-integer multi-index.
struct MultiIndex {
    std::vector<long long> entries; // all >= 1

    int dim() const { return static_cast<int>(entries.size()); }
    bool operator==(const MultiIndex&) const = default;
    auto operator<=>(const MultiIndex&) const = default;
};

// A dilated family member t -> family(k t). Evaluation reduces the argument
// modulo the period instead of materializing the 2k+1 breakpoints.
struct Dilation {
    Family family;
    long long k; // >= 1

    double eval(double t) const;
    Rational eval_exact(const Rational& t) const;

    // Kink positions restricted to [0,1], endpoints included, ascending.
    std::vector<Rational> kinks_unit() const;
    std::vector<double> kinks_unit_d() const;
};

// --- evaluation -------------------------------------------------------------

// Periodic/antiperiodic extension applied; |t| <= 2^52 required (beyond that
// the fractional part is not representable).
double eval_base(Family f, double t);
Rational eval_base_exact(Family f, const Rational& t);

// family(k t); k >= 1.
double eval_dilated(Family f, long long k, double t);
Rational eval_dilated_exact(Family f, long long k, const Rational& t);

// Product of univariate evaluations family(m_i x_i).
double eval_tensor(Family f, const MultiIndex& m, std::span<const double> x);

// family(k . x); family must be C_saw or S_saw, k nonzero.
double eval_ridge(Family f, const FreqIndex& k, std::span<const double> x);
Rational eval_ridge_exact(Family f, const FreqIndex& k, std::span<const Rational> x);

// Reference trigonometric systems.
enum class TrigKind { e_j, e_m_tensor, cos_ridge, sin_ridge, constant };

double eval_trig_e(long long j, double t);                                 // sqrt2 sin(j pi t)
double eval_trig_tensor(const MultiIndex& m, std::span<const double> x);   // 2^{n/2} prod sin(pi m_i x_i)
double eval_trig_cos_ridge(const FreqIndex& k, std::span<const double> x); // sqrt2 cos(2 pi k.x)
double eval_trig_sin_ridge(const FreqIndex& k, std::span<const double> x); // sqrt2 sin(2 pi k.x)

// --- interpolation check ----------------------------------------------------

struct InterpolationReport {
    bool ok = false;
    long long nodes_checked = 0;
};

// Verifies Hat_j(m/(2j)) = sin(j pi m/(2j)) for m = 0..2j, exactly; both
// sides take values in {-1, 0, 1} at these nodes.
InterpolationReport hat_interpolates_sine(long long j);

// --- index utilities ----------------------------------------------------------

// Flips the sign of k if its first non-zero entry is negative.
// Returns the canonical index and sin_sign = -1 iff the input was flipped
// (odd families pick up the sign; even families do not).
std::pair<FreqIndex, int> canonicalize(std::span<const long long> k);

// Enumerates {1..N}^n so that every prefix of length m^n equals {1..m}^n.
// Shell m lists (j, m) for j in {1..m}^{n-1} lexicographically, then the
// remaining max-=-m indices in reverse lexicographic order.
std::vector<MultiIndex> square_order(int n, long long N);

// Isotropic rectangle bounds (s,...,s) per schedule entry (minimum side
// lengths, increasing). Throws on an empty schedule.
std::vector<std::vector<long long>> pringsheim_rectangles(int n, std::span<const long long> schedule);

// A rectangle bound is admitted at a stage iff its minimum side reaches it.
bool pringsheim_admits(std::span<const long long> bound, long long stage);

// Canonical indices with ||k||_inf <= bound, ordered by (||k||_inf, lex).
std::vector<FreqIndex> canonical_indices(int n, long long bound);

long long inf_norm(std::span<const long long> v);
long long one_norm(std::span<const long long> v);

// gcd of absolute entries (the content); > 0 for nonzero vectors.
long long content(std::span<const long long> v);

} // namespace pwlb
