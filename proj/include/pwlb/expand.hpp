#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pwlb/pwl_core.hpp"
#include "pwlb/transfer.hpp"

namespace pwlb {

// --- input functions -----------------------------------------------------------

// A function on [0,1] with quadrature metadata. When the function is a
// family dilation, `pwl` switches coefficient extraction to the closed-form
// PWL x trig path.
struct Func1 {
    std::string name;
    std::function<double(double)> f;
    std::vector<double> kinks;     // interior kinks in (0,1)
    std::optional<Dilation> pwl;
    double max_freq = 1.0;         // oscillation hint, in sine-index units
    // ell2 bound on the sine coefficients beyond index N (known inputs only)
    std::function<double(long long)> sine_tail_energy;
};

Func1 func_e(long long j);                 // sqrt2 sin(j pi t)
Func1 func_hat(long long j);               // Hat(j t)
Func1 func_saw(Family fam, long long k);   // C_saw/S_saw dilation
Func1 func_square();                       // f = 1 (square wave after odd extension)
Func1 func_poly_t1mt();                    // t(1 - t)

// A function on (0,1)^n. When `terms` (plus `constant`) fully describe f as
// a sum of sawtooth ridge components, coefficient extraction runs exactly
// ray-by-ray; otherwise generic tensor-GL quadrature is used.
struct RidgeTerm {
    Family fam = Family::C_saw; // C_saw or S_saw profile
    FreqIndex k;                // canonical
    double coeff = 1.0;
};

struct FuncN {
    std::string name;
    int dim = 1;
    std::function<double(std::span<const double>)> f;
    double constant = 0.0;
    std::vector<RidgeTerm> terms;
    bool structured = false; // true iff constant + terms fully describe f
    std::vector<std::vector<double>> axis_kinks;
};

FuncN func_ridge(Family fam, std::span<const long long> k, double coeff = 1.0);
FuncN func_const_n(int n, double c);
FuncN func_sum(const FuncN& a, const FuncN& b);

// --- expansions ------------------------------------------------------------------

enum class BasisTag { sine, tensor_sine, trig_ridge, hat, tensor_hat, cs_ridge };

std::string basis_tag_name(BasisTag b);
BasisTag basis_tag_from_name(const std::string& s);

// Coefficients of a function in one of the six systems.
//  sine/tensor_sine:  coeffs against e_j / e_m (orthonormal)
//  hat/tensor_hat:    coeffs against raw Hat_j / Hat_m
//  trig_ridge:        constant + coeffs against sqrt2 cos / sqrt2 sin(2 pi k.x)
//  cs_ridge:          constant + coeffs against raw C_k (even slot) and
//                     S_k (odd slot)
struct Expansion {
    BasisTag basis = BasisTag::sine;
    int dim = 1;
    long long cutoff = 0; // index cutoff N or inf-norm bound
    CoeffSeq coeffs;      // non-ridge bases
    double constant = 0.0;
    CoeffSeq even_part;   // ridge bases: cos (trig) or C (sawtooth) slots
    CoeffSeq odd_part;    // ridge bases: sin (trig) or S (sawtooth) slots
};

std::string expansion_to_json(const Expansion& e);
Expansion expansion_from_json(const std::string& text);

// alpha_k = int_0^1 f e_k for k <= N.
Expansion sine_coeffs(const Func1& f, long long N);

// beta = tau^{-1} * alpha, so that sum beta_j Hat_j has sine coefficients
// alpha up to the cutoff.
Expansion to_hat_coeffs(const Expansion& sine_expansion);

// Tensor products: coefficients factorize over the per-axis factors.
Expansion tensor_sine_coeffs(std::span<const Func1> factors, long long N);
Expansion tensor_hat_coeffs(const Expansion& tensor_sine_expansion);

// Constant plus cos/sin coefficients for canonical k with ||k||_inf <= bound.
Expansion trig_ridge_coeffs(const FuncN& f, int n, long long bound);

// Per-ray inversion over odd multipliers (cos rays against |gamma|, sin rays
// against signed gamma); constant passes through.
Expansion to_CS_coeffs(const Expansion& trig_ridge_expansion);

// Pointwise evaluation of a finite expansion.
std::vector<double> reconstruct(const Expansion& e, std::span<const double> points);
std::vector<double> reconstruct_multi(const Expansion& e,
                                      std::span<const std::vector<double>> points);

// --- convergence experiments --------------------------------------------------------

struct ConvRow {
    long long stage = 0;
    long long cutoff = 0;
    double error = 0.0;
    double est_quadrature_error = 0.0;
};

enum class Ordering { square, pringsheim };

// L_q errors of partial sums of f in the sine or hat basis at the scheduled
// cutoffs N.
std::vector<ConvRow> convergence_experiment(const Func1& f, BasisTag basis, double q,
                                            std::span<const long long> schedule);

// Tensor-sine partial sums of a tensor-product input. square: schedule
// entries are term counts along the square ordering; pringsheim: schedule
// entries are isotropic rectangle sides.
std::vector<ConvRow> convergence_experiment_nd(std::span<const Func1> factors, double q,
                                               std::span<const long long> schedule,
                                               Ordering ordering);

void conv_table_to_csv(std::span<const ConvRow> rows, std::ostream& os);

} // namespace pwlb
