#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "pwlb/pwl_core.hpp"

namespace pwlb {

// --- coefficient sequences -------------------------------------------------------

// tau_k: sine coefficients of the hat function. 0 for even k;
// (-1)^((k-1)/2) * 4 sqrt2 / (pi^2 k^2) for odd k.
double tau(long long k);

// Product tau_{m_1} ... tau_{m_n}; 0 when any entry is even.
double tau_multi(const MultiIndex& m);

enum class GammaKind { cos_part, sin_part };

// Fourier coefficients of C_saw (cos) and S_saw (sin) over frequency 2m+1:
// cos: 8/(pi^2 (2m+1)^2); sin: (-1)^m times that.
double gamma_coeff(long long m, GammaKind kind);

// Upper bound on sum_{odd m > M} |tau_m| via integral comparison.
double tau_tail_bound(long long M);

// Sparse coefficient sequence with an explicit truncation cutoff and a
// stored tail bound (>= the true tail for the sequences built here).
struct CoeffSeq {
    int dim = 1;
    long long cutoff = 0; // max index (dim 1) or max inf-norm (dim n)
    double tail_bound = 0.0;
    std::map<std::vector<long long>, double> entries;

    double at1(long long k) const {
        auto it = entries.find({k});
        return it == entries.end() ? 0.0 : it->second;
    }
    void set1(long long k, double v) {
        if (v != 0.0) entries[{k}] = v;
    }
    double at(std::span<const long long> k) const {
        auto it = entries.find(std::vector<long long>(k.begin(), k.end()));
        return it == entries.end() ? 0.0 : it->second;
    }
};

// tau truncated at odd index <= M, with its tail bound.
CoeffSeq tau_seq(long long M);

// (a * b)_k = sum_{d | k} a_d b_{k/d} for k <= N (dimension-1 sequences).
CoeffSeq dirichlet_convolve(const CoeffSeq& a, const CoeffSeq& b, long long N);

// Dirichlet inverse for k <= N; requires a_1 != 0.
CoeffSeq dirichlet_inverse(const CoeffSeq& a, long long N);

// JSON form: {"dim", "cutoff", "entries": [[index..., value]...], "tail_bound"}.
std::string coeffseq_to_json(const CoeffSeq& c);
CoeffSeq coeffseq_from_json(const std::string& text);

// --- transfer operators -------------------------------------------------------------

// T_hat_1d:  (T g)(t)   = sum_{odd m <= M} tau_m g(m t)
// T_tensor:  (T g)(x)   = sum over odd multi-indices m (entries <= M) of
//                         tau_m g(m x)  (componentwise products)
// T_ridge:   (T f)(x)   = (8/pi^2) sum_{j < M} over m = 2j+1 of m^{-2} times
//                         f(m x) when m = 1 mod 4, f(m (1-x)) when m = 3 mod 4
// The caller's evaluator must implement the function's periodic extension
// (odd 2-periodic for hat/tensor kinds, 1-periodic for ridge).
struct OperatorSpec {
    enum class Kind { T_hat_1d, T_tensor, T_ridge } kind = Kind::T_hat_1d;
    long long M = 10000; // odd-index cutoff (hat/tensor) or odd-term count (ridge)
    int n = 1;
};

struct TruncatedValue {
    double value = 0.0;
    double error_bound = 0.0; // coefficient tail x sup|f|
};

TruncatedValue apply_T(const OperatorSpec& spec,
                       const std::function<double(std::span<const double>)>& f,
                       std::span<const double> x, double sup_f = 1.0);

// Univariate convenience wrapper (hat kind).
TruncatedValue apply_T_1d(const OperatorSpec& spec, const std::function<double(double)>& f,
                          double t, double sup_f = 1.0);

struct NormBound {
    double norm_bound = 0.0;          // operator norm upper bound
    double neumann_contraction = 0.0; // contraction factor of the inversion remainder
};

NormBound operator_norm_bound(const OperatorSpec& spec);

// lhs = tau_1^n ((pi^2/8)^n - 1) vs rhs = tau_1^n; holds iff (pi^2/8)^n < 2.
struct CriterionResult {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

CriterionResult schauder_criterion(int n);

enum class RieszKind { hat_1d, ridge_n };

struct RieszConstants {
    double A = 0.0;
    double B = 0.0;
};

// A = (a - a (pi^2/8 - 1))^2 with a = 4 sqrt6 / pi^2 (same value in both
// kinds); B = 3/2.
RieszConstants riesz_constants_via_neumann(RieszKind kind);

} // namespace pwlb
