#pragma once

// Compilation of sawtooth/hat basis functions into exact one-hidden-layer ReLU
// networks: net(x) = c0 + sum_i c_i * max(0, w_i . x + b_i).
//
// A dilated or ridge element is piecewise linear in s = k.x, with kinks on the
// half- or quarter-integer grid in s.  Every weight produced here (integer
// direction entries, quarter-integer biases, integer slope jumps) is exactly
// representable in binary64, so compiled nets reproduce direct evaluation
// exactly in rational arithmetic and to roundoff in binary64.

#include <span>
#include <string>
#include <vector>

#include "pwlb/pwl_core.hpp"
#include "pwlb/rational.hpp"

namespace pwlb {

struct ReluNet {
    int input_dim = 0;
    std::vector<std::vector<double>> w; // hidden weights, one vector per unit
    std::vector<double> b;              // hidden biases
    std::vector<double> c;              // output coefficients
    double c0 = 0.0;                    // output bias

    size_t hidden_size() const { return w.size(); }
};

// Net computing eval_dilated(family, k, t) exactly on [0,1].  Hidden size is
// 2k (C_saw), 2k+1 (S_saw) or k+1 (Hat).  Guard: 1 <= k <= 2^14.
ReluNet compile_univariate(Family family, long long k);

// Net computing eval_ridge(family, k, x) exactly on [0,1]^n.  All hidden units
// share the direction w_i = k.  Guard: 0 < ||k||_1 <= 2^12; the hat family is
// not part of the ridge systems and is refused.
ReluNet compile_ridge(Family family, std::span<const long long> k);

double net_eval(const ReluNet& net, std::span<const double> x);

// Same evaluation carried out in exact rational arithmetic (weights are
// dyadic, hence convert exactly).
Rational net_eval_exact(const ReluNet& net, std::span<const Rational> x);

// Number of linear pieces of the net along its shared direction, restricted
// to the unit box: interior breakpoints + 1.  Requires all hidden units to
// share one direction (as compiled nets do).
long long linear_region_count(const ReluNet& net);

// JSON with every weight in both decimal (17 significant digits) and C99
// hexfloat form; import prefers the hexfloat and rejects non-finite weights
// or structurally inconsistent nets.
std::string export_json(const ReluNet& net);
ReluNet import_json(const std::string& text);

} // namespace pwlb
