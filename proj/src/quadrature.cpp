#include "pwlb/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pwlb {

namespace {

constexpr long long kDilationCap = 1LL << 14;

// 16-node Gauss-Legendre rule on [-1,1] (positive half; symmetric).
constexpr int kGlHalf = 8;
constexpr double kGlX[kGlHalf] = {
    0.09501250983763744018531934, 0.28160355077925891323046050,
    0.45801677765722738634241944, 0.61787624440264374844667176,
    0.75540440835500303389510119, 0.86563120238783174388046790,
    0.94457502307323257607798842, 0.98940093499164993259615417,
};
constexpr double kGlW[kGlHalf] = {
    0.18945061045506849628539672, 0.18260341504492358886676366,
    0.16915651939500253818931208, 0.14959598881657673208150173,
    0.12462897125553387205247628, 0.09515851168249278480992510,
    0.06225352393864789286284384, 0.02715245941175409485178057,
};

std::vector<double> segment_bounds(std::span<const double> hints) {
    std::vector<double> b;
    b.push_back(0.0);
    for (double h : hints)
        if (h > 0.0 && h < 1.0) b.push_back(h);
    b.push_back(1.0);
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
}

double gl_on_interval(const std::function<double(double)>& f, double a, double b) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < kGlHalf; ++i)
        s += kGlW[i] * (f(mid - half * kGlX[i]) + f(mid + half * kGlX[i]));
    return s * half;
}

double gl_composite(const std::function<double(double)>& f,
                    const std::vector<double>& bounds, int panels) {
    long double acc = 0.0L;
    for (size_t s = 0; s + 1 < bounds.size(); ++s) {
        double a = bounds[s], b = bounds[s + 1];
        double h = (b - a) / panels;
        for (int p = 0; p < panels; ++p)
            acc += gl_on_interval(f, a + p * h, a + (p + 1) * h);
    }
    return static_cast<double>(acc);
}

} // namespace

// --- exact path ----------------------------------------------------------------

Rational integrate_pwl_product(const Dilation& f, const Dilation& g) {
    if (f.k > kDilationCap || g.k > kDilationCap)
        throw std::invalid_argument("integrate_pwl_product: dilation index exceeds 2^14");
    std::vector<Rational> kf = f.kinks_unit(), kg = g.kinks_unit();
    std::vector<Rational> nodes;
    nodes.reserve(kf.size() + kg.size());
    std::merge(kf.begin(), kf.end(), kg.begin(), kg.end(), std::back_inserter(nodes));
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

    static const Rational half(1, 2), sixth(1, 6);
    Rational total = 0;
    for (size_t i = 0; i + 1 < nodes.size(); ++i) {
        const Rational& a = nodes[i];
        const Rational& b = nodes[i + 1];
        Rational m = (a + b) * half;
        Rational fa = f.eval_exact(a) * g.eval_exact(a);
        Rational fm = f.eval_exact(m) * g.eval_exact(m);
        Rational fb = f.eval_exact(b) * g.eval_exact(b);
        // Simpson is exact for the quadratic integrand on a kink-free segment
        total += (b - a) * sixth * (fa + 4 * fm + fb);
    }
    return total;
}

// --- closed-form PWL x trig ------------------------------------------------------

double integrate_pwl_trig(const Dilation& f, long long freq, TrigFactor kind) {
    if (freq < 0 || (freq == 0 && kind != TrigFactor::cos_2pik))
        throw std::invalid_argument("integrate_pwl_trig: invalid frequency");
    double w = kind == TrigFactor::sin_jpi ? static_cast<double>(freq) * std::numbers::pi
                                           : 2.0 * std::numbers::pi * static_cast<double>(freq);
    std::vector<Rational> nodes = f.kinks_unit();
    long double acc = 0.0L;
    for (size_t i = 0; i + 1 < nodes.size(); ++i) {
        double a = to_double(nodes[i]), b = to_double(nodes[i + 1]);
        double va = to_double(f.eval_exact(nodes[i]));
        double vb = to_double(f.eval_exact(nodes[i + 1]));
        double slope = (vb - va) / (b - a);
        double icpt = va - slope * a; // f = icpt + slope * t on [a,b]
        if (w == 0.0) { // plain linear integral (cos with freq 0)
            acc += icpt * (b - a) + 0.5 * slope * (b * b - a * a);
            continue;
        }
        auto anti_sin = [&](double t) { // int (icpt + slope t) sin(w t) dt
            return -(icpt + slope * t) * std::cos(w * t) / w + slope * std::sin(w * t) / (w * w);
        };
        auto anti_cos = [&](double t) { // int (icpt + slope t) cos(w t) dt
            return (icpt + slope * t) * std::sin(w * t) / w + slope * std::cos(w * t) / (w * w);
        };
        if (kind == TrigFactor::cos_2pik)
            acc += anti_cos(b) - anti_cos(a);
        else
            acc += anti_sin(b) - anti_sin(a);
    }
    return static_cast<double>(acc);
}

// --- Gauss-Legendre --------------------------------------------------------------

double gl_integrate(const std::function<double(double)>& f,
                    std::span<const double> hints, int panels) {
    if (panels < 1) throw std::invalid_argument("gl_integrate: panels >= 1 required");
    return gl_composite(f, segment_bounds(hints), panels);
}

Estimate lq_norm(const std::function<double(double)>& f, double q,
                 std::span<const double> hints, int panels) {
    if (!(q > 1.0)) throw std::invalid_argument("lq_norm: q must be > 1");
    if (panels < 1) throw std::invalid_argument("lq_norm: panels >= 1 required");
    auto bounds = segment_bounds(hints);
    auto integrand = [&](double t) { return std::pow(std::fabs(f(t)), q); };
    double i1 = gl_composite(integrand, bounds, panels);
    double i2 = gl_composite(integrand, bounds, 2 * panels);
    double v1 = std::pow(i1, 1.0 / q), v2 = std::pow(i2, 1.0 / q);
    return {v2, std::fabs(v2 - v1)};
}

double gl_integrate_multi(const std::function<double(std::span<const double>)>& f,
                          int n, std::span<const std::vector<double>> axis_hints,
                          int panels) {
    if (n < 1 || n > 3) throw std::invalid_argument("gl_integrate_multi: n must be in 1..3");
    if (panels < 1) throw std::invalid_argument("gl_integrate_multi: panels >= 1 required");

    // per-axis node/weight lists
    std::vector<std::vector<double>> nodes(static_cast<size_t>(n)), weights(static_cast<size_t>(n));
    for (int ax = 0; ax < n; ++ax) {
        std::vector<double> hints;
        if (ax < static_cast<int>(axis_hints.size())) hints = axis_hints[static_cast<size_t>(ax)];
        auto bounds = segment_bounds(hints);
        for (size_t s = 0; s + 1 < bounds.size(); ++s) {
            double a = bounds[s], b = bounds[s + 1];
            double h = (b - a) / panels;
            for (int p = 0; p < panels; ++p) {
                double pa = a + p * h, pb = pa + h;
                double mid = 0.5 * (pa + pb), half = 0.5 * (pb - pa);
                for (int i = 0; i < kGlHalf; ++i) {
                    nodes[static_cast<size_t>(ax)].push_back(mid - half * kGlX[i]);
                    weights[static_cast<size_t>(ax)].push_back(half * kGlW[i]);
                    nodes[static_cast<size_t>(ax)].push_back(mid + half * kGlX[i]);
                    weights[static_cast<size_t>(ax)].push_back(half * kGlW[i]);
                }
            }
        }
    }

    std::vector<double> x(static_cast<size_t>(n));
    long double acc = 0.0L;
    size_t n0 = nodes[0].size();
    size_t n1 = n > 1 ? nodes[1].size() : 1;
    size_t n2 = n > 2 ? nodes[2].size() : 1;
    for (size_t i0 = 0; i0 < n0; ++i0) {
        x[0] = nodes[0][i0];
        double w0 = weights[0][i0];
        for (size_t i1 = 0; i1 < n1; ++i1) {
            double w01 = w0;
            if (n > 1) { x[1] = nodes[1][i1]; w01 *= weights[1][i1]; }
            for (size_t i2 = 0; i2 < n2; ++i2) {
                double w = w01;
                if (n > 2) { x[2] = nodes[2][i2]; w *= weights[2][i2]; }
                acc += w * f(x);
            }
        }
    }
    return static_cast<double>(acc);
}

Estimate lq_norm_multi(const std::function<double(std::span<const double>)>& f,
                       double q, int n, MultiMode mode,
                       std::span<const std::vector<double>> axis_hints,
                       int panels_or_log2_points, std::uint64_t seed) {
    if (!(q > 1.0)) throw std::invalid_argument("lq_norm_multi: q must be > 1");
    auto integrand = [&](std::span<const double> x) { return std::pow(std::fabs(f(x)), q); };

    if (mode == MultiMode::tensor_GL) {
        if (n < 1 || n > 3)
            throw std::invalid_argument("lq_norm_multi: tensor_GL supports n in 1..3");
        int panels = std::max(1, panels_or_log2_points);
        double i1 = gl_integrate_multi(integrand, n, axis_hints, panels);
        double i2 = gl_integrate_multi(integrand, n, axis_hints, 2 * panels);
        double v1 = std::pow(i1, 1.0 / q), v2 = std::pow(i2, 1.0 / q);
        return {v2, std::fabs(v2 - v1)};
    }

    // qmc: rank-1 Korobov lattice, >= 2^16 points, 8 random shifts.
    if (n < 1 || n > 8) throw std::invalid_argument("lq_norm_multi: qmc supports n in 1..8");
    int log2n = std::max(16, panels_or_log2_points);
    if (log2n > 26) log2n = 26;
    std::uint64_t N = 1ULL << log2n;
    constexpr std::uint64_t kKorobov = 1571; // fixed generating parameter
    std::vector<std::uint64_t> z(static_cast<size_t>(n));
    z[0] = 1;
    for (int j = 1; j < n; ++j) z[static_cast<size_t>(j)] = (z[static_cast<size_t>(j - 1)] * kKorobov) % N;

    SplitMix64 rng(seed);
    constexpr int kShifts = 8;
    double means[kShifts];
    std::vector<double> shift(static_cast<size_t>(n)), x(static_cast<size_t>(n));
    for (int srep = 0; srep < kShifts; ++srep) {
        for (int j = 0; j < n; ++j)
            shift[static_cast<size_t>(j)] = rng.uniform(static_cast<std::uint64_t>(srep) * 64 + static_cast<std::uint64_t>(j));
        long double acc = 0.0L;
        for (std::uint64_t i = 0; i < N; ++i) {
            for (int j = 0; j < n; ++j) {
                double v = static_cast<double>((i * z[static_cast<size_t>(j)]) % N) / static_cast<double>(N)
                           + shift[static_cast<size_t>(j)];
                x[static_cast<size_t>(j)] = v - std::floor(v);
            }
            acc += integrand(x);
        }
        means[srep] = static_cast<double>(acc / static_cast<long double>(N));
    }
    double mean = 0.0;
    for (double m : means) mean += m;
    mean /= kShifts;
    double var = 0.0;
    for (double m : means) var += (m - mean) * (m - mean);
    var /= (kShifts - 1);
    double se = std::sqrt(var / kShifts);
    double norm = std::pow(mean, 1.0 / q);
    double err = mean > 0.0 ? norm / (q * mean) * se : se;
    return {norm, err};
}

Estimate mc_inner_product(const std::function<double(std::span<const double>)>& f,
                          const std::function<double(std::span<const double>)>& g,
                          int n, std::int64_t samples, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("mc_inner_product: n >= 1 required");
    if (samples < 1000) throw std::invalid_argument("mc_inner_product: samples >= 1000 required");
    SplitMix64 rng(seed);
    std::vector<double> x(static_cast<size_t>(n));
    long double sum = 0.0L, sumsq = 0.0L;
    for (std::int64_t i = 0; i < samples; ++i) {
        for (int j = 0; j < n; ++j)
            x[static_cast<size_t>(j)] =
                rng.uniform(static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(j));
        double v = f(x) * g(x);
        sum += v;
        sumsq += static_cast<long double>(v) * v;
    }
    double mean = static_cast<double>(sum / samples);
    double var = static_cast<double>((sumsq - sum * sum / samples) / (samples - 1));
    if (var < 0.0) var = 0.0;
    return {mean, std::sqrt(var / static_cast<double>(samples))};
}

} // namespace pwlb
