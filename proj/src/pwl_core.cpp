#include "pwlb/pwl_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace pwlb {

namespace {

constexpr double kMaxArg = 4503599627370496.0; // 2^52

void check_arg_range(double t) {
    if (!(std::fabs(t) <= kMaxArg))
        throw std::domain_error("eval: |t| > 2^52 is out of the supported range");
}

// C_saw on [0,1]: 1-4u on [0,1/2], 4u-3 on [1/2,1].
double c_unit(double u) { return u <= 0.5 ? 1.0 - 4.0 * u : 4.0 * u - 3.0; }

// S_saw on [0,1]: 4u on [0,1/4], 2-4u on [1/4,3/4], 4u-4 on [3/4,1].
double s_unit(double u) {
    if (u <= 0.25) return 4.0 * u;
    if (u <= 0.75) return 2.0 - 4.0 * u;
    return 4.0 * u - 4.0;
}

// Hat on [0,1]: 2u on [0,1/2], 2-2u on [1/2,1].
double hat_unit(double u) { return u <= 0.5 ? 2.0 * u : 2.0 - 2.0 * u; }

Rational c_unit_exact(const Rational& u) {
    static const Rational half(1, 2);
    return u <= half ? Rational(1) - 4 * u : 4 * u - 3;
}

Rational s_unit_exact(const Rational& u) {
    static const Rational q1(1, 4), q3(3, 4);
    if (u <= q1) return 4 * u;
    if (u <= q3) return Rational(2) - 4 * u;
    return 4 * u - 4;
}

Rational hat_unit_exact(const Rational& u) {
    static const Rational half(1, 2);
    return u <= half ? 2 * u : Rational(2) - 2 * u;
}

} // namespace

// --- PwlPeriodic -------------------------------------------------------------

PwlPeriodic::PwlPeriodic(Rational period_, std::vector<Rational> bps, std::vector<Rational> vals,
                         bool anti)
    : period(std::move(period_)), breakpoints(std::move(bps)), values(std::move(vals)),
      antiperiodic(anti) {
    if (period <= 0) throw std::invalid_argument("PwlPeriodic: period must be positive");
    if (breakpoints.size() != values.size() || breakpoints.size() < 2)
        throw std::invalid_argument("PwlPeriodic: need matching breakpoint/value lists, length >= 2");
    if (breakpoints.front() != 0 || breakpoints.back() != period)
        throw std::invalid_argument("PwlPeriodic: breakpoints must start at 0 and end at period");
    if (!std::is_sorted(breakpoints.begin(), breakpoints.end()) ||
        std::adjacent_find(breakpoints.begin(), breakpoints.end()) != breakpoints.end())
        throw std::invalid_argument("PwlPeriodic: breakpoints must be strictly increasing");
    if (!antiperiodic && values.front() != values.back())
        throw std::invalid_argument("PwlPeriodic: periodic wrap requires first value = last value");
    if (antiperiodic && values.front() != -values.back())
        throw std::invalid_argument("PwlPeriodic: antiperiodic wrap requires first value = -last value");
}

Rational PwlPeriodic::eval_exact(const Rational& t) const {
    Rational q = t / period;
    BigInt shifts = rational_floor(q);
    Rational u = (q - Rational(shifts)) * period; // in [0, period)
    int sign = 1;
    if (antiperiodic && boost::multiprecision::bit_test(BigInt(boost::multiprecision::abs(shifts)), 0))
        sign = -1;
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), u);
    size_t hi = static_cast<size_t>(it - breakpoints.begin());
    if (hi == 0) hi = 1;
    if (hi >= breakpoints.size()) hi = breakpoints.size() - 1;
    size_t lo = hi - 1;
    if (u == breakpoints[lo]) return sign * values[lo]; // exact at stored breakpoints
    Rational slope = (values[hi] - values[lo]) / (breakpoints[hi] - breakpoints[lo]);
    return sign * (values[lo] + slope * (u - breakpoints[lo]));
}

double PwlPeriodic::eval(double t) const {
    check_arg_range(t);
    double p = to_double(period);
    double shifts = std::floor(t / p);
    double u = t - shifts * p;
    if (u >= p) { u -= p; shifts += 1.0; }
    double sign = 1.0;
    if (antiperiodic && std::fmod(std::fabs(shifts), 2.0) == 1.0) sign = -1.0;
    // locate segment
    size_t n = breakpoints.size();
    size_t lo = 0;
    for (size_t i = 1; i < n; ++i) {
        double b = to_double(breakpoints[i]);
        if (u < b) { lo = i - 1; break; }
        if (i == n - 1) lo = n - 2;
    }
    double b0 = to_double(breakpoints[lo]), b1 = to_double(breakpoints[lo + 1]);
    double v0 = to_double(values[lo]), v1 = to_double(values[lo + 1]);
    if (u == b0) return sign * v0;
    double s = (v1 - v0) / (b1 - b0);
    return sign * (v0 + s * (u - b0));
}

const PwlPeriodic& family_shape(Family f) {
    static const PwlPeriodic c{Rational(1),
                               {Rational(0), Rational(1, 2), Rational(1)},
                               {Rational(1), Rational(-1), Rational(1)},
                               false};
    static const PwlPeriodic s{Rational(1),
                               {Rational(0), Rational(1, 4), Rational(3, 4), Rational(1)},
                               {Rational(0), Rational(1), Rational(-1), Rational(0)},
                               false};
    static const PwlPeriodic h{Rational(1),
                               {Rational(0), Rational(1, 2), Rational(1)},
                               {Rational(0), Rational(1), Rational(0)},
                               true};
    switch (f) {
        case Family::C_saw: return c;
        case Family::S_saw: return s;
        case Family::Hat: return h;
    }
    throw std::logic_error("family_shape: bad family");
}

// --- Dilation ----------------------------------------------------------------

double Dilation::eval(double t) const { return eval_dilated(family, k, t); }

Rational Dilation::eval_exact(const Rational& t) const {
    return eval_dilated_exact(family, k, t);
}

std::vector<Rational> Dilation::kinks_unit() const {
    if (k < 1) throw std::invalid_argument("Dilation: k must be >= 1");
    std::vector<Rational> out;
    switch (family) {
        case Family::C_saw: // kinks of C(kt) at m/(2k), all m
            out.reserve(static_cast<size_t>(2 * k + 1));
            for (long long m = 0; m <= 2 * k; ++m) out.emplace_back(m, 2 * k);
            break;
        case Family::S_saw: // kinks at (m +- 1/4)/k; integers are smooth points
            out.emplace_back(0);
            for (long long m = 0; m < k; ++m) {
                out.emplace_back(4 * m + 1, 4 * k);
                out.emplace_back(4 * m + 3, 4 * k);
            }
            out.emplace_back(1);
            break;
        case Family::Hat: // kinks of Hat(kt) at (2m+1)/(2k); integers are smooth
            out.emplace_back(0);
            for (long long m = 0; m < k; ++m) out.emplace_back(2 * m + 1, 2 * k);
            out.emplace_back(1);
            break;
    }
    return out;
}

std::vector<double> Dilation::kinks_unit_d() const {
    std::vector<Rational> r = kinks_unit();
    std::vector<double> out;
    out.reserve(r.size());
    for (const Rational& q : r) out.push_back(to_double(q));
    return out;
}

// --- evaluation -------------------------------------------------------------

double eval_base(Family f, double t) {
    check_arg_range(t);
    double fl = std::floor(t);
    double u = t - fl;
    switch (f) {
        case Family::C_saw: return c_unit(u);
        case Family::S_saw: return s_unit(u);
        case Family::Hat: {
            double v = hat_unit(u);
            return std::fmod(std::fabs(fl), 2.0) == 1.0 ? -v : v;
        }
    }
    throw std::logic_error("eval_base: bad family");
}

Rational eval_base_exact(Family f, const Rational& t) {
    BigInt fl = rational_floor(t);
    Rational u = t - Rational(fl);
    switch (f) {
        case Family::C_saw: return c_unit_exact(u);
        case Family::S_saw: return s_unit_exact(u);
        case Family::Hat: {
            Rational v = hat_unit_exact(u);
            bool odd = boost::multiprecision::bit_test(BigInt(boost::multiprecision::abs(fl)), 0);
            return odd ? -v : v;
        }
    }
    throw std::logic_error("eval_base_exact: bad family");
}

double eval_dilated(Family f, long long k, double t) {
    if (k < 1) throw std::invalid_argument("eval_dilated: k must be >= 1");
    return eval_base(f, static_cast<double>(k) * t);
}

Rational eval_dilated_exact(Family f, long long k, const Rational& t) {
    if (k < 1) throw std::invalid_argument("eval_dilated_exact: k must be >= 1");
    return eval_base_exact(f, Rational(k) * t);
}

double eval_tensor(Family f, const MultiIndex& m, std::span<const double> x) {
    if (m.dim() != static_cast<int>(x.size()))
        throw std::invalid_argument("eval_tensor: dimension mismatch");
    double p = 1.0;
    for (size_t i = 0; i < x.size(); ++i) p *= eval_dilated(f, m.entries[i], x[i]);
    return p;
}

double eval_ridge(Family f, const FreqIndex& k, std::span<const double> x) {
    if (f == Family::Hat) throw std::invalid_argument("eval_ridge: family must be C_saw or S_saw");
    if (k.dim() != static_cast<int>(x.size()))
        throw std::invalid_argument("eval_ridge: dimension mismatch");
    if (std::all_of(k.entries.begin(), k.entries.end(), [](long long v) { return v == 0; }))
        throw std::invalid_argument("eval_ridge: zero frequency vector");
    double dot = 0.0;
    for (size_t i = 0; i < x.size(); ++i) dot += static_cast<double>(k.entries[i]) * x[i];
    return eval_base(f, dot);
}

Rational eval_ridge_exact(Family f, const FreqIndex& k, std::span<const Rational> x) {
    if (f == Family::Hat) throw std::invalid_argument("eval_ridge_exact: family must be C_saw or S_saw");
    if (k.dim() != static_cast<int>(x.size()))
        throw std::invalid_argument("eval_ridge_exact: dimension mismatch");
    Rational dot = 0;
    for (size_t i = 0; i < x.size(); ++i) dot += Rational(k.entries[i]) * x[i];
    return eval_base_exact(f, dot);
}

double eval_trig_e(long long j, double t) {
    if (j < 1) throw std::invalid_argument("eval_trig_e: j must be >= 1");
    return std::numbers::sqrt2 * std::sin(static_cast<double>(j) * std::numbers::pi * t);
}

double eval_trig_tensor(const MultiIndex& m, std::span<const double> x) {
    if (m.dim() != static_cast<int>(x.size()))
        throw std::invalid_argument("eval_trig_tensor: dimension mismatch");
    double p = std::pow(2.0, 0.5 * static_cast<double>(x.size()));
    for (size_t i = 0; i < x.size(); ++i)
        p *= std::sin(std::numbers::pi * static_cast<double>(m.entries[i]) * x[i]);
    return p;
}

namespace {
double ridge_dot(const FreqIndex& k, std::span<const double> x) {
    if (k.dim() != static_cast<int>(x.size()))
        throw std::invalid_argument("eval_trig ridge: dimension mismatch");
    double dot = 0.0;
    for (size_t i = 0; i < x.size(); ++i) dot += static_cast<double>(k.entries[i]) * x[i];
    return dot;
}
} // namespace

double eval_trig_cos_ridge(const FreqIndex& k, std::span<const double> x) {
    return std::numbers::sqrt2 * std::cos(2.0 * std::numbers::pi * ridge_dot(k, x));
}

double eval_trig_sin_ridge(const FreqIndex& k, std::span<const double> x) {
    return std::numbers::sqrt2 * std::sin(2.0 * std::numbers::pi * ridge_dot(k, x));
}

// --- interpolation check -----------------------------------------------------

InterpolationReport hat_interpolates_sine(long long j) {
    if (j < 1) throw std::invalid_argument("hat_interpolates_sine: j must be >= 1");
    InterpolationReport rep;
    for (long long m = 0; m <= 2 * j; ++m) {
        Rational node(m, 2 * j);
        Rational hat = eval_dilated_exact(Family::Hat, j, node); // = Hat(m/2)
        // sin(j pi m / (2j)) = sin(pi m / 2) = 0, 1, 0, -1 cyclically.
        int s;
        switch (m % 4) {
            case 0: case 2: s = 0; break;
            case 1: s = 1; break;
            default: s = -1; break;
        }
        ++rep.nodes_checked;
        if (hat != Rational(s)) return rep; // ok stays false
    }
    rep.ok = true;
    return rep;
}

// --- index utilities -----------------------------------------------------------

bool FreqIndex::is_canonical() const {
    for (long long v : entries) {
        if (v > 0) return true;
        if (v < 0) return false;
    }
    return false; // all zero
}

std::pair<FreqIndex, int> canonicalize(std::span<const long long> k) {
    bool all_zero = true;
    int flip = 0; // 0 undecided, +1 keep, -1 negate
    for (long long v : k) {
        if (v != 0) {
            all_zero = false;
            flip = v > 0 ? 1 : -1;
            break;
        }
    }
    if (all_zero) throw std::invalid_argument("canonicalize: zero vector");
    FreqIndex out;
    out.entries.reserve(k.size());
    for (long long v : k) out.entries.push_back(flip * v);
    return {std::move(out), flip};
}

std::vector<MultiIndex> square_order(int n, long long N) {
    if (n < 1 || N < 1) throw std::invalid_argument("square_order: n >= 1 and N >= 1 required");
    std::vector<MultiIndex> out;
    std::vector<long long> idx(static_cast<size_t>(n));

    // enumerate {1..m}^(n-1) lexicographically into idx[0..n-2]
    auto for_each_prefix_lex = [&](long long m, auto&& body) {
        std::vector<long long> p(static_cast<size_t>(n - 1), 1);
        if (n == 1) { body(p); return; }
        while (true) {
            body(p);
            int i = n - 2;
            while (i >= 0 && p[static_cast<size_t>(i)] == m) {
                p[static_cast<size_t>(i)] = 1;
                --i;
            }
            if (i < 0) break;
            ++p[static_cast<size_t>(i)];
        }
    };

    for (long long m = 1; m <= N; ++m) {
        // last coordinate = m
        for_each_prefix_lex(m, [&](const std::vector<long long>& p) {
            MultiIndex mi;
            mi.entries = p;
            mi.entries.push_back(m);
            out.push_back(std::move(mi));
        });
        if (n == 1) continue;
        // max = m, last coordinate < m, reverse lexicographic
        std::vector<MultiIndex> rest;
        for_each_prefix_lex(m, [&](const std::vector<long long>& p) {
            if (std::ranges::max(p) != m) return;
            for (long long last = 1; last < m; ++last) {
                MultiIndex mi;
                mi.entries = p;
                mi.entries.push_back(last);
                rest.push_back(std::move(mi));
            }
        });
        std::sort(rest.begin(), rest.end(),
                  [](const MultiIndex& a, const MultiIndex& b) { return b.entries < a.entries; });
        for (auto& mi : rest) out.push_back(std::move(mi));
    }
    return out;
}

std::vector<std::vector<long long>> pringsheim_rectangles(int n, std::span<const long long> schedule) {
    if (n < 1) throw std::invalid_argument("pringsheim_rectangles: n >= 1 required");
    if (schedule.empty()) throw std::invalid_argument("pringsheim_rectangles: empty schedule");
    for (size_t i = 0; i + 1 < schedule.size(); ++i)
        if (schedule[i] >= schedule[i + 1])
            throw std::invalid_argument("pringsheim_rectangles: schedule must be increasing");
    std::vector<std::vector<long long>> out;
    for (long long s : schedule) {
        if (s < 1) throw std::invalid_argument("pringsheim_rectangles: sides must be >= 1");
        out.emplace_back(static_cast<size_t>(n), s);
    }
    return out;
}

bool pringsheim_admits(std::span<const long long> bound, long long stage) {
    if (bound.empty()) throw std::invalid_argument("pringsheim_admits: empty bound");
    return std::ranges::min(bound) >= stage;
}

std::vector<FreqIndex> canonical_indices(int n, long long bound) {
    if (n < 1 || bound < 0) throw std::invalid_argument("canonical_indices: bad arguments");
    std::vector<FreqIndex> out;
    std::vector<long long> v(static_cast<size_t>(n), -bound);
    if (bound == 0) return out;
    while (true) {
        FreqIndex k{v};
        if (k.is_canonical()) out.push_back(k);
        int i = n - 1;
        while (i >= 0 && v[static_cast<size_t>(i)] == bound) {
            v[static_cast<size_t>(i)] = -bound;
            --i;
        }
        if (i < 0) break;
        ++v[static_cast<size_t>(i)];
    }
    std::sort(out.begin(), out.end(), [](const FreqIndex& a, const FreqIndex& b) {
        long long na = inf_norm(a.entries), nb = inf_norm(b.entries);
        if (na != nb) return na < nb;
        return a.entries < b.entries;
    });
    return out;
}

long long inf_norm(std::span<const long long> v) {
    long long m = 0;
    for (long long e : v) m = std::max(m, e < 0 ? -e : e);
    return m;
}

long long one_norm(std::span<const long long> v) {
    long long s = 0;
    for (long long e : v) s += (e < 0 ? -e : e);
    return s;
}

long long content(std::span<const long long> v) {
    long long g = 0;
    for (long long e : v) g = std::gcd(g, e < 0 ? -e : e);
    return g;
}

} // namespace pwlb
