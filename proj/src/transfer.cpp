#include "pwlb/transfer.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace pwlb {

namespace {
const double kTau1 = 4.0 * std::numbers::sqrt2 / (std::numbers::pi * std::numbers::pi);
const double kPi2Over8 = std::numbers::pi * std::numbers::pi / 8.0;
} // namespace

double tau(long long k) {
    if (k < 1) throw std::invalid_argument("tau: k >= 1 required");
    if (k % 2 == 0) return 0.0;
    double v = kTau1 / (static_cast<double>(k) * static_cast<double>(k));
    return ((k - 1) / 2) % 2 == 0 ? v : -v;
}

double tau_multi(const MultiIndex& m) {
    double p = 1.0;
    for (long long mi : m.entries) {
        if (mi % 2 == 0) return 0.0;
        p *= tau(mi);
    }
    return p;
}

double gamma_coeff(long long m, GammaKind kind) {
    if (m < 0) throw std::invalid_argument("gamma_coeff: m >= 0 required");
    double d = static_cast<double>(2 * m + 1);
    double v = 8.0 / (std::numbers::pi * std::numbers::pi * d * d);
    if (kind == GammaKind::sin_part && m % 2 == 1) v = -v;
    return v;
}

double tau_tail_bound(long long M) {
    if (M < 1) throw std::invalid_argument("tau_tail_bound: M >= 1 required");
    return kTau1 / (2.0 * static_cast<double>(M));
}

CoeffSeq tau_seq(long long M) {
    CoeffSeq c;
    c.dim = 1;
    c.cutoff = M;
    c.tail_bound = tau_tail_bound(M);
    for (long long k = 1; k <= M; k += 2) c.set1(k, tau(k));
    return c;
}

CoeffSeq dirichlet_convolve(const CoeffSeq& a, const CoeffSeq& b, long long N) {
    if (a.dim != 1 || b.dim != 1)
        throw std::invalid_argument("dirichlet_convolve: dimension-1 sequences required");
    if (N < 1) throw std::invalid_argument("dirichlet_convolve: N >= 1 required");
    std::vector<double> out(static_cast<size_t>(N) + 1, 0.0);
    for (const auto& [dk, dv] : a.entries) {
        long long d = dk[0];
        if (d < 1 || d > N || dv == 0.0) continue;
        for (const auto& [mk, mv] : b.entries) {
            long long m = mk[0];
            if (m < 1 || d > N / m) continue;
            out[static_cast<size_t>(d * m)] += dv * mv;
        }
    }
    CoeffSeq r;
    r.dim = 1;
    r.cutoff = N;
    r.tail_bound = 0.0;
    for (long long k = 1; k <= N; ++k) r.set1(k, out[static_cast<size_t>(k)]);
    return r;
}

CoeffSeq dirichlet_inverse(const CoeffSeq& a, long long N) {
    if (a.dim != 1) throw std::invalid_argument("dirichlet_inverse: dimension-1 sequence required");
    if (N < 1) throw std::invalid_argument("dirichlet_inverse: N >= 1 required");
    double a1 = a.at1(1);
    if (a1 == 0.0) throw std::invalid_argument("dirichlet_inverse: a_1 = 0 is singular");
    std::vector<double> inv(static_cast<size_t>(N) + 1, 0.0);
    inv[1] = 1.0 / a1;
    for (long long k = 2; k <= N; ++k) {
        double s = 0.0;
        for (long long d = 2; d * d <= k; ++d) {
            if (k % d != 0) continue;
            s += a.at1(d) * inv[static_cast<size_t>(k / d)];
            long long e = k / d;
            if (e != d) s += a.at1(e) * inv[static_cast<size_t>(d)];
        }
        s += a.at1(k) * inv[1];
        inv[static_cast<size_t>(k)] = -s / a1;
    }
    CoeffSeq r;
    r.dim = 1;
    r.cutoff = N;
    r.tail_bound = 0.0;
    for (long long k = 1; k <= N; ++k) r.set1(k, inv[static_cast<size_t>(k)]);
    return r;
}

std::string coeffseq_to_json(const CoeffSeq& c) {
    nlohmann::json j;
    j["dim"] = c.dim;
    j["cutoff"] = c.cutoff;
    j["tail_bound"] = c.tail_bound;
    auto entries = nlohmann::json::array();
    for (const auto& [k, v] : c.entries) {
        auto row = nlohmann::json::array();
        for (long long ki : k) row.push_back(ki);
        row.push_back(v);
        entries.push_back(std::move(row));
    }
    j["entries"] = std::move(entries);
    return j.dump(2);
}

CoeffSeq coeffseq_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    CoeffSeq c;
    c.dim = j.at("dim").get<int>();
    c.cutoff = j.at("cutoff").get<long long>();
    c.tail_bound = j.at("tail_bound").is_null() ? std::numeric_limits<double>::quiet_NaN()
                                                : j.at("tail_bound").get<double>();
    for (const auto& row : j.at("entries")) {
        if (static_cast<int>(row.size()) != c.dim + 1)
            throw std::invalid_argument("coeffseq_from_json: entry arity mismatch");
        std::vector<long long> k;
        for (int i = 0; i < c.dim; ++i) k.push_back(row[static_cast<size_t>(i)].get<long long>());
        c.entries[std::move(k)] = row[static_cast<size_t>(c.dim)].get<double>();
    }
    return c;
}

// --- transfer operators ----------------------------------------------------------

TruncatedValue apply_T(const OperatorSpec& spec,
                       const std::function<double(std::span<const double>)>& f,
                       std::span<const double> x, double sup_f) {
    if (spec.M < 1) throw std::invalid_argument("apply_T: M >= 1 required");
    TruncatedValue out;
    switch (spec.kind) {
        case OperatorSpec::Kind::T_hat_1d: {
            if (x.size() != 1) throw std::invalid_argument("apply_T: T_hat_1d needs 1-D input");
            double t = x[0];
            long double acc = 0.0L;
            for (long long m = 1; m <= spec.M; m += 2) {
                double arg = static_cast<double>(m) * t;
                acc += tau(m) * f(std::span<const double>(&arg, 1));
            }
            out.value = static_cast<double>(acc);
            out.error_bound = tau_tail_bound(spec.M) * sup_f;
            return out;
        }
        case OperatorSpec::Kind::T_tensor: {
            int n = spec.n;
            if (static_cast<int>(x.size()) != n)
                throw std::invalid_argument("apply_T: dimension mismatch");
            std::vector<long long> m(static_cast<size_t>(n), 1);
            std::vector<double> arg(static_cast<size_t>(n));
            long double acc = 0.0L;
            while (true) {
                double tm = 1.0;
                for (int i = 0; i < n; ++i) tm *= tau(m[static_cast<size_t>(i)]);
                for (int i = 0; i < n; ++i)
                    arg[static_cast<size_t>(i)] = static_cast<double>(m[static_cast<size_t>(i)]) * x[static_cast<size_t>(i)];
                acc += tm * f(arg);
                int i = n - 1;
                while (i >= 0 && m[static_cast<size_t>(i)] + 2 > spec.M) {
                    m[static_cast<size_t>(i)] = 1;
                    --i;
                }
                if (i < 0) break;
                m[static_cast<size_t>(i)] += 2;
            }
            out.value = static_cast<double>(acc);
            double full = std::pow(1.0 / std::numbers::sqrt2, n);
            double partial = std::pow(1.0 / std::numbers::sqrt2 - tau_tail_bound(spec.M), n);
            out.error_bound = (full - partial) * sup_f;
            return out;
        }
        case OperatorSpec::Kind::T_ridge: {
            int n = spec.n;
            if (static_cast<int>(x.size()) != n)
                throw std::invalid_argument("apply_T: dimension mismatch");
            std::vector<double> arg(static_cast<size_t>(n));
            long double acc = 0.0L;
            double c = 8.0 / (std::numbers::pi * std::numbers::pi);
            for (long long j = 0; j < spec.M; ++j) {
                long long m = 2 * j + 1;
                double md = static_cast<double>(m);
                if (m % 4 == 1)
                    for (int i = 0; i < n; ++i) arg[static_cast<size_t>(i)] = md * x[static_cast<size_t>(i)];
                else
                    for (int i = 0; i < n; ++i) arg[static_cast<size_t>(i)] = md * (1.0 - x[static_cast<size_t>(i)]);
                acc += f(arg) / (md * md);
            }
            out.value = c * static_cast<double>(acc);
            out.error_bound = c / (4.0 * static_cast<double>(spec.M)) * sup_f;
            return out;
        }
    }
    throw std::logic_error("apply_T: bad kind");
}

TruncatedValue apply_T_1d(const OperatorSpec& spec, const std::function<double(double)>& f,
                          double t, double sup_f) {
    auto wrap = [&](std::span<const double> x) { return f(x[0]); };
    return apply_T(spec, wrap, std::span<const double>(&t, 1), sup_f);
}

NormBound operator_norm_bound(const OperatorSpec& spec) {
    switch (spec.kind) {
        case OperatorSpec::Kind::T_hat_1d:
            return {1.0 / std::numbers::sqrt2, kPi2Over8 - 1.0};
        case OperatorSpec::Kind::T_tensor:
            return {std::pow(1.0 / std::numbers::sqrt2, spec.n),
                    std::pow(kPi2Over8, spec.n) - 1.0};
        case OperatorSpec::Kind::T_ridge:
            return {1.0, kPi2Over8 - 1.0};
    }
    throw std::logic_error("operator_norm_bound: bad kind");
}

CriterionResult schauder_criterion(int n) {
    if (n < 1) throw std::invalid_argument("schauder_criterion: n >= 1 required");
    CriterionResult r;
    double tn = std::pow(kTau1, n);
    r.lhs = tn * (std::pow(kPi2Over8, n) - 1.0);
    r.rhs = tn;
    r.holds = r.lhs < r.rhs;
    return r;
}

RieszConstants riesz_constants_via_neumann(RieszKind) {
    // a = sqrt3 tau_1 = (sqrt3/sqrt2)(8/pi^2) = 4 sqrt6 / pi^2 in both kinds
    double a = 4.0 * std::sqrt(6.0) / (std::numbers::pi * std::numbers::pi);
    double A = a * (2.0 - kPi2Over8);
    return {A * A, 1.5};
}

} // namespace pwlb
