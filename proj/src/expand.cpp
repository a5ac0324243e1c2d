#include "pwlb/expand.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "pwlb/quadrature.hpp"

namespace pwlb {

namespace {

constexpr double kUnknownTail = std::numeric_limits<double>::quiet_NaN();

// ell2 bound on sum over odd m >= m0 of tau_m^2, via term + integral tail.
double tau_sq_tail(long long m0) {
    if (m0 < 1) m0 = 1;
    double t1 = tau(1);
    double m0d = static_cast<double>(m0);
    return t1 * t1 * (1.0 / (m0d * m0d * m0d * m0d) + 1.0 / (6.0 * m0d * m0d * m0d));
}

} // namespace

// --- built-in input functions ------------------------------------------------------

Func1 func_e(long long j) {
    if (j < 1) throw std::invalid_argument("func_e: j >= 1 required");
    Func1 f;
    f.name = "e:" + std::to_string(j);
    f.f = [j](double t) { return eval_trig_e(j, t); };
    f.max_freq = static_cast<double>(j);
    f.sine_tail_energy = [j](long long N) { return N >= j ? 0.0 : 1.0; };
    return f;
}

Func1 func_hat(long long j) {
    if (j < 1) throw std::invalid_argument("func_hat: j >= 1 required");
    Func1 f;
    f.name = "hat:" + std::to_string(j);
    Dilation d{Family::Hat, j};
    f.f = [d](double t) { return d.eval(t); };
    f.pwl = d;
    auto kk = d.kinks_unit_d();
    f.kinks.assign(kk.begin() + 1, kk.end() - 1);
    f.max_freq = static_cast<double>(j);
    f.sine_tail_energy = [j](long long N) {
        long long m0 = N / j + 1;
        if (m0 % 2 == 0) ++m0; // first odd multiplier beyond the cutoff
        return std::sqrt(tau_sq_tail(m0));
    };
    return f;
}

Func1 func_saw(Family fam, long long k) {
    if (fam == Family::Hat) return func_hat(k);
    if (k < 1) throw std::invalid_argument("func_saw: k >= 1 required");
    Func1 f;
    f.name = (fam == Family::C_saw ? "saw-c:" : "saw-s:") + std::to_string(k);
    Dilation d{fam, k};
    f.f = [d](double t) { return d.eval(t); };
    f.pwl = d;
    auto kk = d.kinks_unit_d();
    f.kinks.assign(kk.begin() + 1, kk.end() - 1);
    f.max_freq = 2.0 * static_cast<double>(k);
    return f;
}

Func1 func_square() {
    Func1 f;
    f.name = "square";
    f.f = [](double) { return 1.0; };
    f.max_freq = 1.0;
    f.sine_tail_energy = [](long long N) {
        // alpha_k = 2 sqrt2/(k pi) on odd k; sum_{odd k > N} k^-2 <= 1/(2N)
        return std::sqrt(8.0 / (std::numbers::pi * std::numbers::pi) * 0.5 /
                         static_cast<double>(N));
    };
    return f;
}

Func1 func_poly_t1mt() {
    Func1 f;
    f.name = "poly";
    f.f = [](double t) { return t * (1.0 - t); };
    f.max_freq = 1.0;
    f.sine_tail_energy = [](long long N) {
        // alpha_k = 4 sqrt2/(k^3 pi^3) on odd k; sum_{odd k > N} k^-6 <= 1/(10 N^5)
        double N5 = std::pow(static_cast<double>(N), 5.0);
        return std::sqrt(32.0 / std::pow(std::numbers::pi, 6.0) / (10.0 * N5));
    };
    return f;
}

FuncN func_ridge(Family fam, std::span<const long long> k, double coeff) {
    if (fam == Family::Hat) throw std::invalid_argument("func_ridge: family must be C_saw or S_saw");
    auto [ck, sign] = canonicalize(k);
    if (fam == Family::S_saw) coeff *= sign; // S(-u) = -S(u); C is even
    FuncN f;
    f.dim = ck.dim();
    f.name = (fam == Family::C_saw ? "ridge-c:" : "ridge-s:");
    for (int i = 0; i < ck.dim(); ++i)
        f.name += (i ? "," : "") + std::to_string(ck.entries[static_cast<size_t>(i)]);
    RidgeTerm term{fam, ck, coeff};
    f.terms.push_back(term);
    f.structured = true;
    f.f = [term](std::span<const double> x) {
        return term.coeff * eval_ridge(term.fam, term.k, x);
    };
    return f;
}

FuncN func_const_n(int n, double c) {
    FuncN f;
    f.dim = n;
    f.name = "const:" + std::to_string(c);
    f.constant = c;
    f.structured = true;
    f.f = [c](std::span<const double>) { return c; };
    return f;
}

FuncN func_sum(const FuncN& a, const FuncN& b) {
    if (a.dim != b.dim) throw std::invalid_argument("func_sum: dimension mismatch");
    FuncN f;
    f.dim = a.dim;
    f.name = a.name + "+" + b.name;
    f.constant = a.constant + b.constant;
    f.terms = a.terms;
    f.terms.insert(f.terms.end(), b.terms.begin(), b.terms.end());
    f.structured = a.structured && b.structured;
    auto fa = a.f, fb = b.f;
    f.f = [fa, fb](std::span<const double> x) { return fa(x) + fb(x); };
    f.axis_kinks = a.axis_kinks;
    f.axis_kinks.resize(std::max(a.axis_kinks.size(), b.axis_kinks.size()));
    for (size_t i = 0; i < b.axis_kinks.size(); ++i)
        f.axis_kinks[i].insert(f.axis_kinks[i].end(), b.axis_kinks[i].begin(), b.axis_kinks[i].end());
    return f;
}

// --- basis tags -----------------------------------------------------------------------

std::string basis_tag_name(BasisTag b) {
    switch (b) {
        case BasisTag::sine: return "sine";
        case BasisTag::tensor_sine: return "tensor_sine";
        case BasisTag::trig_ridge: return "trig_ridge";
        case BasisTag::hat: return "hat";
        case BasisTag::tensor_hat: return "tensor_hat";
        case BasisTag::cs_ridge: return "cs_ridge";
    }
    return "?";
}

BasisTag basis_tag_from_name(const std::string& s) {
    if (s == "sine") return BasisTag::sine;
    if (s == "tensor_sine") return BasisTag::tensor_sine;
    if (s == "trig_ridge") return BasisTag::trig_ridge;
    if (s == "hat") return BasisTag::hat;
    if (s == "tensor_hat") return BasisTag::tensor_hat;
    if (s == "cs_ridge") return BasisTag::cs_ridge;
    throw std::invalid_argument("unknown basis tag: " + s);
}

// --- serialization ---------------------------------------------------------------------

namespace {

nlohmann::json entries_to_json(const CoeffSeq& c) {
    auto entries = nlohmann::json::array();
    for (const auto& [k, v] : c.entries) {
        auto row = nlohmann::json::array();
        for (long long ki : k) row.push_back(ki);
        row.push_back(v);
        entries.push_back(std::move(row));
    }
    return entries;
}

void entries_from_json(const nlohmann::json& j, int dim, CoeffSeq& c) {
    c.dim = dim;
    for (const auto& row : j) {
        if (static_cast<int>(row.size()) != dim + 1)
            throw std::invalid_argument("expansion_from_json: entry arity mismatch");
        std::vector<long long> k;
        for (int i = 0; i < dim; ++i) k.push_back(row[static_cast<size_t>(i)].get<long long>());
        c.entries[std::move(k)] = row[static_cast<size_t>(dim)].get<double>();
    }
}

} // namespace

std::string expansion_to_json(const Expansion& e) {
    nlohmann::json j;
    j["basis"] = basis_tag_name(e.basis);
    j["dim"] = e.dim;
    bool ridge = e.basis == BasisTag::trig_ridge || e.basis == BasisTag::cs_ridge;
    if (ridge) {
        j["bound"] = e.cutoff;
        j["constant"] = e.constant;
        const char* even_name = e.basis == BasisTag::trig_ridge ? "cos_entries" : "C_entries";
        const char* odd_name = e.basis == BasisTag::trig_ridge ? "sin_entries" : "S_entries";
        j[even_name] = entries_to_json(e.even_part);
        j[odd_name] = entries_to_json(e.odd_part);
        j["tail_bound"] = e.even_part.tail_bound; // NaN serializes as null
    } else {
        j["cutoff"] = e.cutoff;
        j["entries"] = entries_to_json(e.coeffs);
        j["tail_bound"] = e.coeffs.tail_bound;
    }
    return j.dump(2);
}

Expansion expansion_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Expansion e;
    e.basis = basis_tag_from_name(j.at("basis").get<std::string>());
    e.dim = j.at("dim").get<int>();
    double tail = j.contains("tail_bound") && !j.at("tail_bound").is_null()
                      ? j.at("tail_bound").get<double>()
                      : kUnknownTail;
    if (e.basis == BasisTag::trig_ridge || e.basis == BasisTag::cs_ridge) {
        e.cutoff = j.at("bound").get<long long>();
        e.constant = j.at("constant").get<double>();
        const char* even_name = e.basis == BasisTag::trig_ridge ? "cos_entries" : "C_entries";
        const char* odd_name = e.basis == BasisTag::trig_ridge ? "sin_entries" : "S_entries";
        entries_from_json(j.at(even_name), e.dim, e.even_part);
        entries_from_json(j.at(odd_name), e.dim, e.odd_part);
        e.even_part.cutoff = e.odd_part.cutoff = e.cutoff;
        e.even_part.tail_bound = e.odd_part.tail_bound = tail;
    } else {
        e.cutoff = j.at("cutoff").get<long long>();
        entries_from_json(j.at("entries"), e.dim, e.coeffs);
        e.coeffs.cutoff = e.cutoff;
        e.coeffs.tail_bound = tail;
    }
    return e;
}

// --- coefficient extraction ---------------------------------------------------------

Expansion sine_coeffs(const Func1& f, long long N) {
    if (N < 1) throw std::invalid_argument("sine_coeffs: N >= 1 required");
    Expansion e;
    e.basis = BasisTag::sine;
    e.dim = 1;
    e.cutoff = N;
    e.coeffs.dim = 1;
    e.coeffs.cutoff = N;
    for (long long k = 1; k <= N; ++k) {
        double a;
        if (f.pwl) {
            a = std::numbers::sqrt2 * integrate_pwl_trig(*f.pwl, k, TrigFactor::sin_jpi);
        } else {
            int panels = static_cast<int>(std::max<long long>(
                16, 2 * std::max<long long>(k, static_cast<long long>(f.max_freq)) ));
            a = gl_integrate(
                [&](double t) { return f.f(t) * eval_trig_e(k, t); }, f.kinks, panels);
        }
        e.coeffs.set1(k, a);
    }
    e.coeffs.tail_bound = f.sine_tail_energy ? f.sine_tail_energy(N) : kUnknownTail;
    return e;
}

Expansion to_hat_coeffs(const Expansion& se) {
    if (se.basis != BasisTag::sine || se.dim != 1)
        throw std::invalid_argument("to_hat_coeffs: dimension-1 sine expansion required");
    long long N = se.cutoff;
    CoeffSeq tinv = dirichlet_inverse(tau_seq(N), N);
    Expansion e;
    e.basis = BasisTag::hat;
    e.dim = 1;
    e.cutoff = N;
    e.coeffs = dirichlet_convolve(tinv, se.coeffs, N);
    e.coeffs.tail_bound = kUnknownTail;
    return e;
}

Expansion tensor_sine_coeffs(std::span<const Func1> factors, long long N) {
    int n = static_cast<int>(factors.size());
    if (n < 1) throw std::invalid_argument("tensor_sine_coeffs: at least one factor required");
    std::vector<Expansion> per_axis;
    per_axis.reserve(factors.size());
    for (const Func1& f : factors) per_axis.push_back(sine_coeffs(f, N));

    Expansion e;
    e.basis = BasisTag::tensor_sine;
    e.dim = n;
    e.cutoff = N;
    e.coeffs.dim = n;
    e.coeffs.cutoff = N;
    std::vector<long long> m(static_cast<size_t>(n), 1);
    while (true) {
        double v = 1.0;
        for (int i = 0; i < n; ++i) v *= per_axis[static_cast<size_t>(i)].coeffs.at1(m[static_cast<size_t>(i)]);
        if (v != 0.0) e.coeffs.entries[m] = v;
        int i = n - 1;
        while (i >= 0 && m[static_cast<size_t>(i)] == N) { m[static_cast<size_t>(i)] = 1; --i; }
        if (i < 0) break;
        ++m[static_cast<size_t>(i)];
    }
    e.coeffs.tail_bound = kUnknownTail;
    return e;
}

Expansion tensor_hat_coeffs(const Expansion& te) {
    if (te.basis != BasisTag::tensor_sine)
        throw std::invalid_argument("tensor_hat_coeffs: tensor_sine expansion required");
    long long N = te.cutoff;
    int n = te.dim;
    CoeffSeq tinv = dirichlet_inverse(tau_seq(N), N);

    // sequential per-axis Dirichlet convolution with tau^{-1}
    std::map<std::vector<long long>, double> cur = te.coeffs.entries;
    for (int ax = 0; ax < n; ++ax) {
        std::map<std::vector<long long>, double> next;
        for (const auto& [k, v] : cur) {
            if (v == 0.0) continue;
            for (const auto& [dk, dv] : tinv.entries) {
                long long d = dk[0];
                if (d > N / k[static_cast<size_t>(ax)]) break; // map is ordered by d
                std::vector<long long> out = k;
                out[static_cast<size_t>(ax)] *= d;
                next[std::move(out)] += dv * v;
            }
        }
        cur = std::move(next);
    }
    Expansion e;
    e.basis = BasisTag::tensor_hat;
    e.dim = n;
    e.cutoff = N;
    e.coeffs.dim = n;
    e.coeffs.cutoff = N;
    for (auto& [k, v] : cur)
        if (v != 0.0) e.coeffs.entries[k] = v;
    e.coeffs.tail_bound = kUnknownTail;
    return e;
}

namespace {

// root of the ray through l: l divided by the largest odd divisor of its content
std::vector<long long> ray_root(const std::vector<long long>& l, long long& multiplier) {
    long long g = content(l);
    long long u = odd_part(g);
    multiplier = u;
    std::vector<long long> r(l.size());
    for (size_t i = 0; i < l.size(); ++i) r[i] = l[i] / u;
    return r;
}

} // namespace

Expansion trig_ridge_coeffs(const FuncN& f, int n, long long bound) {
    if (n < 1 || bound < 1)
        throw std::invalid_argument("trig_ridge_coeffs: n >= 1 and bound >= 1 required");
    if (f.dim != n) throw std::invalid_argument("trig_ridge_coeffs: dimension mismatch");
    Expansion e;
    e.basis = BasisTag::trig_ridge;
    e.dim = n;
    e.cutoff = bound;
    e.even_part.dim = e.odd_part.dim = n;
    e.even_part.cutoff = e.odd_part.cutoff = bound;
    e.even_part.tail_bound = e.odd_part.tail_bound = kUnknownTail;

    auto indices = canonical_indices(n, bound);
    if (f.structured) {
        e.constant = f.constant;
        for (const FreqIndex& l : indices) {
            long long b = content(l.entries);
            double ce = 0.0, se = 0.0;
            for (const RidgeTerm& term : f.terms) {
                long long a = content(term.k.entries);
                bool parallel = true;
                for (int i = 0; i < n && parallel; ++i)
                    parallel = term.k.entries[static_cast<size_t>(i)] * b ==
                               l.entries[static_cast<size_t>(i)] * a;
                if (!parallel) continue;
                Dilation prof{term.fam, a};
                ce += term.coeff * std::numbers::sqrt2 *
                      integrate_pwl_trig(prof, b, TrigFactor::cos_2pik);
                se += term.coeff * std::numbers::sqrt2 *
                      integrate_pwl_trig(prof, b, TrigFactor::sin_2pik);
            }
            if (ce != 0.0) e.even_part.entries[l.entries] = ce;
            if (se != 0.0) e.odd_part.entries[l.entries] = se;
        }
        return e;
    }

    // generic quadrature path
    int panels = static_cast<int>(std::max<long long>(8, 2 * bound));
    e.constant = gl_integrate_multi(f.f, n, f.axis_kinks, panels);
    std::vector<double> xbuf;
    for (const FreqIndex& l : indices) {
        double ce = gl_integrate_multi(
            [&](std::span<const double> x) { return f.f(x) * eval_trig_cos_ridge(l, x); }, n,
            f.axis_kinks, panels);
        double se = gl_integrate_multi(
            [&](std::span<const double> x) { return f.f(x) * eval_trig_sin_ridge(l, x); }, n,
            f.axis_kinks, panels);
        if (ce != 0.0) e.even_part.entries[l.entries] = ce;
        if (se != 0.0) e.odd_part.entries[l.entries] = se;
    }
    return e;
}

Expansion to_CS_coeffs(const Expansion& te) {
    if (te.basis != BasisTag::trig_ridge)
        throw std::invalid_argument("to_CS_coeffs: trig_ridge expansion required");
    Expansion e;
    e.basis = BasisTag::cs_ridge;
    e.dim = te.dim;
    e.cutoff = te.cutoff;
    e.constant = te.constant;
    e.even_part.dim = e.odd_part.dim = te.dim;
    e.even_part.cutoff = e.odd_part.cutoff = te.cutoff;
    e.even_part.tail_bound = e.odd_part.tail_bound = kUnknownTail;

    for (int side = 0; side < 2; ++side) {
        const CoeffSeq& src = side == 0 ? te.even_part : te.odd_part;
        CoeffSeq& dst = side == 0 ? e.even_part : e.odd_part;
        // group coefficients into rays
        std::map<std::vector<long long>, std::map<long long, double>> rays;
        for (const auto& [l, v] : src.entries) {
            long long m = 0;
            auto root = ray_root(l, m);
            rays[std::move(root)][m] = v;
        }
        for (const auto& [root, along] : rays) {
            long long mmax = along.rbegin()->first;
            CoeffSeq alpha, w;
            alpha.dim = w.dim = 1;
            alpha.cutoff = w.cutoff = mmax;
            for (const auto& [m, v] : along) alpha.set1(m, v);
            for (long long d = 1; d <= mmax; d += 2) {
                double t = tau(d);
                w.set1(d, side == 0 ? std::fabs(t) : t);
            }
            CoeffSeq beta = dirichlet_convolve(dirichlet_inverse(w, mmax), alpha, mmax);
            for (const auto& [mk, bv] : beta.entries) {
                if (bv == 0.0) continue;
                std::vector<long long> key(root.size());
                for (size_t i = 0; i < root.size(); ++i) key[i] = root[i] * mk[0];
                dst.entries[std::move(key)] = bv;
            }
        }
    }
    return e;
}

// --- reconstruction --------------------------------------------------------------------

namespace {

double eval_expansion_at(const Expansion& e, std::span<const double> x) {
    switch (e.basis) {
        case BasisTag::sine: {
            double s = 0.0;
            for (const auto& [k, v] : e.coeffs.entries) s += v * eval_trig_e(k[0], x[0]);
            return s;
        }
        case BasisTag::hat: {
            double s = 0.0;
            for (const auto& [k, v] : e.coeffs.entries)
                s += v * eval_dilated(Family::Hat, k[0], x[0]);
            return s;
        }
        case BasisTag::tensor_sine: {
            double s = 0.0;
            for (const auto& [k, v] : e.coeffs.entries) {
                MultiIndex m{k};
                s += v * eval_trig_tensor(m, x);
            }
            return s;
        }
        case BasisTag::tensor_hat: {
            double s = 0.0;
            for (const auto& [k, v] : e.coeffs.entries) {
                MultiIndex m{k};
                s += v * eval_tensor(Family::Hat, m, x);
            }
            return s;
        }
        case BasisTag::trig_ridge: {
            double s = e.constant;
            for (const auto& [k, v] : e.even_part.entries)
                s += v * eval_trig_cos_ridge(FreqIndex{k}, x);
            for (const auto& [k, v] : e.odd_part.entries)
                s += v * eval_trig_sin_ridge(FreqIndex{k}, x);
            return s;
        }
        case BasisTag::cs_ridge: {
            double s = e.constant;
            for (const auto& [k, v] : e.even_part.entries)
                s += v * eval_ridge(Family::C_saw, FreqIndex{k}, x);
            for (const auto& [k, v] : e.odd_part.entries)
                s += v * eval_ridge(Family::S_saw, FreqIndex{k}, x);
            return s;
        }
    }
    throw std::logic_error("eval_expansion_at: bad basis");
}

} // namespace

std::vector<double> reconstruct(const Expansion& e, std::span<const double> points) {
    if (e.dim != 1) throw std::invalid_argument("reconstruct: dimension-1 expansion required");
    std::vector<double> out;
    out.reserve(points.size());
    for (double t : points) out.push_back(eval_expansion_at(e, std::span<const double>(&t, 1)));
    return out;
}

std::vector<double> reconstruct_multi(const Expansion& e,
                                      std::span<const std::vector<double>> points) {
    std::vector<double> out;
    out.reserve(points.size());
    for (const auto& x : points) {
        if (static_cast<int>(x.size()) != e.dim)
            throw std::invalid_argument("reconstruct_multi: dimension mismatch");
        out.push_back(eval_expansion_at(e, x));
    }
    return out;
}

// --- convergence experiments ---------------------------------------------------------

std::vector<ConvRow> convergence_experiment(const Func1& f, BasisTag basis, double q,
                                            std::span<const long long> schedule) {
    if (basis != BasisTag::sine && basis != BasisTag::hat)
        throw std::invalid_argument("convergence_experiment: basis must be sine or hat");
    if (schedule.empty()) throw std::invalid_argument("convergence_experiment: empty schedule");
    long long Nmax = *std::max_element(schedule.begin(), schedule.end());
    Expansion se = sine_coeffs(f, Nmax);
    Expansion he;
    if (basis == BasisTag::hat) he = to_hat_coeffs(se);

    std::vector<ConvRow> rows;
    long long stage = 0;
    for (long long N : schedule) {
        ++stage;
        std::vector<std::pair<long long, double>> part;
        const CoeffSeq& src = basis == BasisTag::sine ? se.coeffs : he.coeffs;
        for (const auto& [k, v] : src.entries)
            if (k[0] <= N && v != 0.0) part.emplace_back(k[0], v);
        auto residual = [&](double t) {
            double s = f.f(t);
            for (const auto& [k, v] : part)
                s -= v * (basis == BasisTag::sine ? eval_trig_e(k, t)
                                                  : eval_dilated(Family::Hat, k, t));
            return s;
        };
        int panels = static_cast<int>(std::max<long long>(
            32, 4 * std::max<long long>(N, static_cast<long long>(f.max_freq))));
        Estimate est = lq_norm(residual, q, f.kinks, panels);
        rows.push_back({stage, N, est.value, est.error});
    }
    return rows;
}

std::vector<ConvRow> convergence_experiment_nd(std::span<const Func1> factors, double q,
                                               std::span<const long long> schedule,
                                               Ordering ordering) {
    int n = static_cast<int>(factors.size());
    if (n < 1) throw std::invalid_argument("convergence_experiment_nd: factors required");
    if (schedule.empty()) throw std::invalid_argument("convergence_experiment_nd: empty schedule");

    long long side_max = 1;
    for (long long s : schedule) {
        long long side = s;
        if (ordering == Ordering::square) {
            side = 1;
            while (std::pow(static_cast<double>(side), n) < static_cast<double>(s)) ++side;
        }
        side_max = std::max(side_max, side);
    }
    Expansion te = tensor_sine_coeffs(factors, side_max);
    std::vector<MultiIndex> order = square_order(n, side_max);

    std::vector<std::vector<double>> hints;
    for (const Func1& f : factors) hints.push_back(f.kinks);

    auto f_eval = [&](std::span<const double> x) {
        double p = 1.0;
        for (int i = 0; i < n; ++i) p *= factors[static_cast<size_t>(i)].f(x[static_cast<size_t>(i)]);
        return p;
    };

    std::vector<ConvRow> rows;
    long long stage = 0;
    for (long long s : schedule) {
        ++stage;
        std::vector<std::pair<MultiIndex, double>> part;
        if (ordering == Ordering::square) {
            long long count = std::min<long long>(s, static_cast<long long>(order.size()));
            for (long long i = 0; i < count; ++i) {
                const MultiIndex& m = order[static_cast<size_t>(i)];
                double v = te.coeffs.at(m.entries);
                if (v != 0.0) part.emplace_back(m, v);
            }
        } else {
            for (const auto& [k, v] : te.coeffs.entries) {
                if (v == 0.0) continue;
                if (inf_norm(k) <= s) part.emplace_back(MultiIndex{k}, v);
            }
        }
        auto residual = [&](std::span<const double> x) {
            double r = f_eval(x);
            for (const auto& [m, v] : part) r -= v * eval_trig_tensor(m, x);
            return r;
        };
        int panels = static_cast<int>(std::max<long long>(8, 2 * side_max));
        Estimate est = lq_norm_multi(residual, q, n, MultiMode::tensor_GL, hints, panels);
        rows.push_back({stage, s, est.value, est.error});
    }
    return rows;
}

void conv_table_to_csv(std::span<const ConvRow> rows, std::ostream& os) {
    os << "stage,cutoff,error,est_quadrature_error\n";
    char buf[96];
    for (const ConvRow& r : rows) {
        std::snprintf(buf, sizeof buf, "%lld,%lld,%.17g,%.17g", r.stage, r.cutoff, r.error,
                      r.est_quadrature_error);
        os << buf << '\n';
    }
}

} // namespace pwlb
