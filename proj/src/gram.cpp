#include "pwlb/gram.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "pwlb/quadrature.hpp"

namespace pwlb {

// --- exact inner products -------------------------------------------------------

Rational ip_CC(long long j, long long k) {
    if (j < 1 || k < 1) throw std::invalid_argument("ip_CC: indices must be >= 1");
    if (v2(j) != v2(k)) return 0;
    BigInt g = std::gcd(j, k);
    BigInt numr = g * g * g * g;
    BigInt denr = 3 * BigInt(j) * j * BigInt(k) * k;
    return Rational(numr, denr);
}

Rational ip_SS(long long j, long long k) {
    if (j < 1 || k < 1) throw std::invalid_argument("ip_SS: indices must be >= 1");
    if (v2(j) != v2(k)) return 0;
    Rational mag = ip_CC(j, k);
    long long g = std::gcd(j, k);
    long long s = (j + k) / (2 * g); // integer whenever v2(j) = v2(k)
    return s % 2 == 0 ? -mag : mag;
}

Rational ip_CS(long long j, long long k) {
    if (j < 1 || k < 1) throw std::invalid_argument("ip_CS: indices must be >= 1");
    return 0;
}

Rational ridge_ip(Family f1, const FreqIndex& k, Family f2, const FreqIndex& l) {
    if (f1 == Family::Hat || f2 == Family::Hat)
        throw std::invalid_argument("ridge_ip: families must be C_saw or S_saw");
    if (k.dim() != l.dim()) throw std::invalid_argument("ridge_ip: dimension mismatch");
    if (!k.is_canonical() || !l.is_canonical())
        throw std::invalid_argument("ridge_ip: indices must be canonical");
    if (f1 != f2) return 0; // <C,S> vanishes on every ray
    long long a = content(k.entries), b = content(l.entries);
    // parallel iff the primitive vectors coincide (both canonical)
    for (int i = 0; i < k.dim(); ++i)
        if (k.entries[static_cast<size_t>(i)] * b != l.entries[static_cast<size_t>(i)] * a)
            return 0;
    return f1 == Family::C_saw ? ip_CC(a, b) : ip_SS(a, b);
}

// --- Gram assembly ----------------------------------------------------------------

namespace {

Rational normalized_entry(const BasisLabel& a, const BasisLabel& b) {
    if (a.kind == ElemKind::Constant || b.kind == ElemKind::Constant)
        return a.kind == b.kind ? Rational(1) : Rational(0);
    if (a.kind == ElemKind::Hat_elem || b.kind == ElemKind::Hat_elem) {
        if (a.kind != b.kind) throw std::logic_error("gram: mixed hat/saw systems");
        Dilation da{Family::Hat, a.index[0]}, db{Family::Hat, b.index[0]};
        return 3 * integrate_pwl_product(da, db);
    }
    if (a.index.size() == 1) { // univariate sawtooth elements
        long long j = a.index[0], k = b.index[0];
        if (a.kind == b.kind)
            return 3 * (a.kind == ElemKind::C_elem ? ip_CC(j, k) : ip_SS(j, k));
        return 3 * ip_CS(j, k);
    }
    Family fa = a.kind == ElemKind::C_elem ? Family::C_saw : Family::S_saw;
    Family fb = b.kind == ElemKind::C_elem ? Family::C_saw : Family::S_saw;
    return 3 * ridge_ip(fa, FreqIndex{a.index}, fb, FreqIndex{b.index});
}

std::vector<BasisLabel> system_labels(const GramSpec& spec, std::string& name) {
    std::vector<BasisLabel> labels;
    using Sys = GramSpec::System;
    switch (spec.system) {
        case Sys::R1C:
        case Sys::R1S: {
            if (spec.N < 1) throw std::invalid_argument("gram: N >= 1 required");
            ElemKind kind = spec.system == Sys::R1C ? ElemKind::C_elem : ElemKind::S_elem;
            name = spec.system == Sys::R1C ? "r1c" : "r1s";
            for (long long j = 1; j <= spec.N; ++j) labels.push_back({kind, {j}});
            break;
        }
        case Sys::R1Full: {
            if (spec.N < 1) throw std::invalid_argument("gram: N >= 1 required");
            name = "r1";
            labels.push_back({ElemKind::Constant, {}});
            for (long long j = 1; j <= spec.N; ++j) labels.push_back({ElemKind::C_elem, {j}});
            for (long long j = 1; j <= spec.N; ++j) labels.push_back({ElemKind::S_elem, {j}});
            break;
        }
        case Sys::Rn: {
            if (spec.n < 1 || spec.bound < 1)
                throw std::invalid_argument("gram: n >= 1 and bound >= 1 required");
            name = "rn";
            labels.push_back({ElemKind::Constant, {}});
            auto idx = canonical_indices(spec.n, spec.bound);
            for (const auto& k : idx) labels.push_back({ElemKind::C_elem, k.entries});
            for (const auto& k : idx) labels.push_back({ElemKind::S_elem, k.entries});
            break;
        }
        case Sys::Hat: {
            if (spec.N < 1) throw std::invalid_argument("gram: N >= 1 required");
            name = "hat";
            for (long long j = 1; j <= spec.N; ++j) labels.push_back({ElemKind::Hat_elem, {j}});
            break;
        }
    }
    return labels;
}

} // namespace

GramMatrix gram(const GramSpec& spec, bool exact_mode, int threads) {
    GramMatrix g;
    g.labels = system_labels(spec, g.system_name);
    const size_t n = g.labels.size();
    std::vector<Rational> ex(n * n);

    auto fill_rows = [&](size_t r0, size_t r1) {
        for (size_t i = r0; i < r1; ++i)
            for (size_t j = i; j < n; ++j)
                ex[i * n + j] = normalized_entry(g.labels[i], g.labels[j]);
    };
    int workers = std::max(1, threads);
    if (workers == 1 || n < 64) {
        fill_rows(0, n);
    } else {
        std::vector<std::future<void>> futs;
        size_t chunk = (n + static_cast<size_t>(workers) - 1) / static_cast<size_t>(workers);
        for (size_t r0 = 0; r0 < n; r0 += chunk)
            futs.push_back(std::async(std::launch::async, fill_rows, r0, std::min(n, r0 + chunk)));
        for (auto& f : futs) f.get();
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < i; ++j) ex[i * n + j] = ex[j * n + i];

    g.num.resize(n * n);
    for (size_t i = 0; i < n * n; ++i) g.num[i] = to_double(ex[i]);
    if (exact_mode) g.exact = std::move(ex);
    return g;
}

namespace {

std::string label_kind_name(ElemKind k) {
    switch (k) {
        case ElemKind::Constant: return "const";
        case ElemKind::C_elem: return "C";
        case ElemKind::S_elem: return "S";
        case ElemKind::Hat_elem: return "hat";
    }
    return "?";
}

} // namespace

void gram_to_csv(const GramMatrix& g, std::ostream& os) {
    os << "row,col,value\n";
    char buf[64];
    const size_t n = g.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", g.at(i, j));
            os << i << ',' << j << ',' << buf << '\n';
        }
}

std::string gram_to_exact_json(const GramMatrix& g) {
    if (!g.exact) throw std::invalid_argument("gram_to_exact_json: exact mode required");
    nlohmann::json out;
    out["system"] = g.system_name;
    out["size"] = g.size();
    auto labels = nlohmann::json::array();
    for (const auto& l : g.labels)
        labels.push_back({{"kind", label_kind_name(l.kind)}, {"index", l.index}});
    out["labels"] = std::move(labels);
    auto entries = nlohmann::json::array();
    const size_t n = g.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) {
            const Rational& q = g.exact_at(i, j);
            if (q == 0 && i != j) continue; // sparse upper triangle
            entries.push_back({{"row", i},
                               {"col", j},
                               {"num", num(q).str()},
                               {"den", den(q).str()}});
        }
    out["entries"] = std::move(entries);
    return out.dump(2);
}

// --- block and sign structure ---------------------------------------------------

BlockPartition block_partition(long long N) {
    if (N < 1) throw std::invalid_argument("block_partition: N >= 1 required");
    BlockPartition bp;
    bp.N = N;
    int rmax = 0;
    while ((1LL << (rmax + 1)) <= N) ++rmax;
    bp.blocks.resize(static_cast<size_t>(rmax) + 1);
    for (long long j = 1; j <= N; ++j) bp.blocks[static_cast<size_t>(v2(j))].push_back(j);
    return bp;
}

std::vector<int> sign_diagonal(long long N) {
    if (N < 1) throw std::invalid_argument("sign_diagonal: N >= 1 required");
    std::vector<int> eps(static_cast<size_t>(N) + 1, 0);
    for (long long j = 1; j <= N; ++j)
        eps[static_cast<size_t>(j)] = odd_part(j) % 4 == 1 ? 1 : -1;
    return eps;
}

// --- eigensolver -----------------------------------------------------------------

std::vector<double> eigenvalues_sym(std::vector<double> m, std::size_t n, double tol) {
    if (m.size() != n * n) throw std::invalid_argument("eigenvalues_sym: size mismatch");
    if (n == 0) return {};
    double scale = 0.0;
    for (double v : m) scale = std::max(scale, std::fabs(v));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (std::fabs(m[i * n + j] - m[j * n + i]) > 1e-12 * std::max(1.0, scale))
                throw std::invalid_argument("eigenvalues_sym: matrix not symmetric");

    double frob = 0.0;
    for (double v : m) frob += v * v;
    frob = std::sqrt(frob);
    const double target = tol * std::max(frob, 1e-300);

    auto off_norm = [&] {
        double s = 0.0;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) s += 2.0 * m[i * n + j] * m[i * n + j];
        return std::sqrt(s);
    };

    constexpr int kMaxSweeps = 30;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (off_norm() <= target) break;
        for (size_t p = 0; p < n; ++p)
            for (size_t q = p + 1; q < n; ++q) {
                double apq = m[p * n + q];
                if (apq == 0.0) continue;
                double app = m[p * n + p], aqq = m[q * n + q];
                double theta = (aqq - app) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (size_t i = 0; i < n; ++i) {
                    double aip = m[i * n + p], aiq = m[i * n + q];
                    m[i * n + p] = c * aip - s * aiq;
                    m[i * n + q] = s * aip + c * aiq;
                }
                for (size_t i = 0; i < n; ++i) {
                    double api = m[p * n + i], aqi = m[q * n + i];
                    m[p * n + i] = c * api - s * aqi;
                    m[q * n + i] = s * api + c * aqi;
                }
            }
        if (sweep == kMaxSweeps - 1 && off_norm() > target)
            throw std::runtime_error("eigenvalues_sym: Jacobi did not converge in 30 sweeps");
    }
    std::vector<double> ev(n);
    for (size_t i = 0; i < n; ++i) ev[i] = m[i * n + i];
    std::sort(ev.begin(), ev.end());
    return ev;
}

std::vector<double> gram_eigenvalues(const GramMatrix& g, double tol) {
    const size_t n = g.size();
    // union-find over the nonzero pattern; the Gram matrices here are block
    // diagonal (2-adic blocks / rays) with exact zeros elsewhere
    std::vector<size_t> parent(n);
    std::iota(parent.begin(), parent.end(), size_t{0});
    std::function<size_t(size_t)> find = [&](size_t a) {
        while (parent[a] != a) { parent[a] = parent[parent[a]]; a = parent[a]; }
        return a;
    };
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (g.at(i, j) != 0.0) parent[find(i)] = find(j);

    std::vector<std::vector<size_t>> comps(n);
    for (size_t i = 0; i < n; ++i) comps[find(i)].push_back(i);

    std::vector<double> ev;
    ev.reserve(n);
    for (const auto& comp : comps) {
        if (comp.empty()) continue;
        const size_t m = comp.size();
        std::vector<double> sub(m * m);
        for (size_t a = 0; a < m; ++a)
            for (size_t b = 0; b < m; ++b) sub[a * m + b] = g.at(comp[a], comp[b]);
        auto sub_ev = eigenvalues_sym(std::move(sub), m, tol);
        ev.insert(ev.end(), sub_ev.begin(), sub_ev.end());
    }
    std::sort(ev.begin(), ev.end());
    return ev;
}

// --- theorems under test -----------------------------------------------------------

SpectraReport spectra_coincide(long long N, int threads) {
    SpectraReport rep;
    rep.N = N;
    GramMatrix gc = gram({GramSpec::System::R1C, N}, /*exact=*/N <= 128, threads);
    GramMatrix gs = gram({GramSpec::System::R1S, N}, /*exact=*/N <= 128, threads);
    auto evc = gram_eigenvalues(gc);
    auto evs = gram_eigenvalues(gs);
    for (size_t i = 0; i < evc.size(); ++i)
        rep.max_gap = std::max(rep.max_gap, std::fabs(evc[i] - evs[i]));
    if (N <= 128) {
        rep.exact_checked = true;
        rep.exact_identity = true;
        auto eps = sign_diagonal(N);
        for (long long i = 1; i <= N && rep.exact_identity; ++i)
            for (long long j = 1; j <= N; ++j) {
                Rational lhs = gs.exact_at(static_cast<size_t>(i - 1), static_cast<size_t>(j - 1));
                Rational rhs = Rational(eps[static_cast<size_t>(i)] * eps[static_cast<size_t>(j)]) *
                               gc.exact_at(static_cast<size_t>(i - 1), static_cast<size_t>(j - 1));
                if (lhs != rhs) { rep.exact_identity = false; break; }
            }
    }
    return rep;
}

std::pair<double, double> riesz_bounds(const GramSpec& spec, int threads) {
    GramMatrix g = gram(spec, /*exact=*/false, threads);
    auto ev = gram_eigenvalues(g);
    return {ev.front(), ev.back()};
}

} // namespace pwlb
