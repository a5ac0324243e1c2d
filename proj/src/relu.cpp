#include "pwlb/relu.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace pwlb {

namespace {

constexpr long long kMaxUnivariate = 1LL << 14;
constexpr long long kMaxRidgeL1 = 1LL << 12;

// Shared construction in s = k.x coordinates.  The profile g(s) is the family
// base function; its kinks sit on a quarter-integer grid, enumerated as q/4.
ReluNet compile_core(Family family, std::span<const long long> k) {
    ReluNet net;
    net.input_dim = static_cast<int>(k.size());
    long long s_lo = 0, s_hi = 0;
    for (long long ki : k) (ki < 0 ? s_lo : s_hi) += ki;
    if (s_lo == s_hi) throw std::invalid_argument("compile: zero frequency vector");

    std::vector<double> dir(k.begin(), k.end());
    auto push = [&](double bias_at, double coeff) {
        net.w.push_back(dir);
        net.b.push_back(-bias_at);
        net.c.push_back(coeff);
    };

    double lo = static_cast<double>(s_lo);
    switch (family) {
        case Family::C_saw:
            // g(s) = C(s): slope -4 then +4 on each period, kinks at q/2
            net.c0 = 1.0;
            push(lo, -4.0);
            for (long long q = 2 * s_lo + 1; q < 2 * s_hi; ++q)
                push(static_cast<double>(q) / 2.0, q % 2 == 0 ? -8.0 : 8.0);
            break;
        case Family::S_saw:
            // g(s) = S(s): slope +4, kinks at m+1/4 (jump -8) and m+3/4 (+8)
            net.c0 = 0.0;
            push(lo, 4.0);
            for (long long q = 4 * s_lo + 1; q < 4 * s_hi; q += 2) {
                long long r = ((q % 4) + 4) % 4;
                push(static_cast<double>(q) / 4.0, r == 1 ? -8.0 : 8.0);
            }
            break;
        case Family::Hat: {
            // antiperiodic hat: slope 2(-1)^m on (m, m+1/2), kinks at m+1/2
            net.c0 = 0.0;
            double sign0 = s_lo % 2 == 0 ? 1.0 : -1.0;
            push(lo, 2.0 * sign0);
            for (long long q = 2 * s_lo + 1; q < 2 * s_hi; q += 2) {
                long long m = (q - 1) / 2;
                double sgn = m % 2 == 0 ? 1.0 : -1.0;
                push(static_cast<double>(q) / 2.0, -4.0 * sgn);
            }
            break;
        }
    }
    return net;
}

std::string hexfloat(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%a", v);
    return buf;
}

double parse_hexfloat(const std::string& s) {
    const char* begin = s.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw std::invalid_argument("import_json: malformed hexfloat '" + s + "'");
    return v;
}

double weight_from_json(const nlohmann::json& obj, const char* dec_key, const char* hex_key,
                        size_t idx = SIZE_MAX) {
    double v;
    if (obj.contains(hex_key)) {
        const auto& h = obj.at(hex_key);
        v = idx == SIZE_MAX ? parse_hexfloat(h.get<std::string>())
                            : parse_hexfloat(h.at(idx).get<std::string>());
    } else {
        const auto& d = obj.at(dec_key);
        v = idx == SIZE_MAX ? d.get<double>() : d.at(idx).get<double>();
    }
    if (!std::isfinite(v)) throw std::invalid_argument("import_json: non-finite weight");
    return v;
}

} // namespace

ReluNet compile_univariate(Family family, long long k) {
    if (k < 1 || k > kMaxUnivariate)
        throw std::invalid_argument("compile_univariate: require 1 <= k <= 2^14");
    return compile_core(family, std::span<const long long>(&k, 1));
}

ReluNet compile_ridge(Family family, std::span<const long long> k) {
    if (family == Family::Hat)
        throw std::invalid_argument("compile_ridge: hat family has no ridge system");
    if (k.empty()) throw std::invalid_argument("compile_ridge: empty frequency vector");
    long long l1 = 0;
    for (long long ki : k) l1 += ki < 0 ? -ki : ki;
    if (l1 == 0 || l1 > kMaxRidgeL1)
        throw std::invalid_argument("compile_ridge: require 0 < ||k||_1 <= 2^12");
    return compile_core(family, k);
}

double net_eval(const ReluNet& net, std::span<const double> x) {
    if (static_cast<int>(x.size()) != net.input_dim)
        throw std::invalid_argument("net_eval: dimension mismatch");
    double acc = net.c0;
    for (size_t i = 0; i < net.w.size(); ++i) {
        double s = net.b[i];
        for (size_t j = 0; j < x.size(); ++j) s += net.w[i][j] * x[j];
        if (s > 0.0) acc += net.c[i] * s;
    }
    return acc;
}

Rational net_eval_exact(const ReluNet& net, std::span<const Rational> x) {
    if (static_cast<int>(x.size()) != net.input_dim)
        throw std::invalid_argument("net_eval_exact: dimension mismatch");
    Rational acc(net.c0);
    for (size_t i = 0; i < net.w.size(); ++i) {
        Rational s(net.b[i]);
        for (size_t j = 0; j < x.size(); ++j) s += Rational(net.w[i][j]) * x[j];
        if (s > 0) acc += Rational(net.c[i]) * s;
    }
    return acc;
}

long long linear_region_count(const ReluNet& net) {
    if (net.w.empty()) return 1;
    const std::vector<double>& dir = net.w.front();
    for (const auto& wi : net.w)
        if (wi != dir) throw std::invalid_argument("linear_region_count: mixed directions");
    double s_lo = 0.0, s_hi = 0.0;
    for (double d : dir) (d < 0.0 ? s_lo : s_hi) += d;
    long long interior = 0;
    for (double bi : net.b) {
        double t = -bi;
        if (t > s_lo && t < s_hi) ++interior;
    }
    return interior + 1;
}

std::string export_json(const ReluNet& net) {
    nlohmann::json j;
    j["input_dim"] = net.input_dim;
    auto hidden = nlohmann::json::array();
    for (size_t i = 0; i < net.w.size(); ++i) {
        nlohmann::json unit;
        unit["w"] = net.w[i];
        auto wh = nlohmann::json::array();
        for (double v : net.w[i]) wh.push_back(hexfloat(v));
        unit["w_hex"] = std::move(wh);
        unit["b"] = net.b[i];
        unit["b_hex"] = hexfloat(net.b[i]);
        hidden.push_back(std::move(unit));
    }
    j["hidden"] = std::move(hidden);
    nlohmann::json out;
    out["c"] = net.c;
    auto ch = nlohmann::json::array();
    for (double v : net.c) ch.push_back(hexfloat(v));
    out["c_hex"] = std::move(ch);
    out["c0"] = net.c0;
    j["output"] = std::move(out);
    return j.dump(2);
}

ReluNet import_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& ex) {
        throw std::invalid_argument(std::string("import_json: parse error: ") + ex.what());
    }
    ReluNet net;
    try {
        net.input_dim = j.at("input_dim").get<int>();
        if (net.input_dim < 1) throw std::invalid_argument("import_json: input_dim < 1");
        for (const auto& unit : j.at("hidden")) {
            size_t nw = unit.at("w").size();
            if (static_cast<int>(nw) != net.input_dim)
                throw std::invalid_argument("import_json: weight arity mismatch");
            std::vector<double> wi(nw);
            for (size_t i = 0; i < nw; ++i) wi[i] = weight_from_json(unit, "w", "w_hex", i);
            net.w.push_back(std::move(wi));
            net.b.push_back(weight_from_json(unit, "b", "b_hex"));
        }
        const auto& out = j.at("output");
        size_t nc = out.at("c").size();
        if (nc != net.w.size())
            throw std::invalid_argument("import_json: output size mismatch");
        for (size_t i = 0; i < nc; ++i) net.c.push_back(weight_from_json(out, "c", "c_hex", i));
        net.c0 = out.at("c0").get<double>();
        if (!std::isfinite(net.c0)) throw std::invalid_argument("import_json: non-finite weight");
    } catch (const nlohmann::json::exception& ex) {
        throw std::invalid_argument(std::string("import_json: malformed net: ") + ex.what());
    }
    return net;
}

} // namespace pwlb
