// pwlb — command-line front end for the piecewise-linear basis library.
//
// One subcommand per capability; every subcommand supports --json-report for a
// machine-readable run summary.  Exit codes: 0 = all checks passed, 1 = a
// numeric check failed, 2 = usage error.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pwlb/expand.hpp"
#include "pwlb/gram.hpp"
#include "pwlb/pwl_core.hpp"
#include "pwlb/quadrature.hpp"
#include "pwlb/relu.hpp"
#include "pwlb/rng.hpp"
#include "pwlb/transfer.hpp"

using nlohmann::json;
using namespace pwlb;

namespace {

struct RunReport {
    std::string command;
    json parameters = json::object();
    std::vector<std::string> outputs;
    json checks = json::array();
    std::uint64_t seed = 0;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    bool add_check(const std::string& name, double measured, double tolerance) {
        bool pass = measured <= tolerance;
        checks.push_back({{"name", name},
                          {"pass", pass},
                          {"measured", measured},
                          {"tolerance", tolerance}});
        return pass;
    }
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.at("pass").get<bool>()) return false;
        return true;
    }
    json to_json() const {
        double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return {{"schema_version", 1}, {"command", command},   {"parameters", parameters},
                {"outputs", outputs},  {"checks", checks},     {"seed", seed},
                {"wall_time_s", wall}};
    }
};

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void emit(const std::string& path, const std::string& content, RunReport& rep) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    os << content;
    rep.outputs.push_back(path);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<long long> parse_ints(const std::string& s) {
    std::vector<long long> out;
    for (const auto& tok : split(s, ',')) out.push_back(std::stoll(tok));
    return out;
}

// --- function spec grammar --------------------------------------------------------
//
//   1-D:    e:J | hat:J | saw-c:K | saw-s:K | square | poly
//   tensor: SPEC*SPEC[*SPEC]        (product of 1-D factors)
//   ridge:  ridge-c:K1,K2,... | ridge-s:... | const:C, joined with '+'

Func1 parse_func1(const std::string& s) {
    auto parts = split(s, ':');
    const std::string& head = parts[0];
    if (head == "square") return func_square();
    if (head == "poly") return func_poly_t1mt();
    if (parts.size() != 2) throw CLI::ValidationError("--f", "bad function spec: " + s);
    long long arg = std::stoll(parts[1]);
    if (head == "e") return func_e(arg);
    if (head == "hat") return func_hat(arg);
    if (head == "saw-c") return func_saw(Family::C_saw, arg);
    if (head == "saw-s") return func_saw(Family::S_saw, arg);
    throw CLI::ValidationError("--f", "unknown 1-D function: " + s);
}

bool is_ridge_spec(const std::string& s) {
    return s.find("ridge-") != std::string::npos || s.find("const:") != std::string::npos;
}

FuncN parse_funcN(const std::string& s) {
    std::optional<FuncN> acc;
    for (const auto& term : split(s, '+')) {
        FuncN f;
        if (term.rfind("const:", 0) == 0) {
            double c = std::stod(term.substr(6));
            int dim = acc ? acc->dim : 1;
            f = func_const_n(dim, c);
        } else {
            auto parts = split(term, ':');
            if (parts.size() != 2) throw CLI::ValidationError("--f", "bad ridge term: " + term);
            Family fam;
            if (parts[0] == "ridge-c") fam = Family::C_saw;
            else if (parts[0] == "ridge-s") fam = Family::S_saw;
            else throw CLI::ValidationError("--f", "unknown ridge family: " + parts[0]);
            auto k = parse_ints(parts[1]);
            f = func_ridge(fam, k);
        }
        acc = acc ? func_sum(*acc, f) : f;
    }
    if (!acc) throw CLI::ValidationError("--f", "empty function spec");
    return *acc;
}

std::vector<std::vector<double>> grid_points(int n, long long grid) {
    double steps = std::pow(static_cast<double>(grid + 1), n);
    if (steps > 2e6) throw CLI::ValidationError("--grid", "grid too large");
    std::vector<std::vector<double>> pts;
    std::vector<long long> idx(static_cast<size_t>(n), 0);
    while (true) {
        std::vector<double> x(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i)
            x[static_cast<size_t>(i)] =
                static_cast<double>(idx[static_cast<size_t>(i)]) / static_cast<double>(grid);
        pts.push_back(std::move(x));
        int i = n - 1;
        while (i >= 0 && idx[static_cast<size_t>(i)] == grid) { idx[static_cast<size_t>(i)] = 0; --i; }
        if (i < 0) break;
        ++idx[static_cast<size_t>(i)];
    }
    return pts;
}

std::vector<std::vector<double>> parse_points(const std::string& s) {
    std::vector<std::vector<double>> pts;
    for (const auto& p : split(s, ';')) {
        std::vector<double> x;
        for (const auto& c : split(p, ',')) x.push_back(std::stod(c));
        pts.push_back(std::move(x));
    }
    return pts;
}

std::string points_csv(const std::vector<std::vector<double>>& pts,
                       const std::vector<double>& vals) {
    std::ostringstream os;
    size_t n = pts.empty() ? 1 : pts[0].size();
    for (size_t i = 0; i < n; ++i) os << 'x' << i + 1 << ',';
    os << "value\n";
    for (size_t i = 0; i < pts.size(); ++i) {
        for (double c : pts[i]) os << fmt17(c) << ',';
        os << fmt17(vals[i]) << '\n';
    }
    return os.str();
}

GramSpec::System parse_system(const std::string& s) {
    if (s == "r1") return GramSpec::System::R1Full;
    if (s == "r1c") return GramSpec::System::R1C;
    if (s == "r1s") return GramSpec::System::R1S;
    if (s == "rn") return GramSpec::System::Rn;
    if (s == "hat") return GramSpec::System::Hat;
    throw CLI::ValidationError("--system", "unknown system: " + s);
}

// deterministic sample points in [0,1]^n from the counter RNG
std::vector<std::vector<double>> sample_points(int n, long long count, std::uint64_t seed) {
    SplitMix64 rng{seed};
    std::vector<std::vector<double>> pts(static_cast<size_t>(count));
    for (long long i = 0; i < count; ++i) {
        std::vector<double> x(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j)
            x[static_cast<size_t>(j)] =
                rng.uniform(static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(n) +
                            static_cast<std::uint64_t>(j));
        pts[static_cast<size_t>(i)] = std::move(x);
    }
    return pts;
}

int finish(RunReport& rep, const std::string& report_path) {
    if (!report_path.empty()) {
        std::string text = rep.to_json().dump(2) + "\n";
        if (report_path == "-") std::cout << text;
        else {
            std::ofstream os(report_path, std::ios::binary);
            os << text;
        }
    }
    return rep.all_pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"piecewise-linear sawtooth/hat basis toolkit"};
    app.require_subcommand(1);

    // shared flag storage
    std::string out_path, report_path, system_str = "r1", func_spec, basis_str, in_path;
    std::string points_str, schedule_str = "4,16,64,256", ordering_str = "square";
    long long N = 16, M = 10000, bound = 3, grid = -1;
    int n = 1, threads = 1;
    double q = 2.0;
    std::uint64_t seed = 12345;
    bool exact = false, compare = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", out_path, "output file (default: stdout)");
        sub->add_option("--json-report", report_path, "write a RunReport JSON ('-' = stdout)");
        sub->add_option("--seed", seed, "RNG seed for randomized checks");
        sub->add_option("--threads", threads, "worker thread cap");
    };

    auto* c_eval = app.add_subcommand("eval", "evaluate a function on points or a grid");
    c_eval->add_option("--f", func_spec, "function spec")->required();
    c_eval->add_option("--points", points_str, "semicolon-separated points, comma coords");
    c_eval->add_option("--grid", grid, "uniform grid subdivisions per axis");
    add_common(c_eval);

    auto* c_gram = app.add_subcommand("gram", "Gram matrix of a truncated system");
    c_gram->add_option("--system", system_str, "r1 | r1c | r1s | rn | hat");
    c_gram->add_option("--N", N, "univariate cutoff");
    c_gram->add_option("--n", n, "dimension (rn)");
    c_gram->add_option("--bound", bound, "max-norm frequency bound (rn)");
    c_gram->add_flag("--exact", exact, "emit exact rational JSON instead of CSV");
    add_common(c_gram);

    auto* c_spectra = app.add_subcommand("spectra", "compare C- and S-block spectra");
    c_spectra->add_option("--N", N, "cutoff");
    c_spectra->add_flag("--compare", compare, "also verify the exact conjugation identity");
    add_common(c_spectra);

    auto* c_riesz = app.add_subcommand("riesz", "frame bounds of a truncated system");
    c_riesz->add_option("--system", system_str, "r1 | rn");
    c_riesz->add_option("--N", N, "univariate cutoff");
    c_riesz->add_option("--n", n, "dimension (rn)");
    c_riesz->add_option("--bound", bound, "frequency bound (rn)");
    add_common(c_riesz);

    auto* c_tau = app.add_subcommand("tau", "sine coefficients of the hat function");
    c_tau->add_option("--M", M, "index cutoff");
    add_common(c_tau);

    auto* c_tv = app.add_subcommand("transfer-verify",
                                    "apply the transfer operator to trig inputs and compare "
                                    "with sawtooth/hat targets");
    c_tv->add_option("--system", system_str, "hat | rn");
    c_tv->add_option("--N", N, "max univariate frequency (hat)");
    c_tv->add_option("--n", n, "dimension (rn)");
    c_tv->add_option("--bound", bound, "frequency bound (rn)");
    c_tv->add_option("--M", M, "operator truncation");
    c_tv->add_option("--grid", grid, "sample grid size (default 2048 / 4096 points)");
    add_common(c_tv);

    auto* c_expand = app.add_subcommand("expand", "coefficient extraction");
    c_expand->add_option("--f", func_spec, "function spec")->required();
    c_expand->add_option("--basis", basis_str,
                         "sine | hat | tensor_sine | tensor_hat | trig_ridge | cs_ridge")
        ->required();
    c_expand->add_option("--N", N, "cutoff (per axis)");
    c_expand->add_option("--bound", bound, "frequency bound (ridge bases)");
    add_common(c_expand);

    auto* c_rec = app.add_subcommand("reconstruct", "evaluate an expansion file");
    c_rec->add_option("--in", in_path, "expansion JSON produced by `expand`")->required();
    c_rec->add_option("--points", points_str, "semicolon-separated points");
    c_rec->add_option("--grid", grid, "uniform grid subdivisions per axis");
    add_common(c_rec);

    auto* c_conv = app.add_subcommand("convergence", "partial-sum error tables");
    c_conv->add_option("--f", func_spec, "1-D spec, or factor product A*B for n-D")->required();
    c_conv->add_option("--basis", basis_str, "sine | hat (1-D only)");
    c_conv->add_option("--q", q, "Lq exponent (q > 1)");
    c_conv->add_option("--schedule", schedule_str, "comma-separated cutoffs");
    c_conv->add_option("--ordering", ordering_str, "square | pringsheim (n-D)");
    add_common(c_conv);

    auto* c_crit = app.add_subcommand("criterion", "basis-criterion ratio per dimension");
    c_crit->add_option("--n", n, "dimension")->required();
    add_common(c_crit);

    auto* c_relu = app.add_subcommand("relu-export", "compile a basis element to a ReLU net");
    c_relu->add_option("--f", func_spec, "saw-c:K | saw-s:K | hat:K | ridge-c:... | ridge-s:...")
        ->required();
    add_common(c_relu);

    auto* c_plot = app.add_subcommand("plotdata", "sample grid of the first sawtooth elements");
    c_plot->add_option("--N", N, "number of subdivisions (default 512)");
    add_common(c_plot);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    RunReport rep;
    rep.seed = seed;
    rep.command = app.get_subcommands().front()->get_name();

    try {
        if (*c_eval) {
            rep.parameters = {{"f", func_spec}};
            std::vector<std::vector<double>> pts;
            std::vector<double> vals;
            if (is_ridge_spec(func_spec)) {
                FuncN f = parse_funcN(func_spec);
                pts = points_str.empty() ? grid_points(f.dim, grid < 0 ? 16 : grid)
                                         : parse_points(points_str);
                for (const auto& x : pts) {
                    if (static_cast<int>(x.size()) != f.dim)
                        throw CLI::ValidationError("--points", "dimension mismatch");
                    vals.push_back(f.f(x));
                }
            } else if (func_spec.find('*') != std::string::npos) {
                auto factor_specs = split(func_spec, '*');
                std::vector<Func1> factors;
                for (const auto& fs : factor_specs) factors.push_back(parse_func1(fs));
                pts = points_str.empty()
                          ? grid_points(static_cast<int>(factors.size()), grid < 0 ? 16 : grid)
                          : parse_points(points_str);
                for (const auto& x : pts) {
                    if (x.size() != factors.size())
                        throw CLI::ValidationError("--points", "dimension mismatch");
                    double p = 1.0;
                    for (size_t i = 0; i < factors.size(); ++i) p *= factors[i].f(x[i]);
                    vals.push_back(p);
                }
            } else {
                Func1 f = parse_func1(func_spec);
                pts = points_str.empty() ? grid_points(1, grid < 0 ? 256 : grid)
                                         : parse_points(points_str);
                for (const auto& x : pts) vals.push_back(f.f(x.at(0)));
            }
            emit(out_path, points_csv(pts, vals), rep);
        } else if (*c_gram) {
            rep.parameters = {{"system", system_str}, {"N", N}, {"n", n},
                              {"bound", bound},       {"exact", exact}};
            GramSpec spec{parse_system(system_str), N, n, bound};
            GramMatrix g = gram(spec, exact, threads);
            if (exact) {
                emit(out_path, gram_to_exact_json(g), rep);
            } else {
                std::ostringstream os;
                gram_to_csv(g, os);
                emit(out_path, os.str(), rep);
            }
        } else if (*c_spectra) {
            rep.parameters = {{"N", N}, {"compare", compare}};
            SpectraReport sr = spectra_coincide(N, threads);
            std::ostringstream os;
            os << "max_gap," << fmt17(sr.max_gap) << "\n";
            rep.add_check("spectra_max_gap", sr.max_gap, 1e-10);
            if (compare) {
                if (!sr.exact_checked)
                    throw std::runtime_error("--compare: exact identity only checked for N <= 128");
                rep.add_check("exact_conjugation_identity", sr.exact_identity ? 0.0 : 1.0, 0.0);
                os << "exact_identity," << (sr.exact_identity ? 1 : 0) << "\n";
            }
            emit(out_path, os.str(), rep);
        } else if (*c_riesz) {
            rep.parameters = {{"system", system_str}, {"N", N}, {"n", n}, {"bound", bound}};
            GramSpec spec{parse_system(system_str), N, n, bound};
            auto [lo, hi] = riesz_bounds(spec, threads);
            RieszConstants rc = riesz_constants_via_neumann(
                spec.system == GramSpec::System::Rn ? RieszKind::ridge_n : RieszKind::hat_1d);
            std::ostringstream os;
            os << "lambda_min," << fmt17(lo) << "\nlambda_max," << fmt17(hi) << "\nA,"
               << fmt17(rc.A) << "\nB," << fmt17(rc.B) << "\n";
            rep.add_check("lambda_min_above_A", rc.A - lo, 1e-6);
            rep.add_check("lambda_max_below_B", hi - rc.B, 1e-6);
            emit(out_path, os.str(), rep);
        } else if (*c_tau) {
            rep.parameters = {{"M", M}};
            CoeffSeq ts = tau_seq(M);
            std::ostringstream os;
            os << "k,tau\n";
            for (long long k = 1; k <= M; ++k)
                os << k << ',' << fmt17(k % 2 == 1 ? ts.at1(k) : 0.0) << '\n';
            rep.add_check("tau1_matches_4sqrt2_over_pi2",
                          std::fabs(tau(1) - 4.0 * std::numbers::sqrt2 /
                                                  (std::numbers::pi * std::numbers::pi)),
                          1e-15);
            emit(out_path, os.str(), rep);
        } else if (*c_tv) {
            rep.parameters = {{"system", system_str}, {"N", N}, {"n", n},
                              {"bound", bound},       {"M", M}};
            std::ostringstream os;
            os << "target,sup_diff,bound\n";
            if (system_str == "hat") {
                long long pts = grid < 0 ? 2048 : grid;
                OperatorSpec op{OperatorSpec::Kind::T_hat_1d, M, 1};
                for (long long j = 1; j <= N; ++j) {
                    double sup = 0.0, bnd = 0.0;
                    for (long long i = 0; i <= pts; ++i) {
                        double t = static_cast<double>(i) / static_cast<double>(pts);
                        auto fn = [j](std::span<const double> u) {
                            return eval_trig_e(j, u[0]);
                        };
                        TruncatedValue tv = apply_T(op, fn, std::span<const double>(&t, 1),
                                                    std::numbers::sqrt2);
                        double target = eval_dilated(Family::Hat, j, t);
                        sup = std::max(sup, std::fabs(tv.value - target));
                        bnd = tv.error_bound;
                    }
                    os << "hat:" << j << ',' << fmt17(sup) << ',' << fmt17(bnd) << '\n';
                    rep.add_check("transfer_hat_j" + std::to_string(j), sup, bnd);
                }
            } else if (system_str == "rn") {
                OperatorSpec op{OperatorSpec::Kind::T_ridge, M, n};
                auto pts = sample_points(n, grid < 0 ? 200 : grid, seed);
                for (const FreqIndex& k : canonical_indices(n, bound)) {
                    std::string kname;
                    for (int i = 0; i < k.dim(); ++i)
                        kname += (i ? "_" : "") + std::to_string(k.entries[static_cast<size_t>(i)]);
                    for (int side = 0; side < 2; ++side) {
                        double sup = 0.0, bnd = 0.0;
                        for (const auto& x : pts) {
                            auto fn = [&](std::span<const double> u) {
                                double dot = 0.0;
                                for (int i = 0; i < k.dim(); ++i)
                                    dot += static_cast<double>(k.entries[static_cast<size_t>(i)]) *
                                           u[static_cast<size_t>(i)];
                                return side == 0 ? std::cos(2.0 * std::numbers::pi * dot)
                                                 : std::sin(2.0 * std::numbers::pi * dot);
                            };
                            TruncatedValue tv = apply_T(op, fn, x, 1.0);
                            double target = eval_ridge(side == 0 ? Family::C_saw : Family::S_saw,
                                                       k, x);
                            sup = std::max(sup, std::fabs(tv.value - target));
                            bnd = tv.error_bound;
                        }
                        std::string label = (side == 0 ? "C:" : "S:") + kname;
                        os << label << ',' << fmt17(sup) << ',' << fmt17(bnd) << '\n';
                        rep.add_check("transfer_" + label, sup, bnd);
                    }
                }
            } else {
                throw CLI::ValidationError("--system", "transfer-verify needs hat or rn");
            }
            emit(out_path, os.str(), rep);
        } else if (*c_expand) {
            rep.parameters = {{"f", func_spec}, {"basis", basis_str}, {"N", N}, {"bound", bound}};
            BasisTag basis = basis_tag_from_name(basis_str);
            Expansion e;
            switch (basis) {
                case BasisTag::sine:
                    e = sine_coeffs(parse_func1(func_spec), N);
                    break;
                case BasisTag::hat:
                    e = to_hat_coeffs(sine_coeffs(parse_func1(func_spec), N));
                    break;
                case BasisTag::tensor_sine:
                case BasisTag::tensor_hat: {
                    std::vector<Func1> factors;
                    for (const auto& fs : split(func_spec, '*'))
                        factors.push_back(parse_func1(fs));
                    Expansion ts = tensor_sine_coeffs(factors, N);
                    e = basis == BasisTag::tensor_sine ? ts : tensor_hat_coeffs(ts);
                    break;
                }
                case BasisTag::trig_ridge:
                case BasisTag::cs_ridge: {
                    FuncN f = parse_funcN(func_spec);
                    Expansion tr = trig_ridge_coeffs(f, f.dim, bound);
                    e = basis == BasisTag::trig_ridge ? tr : to_CS_coeffs(tr);
                    break;
                }
            }
            emit(out_path, expansion_to_json(e) + "\n", rep);
        } else if (*c_rec) {
            rep.parameters = {{"in", in_path}};
            std::ifstream is(in_path, std::ios::binary);
            if (!is) throw std::runtime_error("cannot open expansion file: " + in_path);
            std::stringstream buf;
            buf << is.rdbuf();
            Expansion e = expansion_from_json(buf.str());
            auto pts = points_str.empty()
                           ? grid_points(e.dim, grid < 0 ? (e.dim == 1 ? 256 : 16) : grid)
                           : parse_points(points_str);
            std::vector<double> vals = reconstruct_multi(e, pts);
            emit(out_path, points_csv(pts, vals), rep);
        } else if (*c_conv) {
            rep.parameters = {{"f", func_spec}, {"basis", basis_str}, {"q", q},
                              {"schedule", schedule_str}, {"ordering", ordering_str}};
            auto schedule = parse_ints(schedule_str);
            std::vector<ConvRow> rows;
            if (func_spec.find('*') != std::string::npos) {
                std::vector<Func1> factors;
                for (const auto& fs : split(func_spec, '*')) factors.push_back(parse_func1(fs));
                Ordering ord =
                    ordering_str == "pringsheim" ? Ordering::pringsheim : Ordering::square;
                rows = convergence_experiment_nd(factors, q, schedule, ord);
            } else {
                BasisTag basis = basis_str.empty() ? BasisTag::sine
                                                   : basis_tag_from_name(basis_str);
                rows = convergence_experiment(parse_func1(func_spec), basis, q, schedule);
            }
            std::ostringstream os;
            conv_table_to_csv(rows, os);
            for (size_t i = 1; i < rows.size(); ++i)
                rep.add_check("error_decreases_stage" + std::to_string(i + 1),
                              rows[i].error - rows[i - 1].error, 0.0);
            emit(out_path, os.str(), rep);
        } else if (*c_crit) {
            rep.parameters = {{"n", n}};
            CriterionResult cr = schauder_criterion(n);
            double ratio = cr.lhs / cr.rhs;
            std::ostringstream os;
            os << "n,lhs,rhs,ratio,holds\n"
               << n << ',' << fmt17(cr.lhs) << ',' << fmt17(cr.rhs) << ',' << fmt17(ratio) << ','
               << (cr.holds ? 1 : 0) << '\n';
            rep.parameters["ratio"] = ratio;
            rep.parameters["holds"] = cr.holds; // informational, not a pass/fail check
            emit(out_path, os.str(), rep);
        } else if (*c_relu) {
            rep.parameters = {{"f", func_spec}};
            ReluNet net;
            Family fam;
            std::vector<long long> kvec;
            auto parts = split(func_spec, ':');
            if (parts.size() != 2)
                throw CLI::ValidationError("--f", "expected family:freq, got " + func_spec);
            if (parts[0] == "saw-c") fam = Family::C_saw;
            else if (parts[0] == "saw-s") fam = Family::S_saw;
            else if (parts[0] == "hat") fam = Family::Hat;
            else if (parts[0] == "ridge-c") fam = Family::C_saw;
            else if (parts[0] == "ridge-s") fam = Family::S_saw;
            else if (parts[0] == "e" || parts[0] == "tensor")
                throw CLI::ValidationError(
                    "--f", "only piecewise-linear elements compile to ReLU nets; "
                           "tensor products need exact multiplication, which one "
                           "hidden layer cannot express");
            else throw CLI::ValidationError("--f", "unknown element: " + func_spec);
            kvec = parse_ints(parts[1]);
            bool ridge = parts[0].rfind("ridge-", 0) == 0;
            if (!ridge && kvec.size() != 1)
                throw CLI::ValidationError("--f", "univariate element needs a single frequency");
            net = ridge ? compile_ridge(fam, kvec) : compile_univariate(fam, kvec[0]);

            // fidelity sweep against direct evaluation
            auto pts = sample_points(net.input_dim, 100000 / std::max(1, net.input_dim), seed);
            double sup = 0.0;
            FreqIndex fk{kvec};
            for (const auto& x : pts) {
                double direct = ridge ? eval_ridge(fam, fk, x)
                                      : eval_dilated(fam, kvec[0], x[0]);
                sup = std::max(sup, std::fabs(net_eval(net, x) - direct));
            }
            rep.add_check("net_matches_direct_eval", sup, 1e-12);
            rep.parameters["hidden_size"] = net.hidden_size();
            rep.parameters["linear_regions"] = linear_region_count(net);
            emit(out_path, export_json(net) + "\n", rep);
        } else if (*c_plot) {
            if (N == 16) N = 512; // subcommand default
            rep.parameters = {{"N", N}};
            std::ostringstream os;
            os << "t,c1,s1,c2,s2\n";
            for (long long i = 0; i <= N; ++i) {
                double t = static_cast<double>(i) / static_cast<double>(N);
                os << fmt17(t) << ',' << fmt17(eval_dilated(Family::C_saw, 1, t)) << ','
                   << fmt17(eval_dilated(Family::S_saw, 1, t)) << ','
                   << fmt17(eval_dilated(Family::C_saw, 2, t)) << ','
                   << fmt17(eval_dilated(Family::S_saw, 2, t)) << '\n';
            }
            emit(out_path, os.str(), rep);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    return finish(rep, report_path);
}
