#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdint>

#include <nlohmann/json.hpp>

#include "pwlb/pwl_core.hpp"
#include "pwlb/relu.hpp"
#include "pwlb/rng.hpp"

using namespace pwlb;

namespace {
bool same_bits(double a, double b) {
    return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

bool nets_bit_identical(const ReluNet& a, const ReluNet& b) {
    if (a.input_dim != b.input_dim || a.w.size() != b.w.size() || !same_bits(a.c0, b.c0))
        return false;
    for (size_t i = 0; i < a.w.size(); ++i) {
        if (a.w[i].size() != b.w[i].size()) return false;
        for (size_t j = 0; j < a.w[i].size(); ++j)
            if (!same_bits(a.w[i][j], b.w[i][j])) return false;
        if (!same_bits(a.b[i], b.b[i]) || !same_bits(a.c[i], b.c[i])) return false;
    }
    return true;
}
} // namespace

TEST_CASE("net evaluation formula") {
    ReluNet zero;
    zero.input_dim = 1;
    CHECK(net_eval(zero, std::vector<double>{0.4}) == 0.0);

    ReluNet unit;
    unit.input_dim = 1;
    unit.w = {{1.0}};
    unit.b = {0.0};
    unit.c = {1.0};
    CHECK(net_eval(unit, std::vector<double>{2.0}) == 2.0);
    CHECK_THROWS_AS(net_eval(unit, std::vector<double>{0.1, 0.2}), std::invalid_argument);
}

TEST_CASE("compiled first even sawtooth") {
    ReluNet net = compile_univariate(Family::C_saw, 1);
    CHECK(net.hidden_size() == 2); // base slope + one interior kink at 1/2
    CHECK(net_eval(net, std::vector<double>{0.0}) == 1.0);
    CHECK(net_eval(net, std::vector<double>{0.5}) == -1.0);
    CHECK(net_eval(net, std::vector<double>{1.0}) == 1.0);
    CHECK(net_eval(net, std::vector<double>{0.25}) == 0.0);
    CHECK(net_eval(net, std::vector<double>{0.3}) == doctest::Approx(-0.2).epsilon(1e-15));
    CHECK(linear_region_count(net) == 2);
}

TEST_CASE("compiled first hat") {
    ReluNet net = compile_univariate(Family::Hat, 1);
    CHECK(net_eval(net, std::vector<double>{0.5}) == 1.0);
    CHECK(net_eval(net, std::vector<double>{0.25}) == 0.5);
    CHECK(linear_region_count(net) == 2);
}

TEST_CASE("dense sweep against direct evaluation") {
    ReluNet net = compile_univariate(Family::S_saw, 3);
    double worst = 0.0;
    for (long long i = 0; i <= 100000; ++i) {
        double t = static_cast<double>(i) / 100000.0;
        worst = std::max(worst,
                         std::fabs(net_eval(net, std::span<const double>(&t, 1)) -
                                   eval_dilated(Family::S_saw, 3, t)));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("hidden sizes and region counts per family") {
    for (long long k = 1; k <= 32; ++k) {
        CHECK(compile_univariate(Family::C_saw, k).hidden_size() == static_cast<size_t>(2 * k));
        CHECK(compile_univariate(Family::S_saw, k).hidden_size() ==
              static_cast<size_t>(2 * k + 1));
        CHECK(compile_univariate(Family::Hat, k).hidden_size() == static_cast<size_t>(k + 1));
        CHECK(linear_region_count(compile_univariate(Family::C_saw, k)) == 2 * k);
        CHECK(linear_region_count(compile_univariate(Family::S_saw, k)) == 2 * k + 1);
        CHECK(linear_region_count(compile_univariate(Family::Hat, k)) == k + 1);
    }
}

TEST_CASE("exact rational replay") {
    SplitMix64 rng{77};
    for (auto [fam, k] : {std::pair{Family::C_saw, 5LL}, std::pair{Family::S_saw, 4LL},
                          std::pair{Family::Hat, 6LL}}) {
        ReluNet net = compile_univariate(fam, k);
        for (int i = 0; i < 20; ++i) {
            long long num = static_cast<long long>(rng.at(static_cast<std::uint64_t>(i)) % 7919);
            Rational t = make_rational(num, 7919);
            Rational got = net_eval_exact(net, std::span<const Rational>(&t, 1));
            CHECK(got == eval_dilated_exact(fam, k, t));
        }
    }
}

TEST_CASE("ridge nets share one direction") {
    ReluNet net = compile_ridge(Family::C_saw, std::vector<long long>{1, 0});
    ReluNet uni = compile_univariate(Family::C_saw, 1);
    SplitMix64 rng{3};
    for (int i = 0; i < 50; ++i) {
        double t = rng.uniform(static_cast<std::uint64_t>(2 * i));
        double y = rng.uniform(static_cast<std::uint64_t>(2 * i + 1));
        CHECK(net_eval(net, std::vector<double>{t, y}) ==
              doctest::Approx(net_eval(uni, std::span<const double>(&t, 1))).epsilon(1e-15));
    }

    ReluNet diag = compile_ridge(Family::C_saw, std::vector<long long>{1, 1});
    CHECK(net_eval(diag, std::vector<double>{0.25, 0.25}) == -1.0);
    for (const auto& wi : diag.w) CHECK(wi == std::vector<double>{1.0, 1.0});
}

TEST_CASE("ridge sweep against direct evaluation") {
    FreqIndex k{{2, -1, 3}};
    ReluNet net = compile_ridge(Family::S_saw, k.entries);
    SplitMix64 rng{99};
    double worst = 0.0;
    for (long long i = 0; i < 100000; ++i) {
        std::vector<double> x{rng.uniform(3 * static_cast<std::uint64_t>(i)),
                              rng.uniform(3 * static_cast<std::uint64_t>(i) + 1),
                              rng.uniform(3 * static_cast<std::uint64_t>(i) + 2)};
        worst = std::max(worst, std::fabs(net_eval(net, x) - eval_ridge(Family::S_saw, k, x)));
    }
    CHECK(worst <= 1e-12);
    // ||k||_1 = 6 interior half-integer kinks twice per unit: 2*6 = 12, plus base
    CHECK(net.hidden_size() == 13);
}

TEST_CASE("compilation guards") {
    CHECK_THROWS_AS(compile_univariate(Family::C_saw, 0), std::invalid_argument);
    CHECK_THROWS_AS(compile_univariate(Family::C_saw, (1LL << 14) + 1), std::invalid_argument);
    CHECK_NOTHROW(compile_univariate(Family::C_saw, 1LL << 14));
    CHECK_THROWS_AS(compile_ridge(Family::C_saw, std::vector<long long>{0, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(compile_ridge(Family::C_saw, std::vector<long long>{4097, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(compile_ridge(Family::Hat, std::vector<long long>{1, 1}),
                    std::invalid_argument);
}

TEST_CASE("JSON round trip is bit-exact") {
    ReluNet net = compile_univariate(Family::S_saw, 5);
    ReluNet back = import_json(export_json(net));
    CHECK(nets_bit_identical(net, back));

    std::string text = export_json(compile_ridge(Family::C_saw, std::vector<long long>{2, 3}));
    CHECK(nets_bit_identical(import_json(text), import_json(text)));
}

TEST_CASE("hex and decimal fields decode identically") {
    SplitMix64 rng{2024};
    for (int trial = 0; trial < 100; ++trial) {
        ReluNet net;
        net.input_dim = 2;
        for (int u = 0; u < 3; ++u) {
            std::uint64_t base = static_cast<std::uint64_t>(trial) * 16 +
                                 static_cast<std::uint64_t>(u) * 4;
            net.w.push_back({rng.uniform(base) * 8.0 - 4.0, rng.uniform(base + 1) * 8.0 - 4.0});
            net.b.push_back(rng.uniform(base + 2) * 2.0 - 1.0);
            net.c.push_back(rng.uniform(base + 3) * 16.0 - 8.0);
        }
        net.c0 = rng.uniform(static_cast<std::uint64_t>(trial) * 16 + 15);

        auto j = nlohmann::json::parse(export_json(net));
        auto hex_only = j, dec_only = j;
        for (auto& unit : hex_only.at("hidden")) {
            unit.erase("w");
            unit["w"] = nlohmann::json::array({0.0, 0.0}); // poisoned decimals
            unit["b"] = 0.0;
        }
        for (auto& unit : dec_only.at("hidden")) {
            unit.erase("w_hex");
            unit.erase("b_hex");
        }
        dec_only.at("output").erase("c_hex");
        ReluNet via_hex = import_json(hex_only.dump());
        ReluNet via_dec = import_json(dec_only.dump());
        CHECK(nets_bit_identical(via_hex, net)); // hex wins over the poisoned decimals
        CHECK(nets_bit_identical(via_dec, net)); // 17 significant digits round-trip too
    }
}

TEST_CASE("import rejects malformed input") {
    ReluNet net = compile_univariate(Family::C_saw, 2);
    std::string text = export_json(net);
    CHECK_THROWS_AS(import_json(text.substr(0, text.size() / 2)), std::invalid_argument);
    CHECK_THROWS_AS(import_json("{}"), std::invalid_argument);

    auto j = nlohmann::json::parse(text);
    j.at("hidden")[0]["b_hex"] = "inf";
    CHECK_THROWS_AS(import_json(j.dump()), std::invalid_argument);

    auto j2 = nlohmann::json::parse(text);
    j2.at("output").at("c").push_back(1.0); // size mismatch with hidden
    j2.at("output").at("c_hex").push_back("0x1p+0");
    CHECK_THROWS_AS(import_json(j2.dump()), std::invalid_argument);
}
