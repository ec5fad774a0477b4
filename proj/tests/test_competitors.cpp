#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pgof/competitors.hpp"
#include "pgof/estimation.hpp"
#include "pgof/registry.hpp"

using namespace pgof;
using Catch::Approx;

TEST_CASE("T closed form matches quadrature of the printed integral", "[competitors]") {
    Rng rng(246);
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t n = 2 + rng.next_u64() % 5;  // up to 6 here; acceptance runs 100 cases
        std::vector<double> x(n);
        for (auto& v : x) v = 1.0 + 4.0 * rng.uniform();
        const double a = 0.8 + 2.0 * rng.uniform();
        const ParetoShape alpha(a);
        const double t1 = stat_T(x, alpha, WeightKind::Laplace, 3, 0.5);
        const double t2 = stat_T(x, alpha, WeightKind::Normal, 3, 0.5);
        CHECK(t1 == Approx(oracle::stat_T_quadrature(x, a, true, 3, 0.5)).epsilon(1e-6));
        CHECK(t2 == Approx(oracle::stat_T_quadrature(x, a, false, 3, 0.5)).epsilon(1e-6));
    }
}

TEST_CASE("T at the single observation x=1", "[competitors]") {
    // S(t) = (1/m - 1) e^{-it}, so T = (1-1/m)^2 * I_w(0)
    const std::vector<double> x{1.0};
    const ParetoShape alpha(2.0);
    const double expected_laplace = (2.0 / 3.0) * (2.0 / 3.0) * (2.0 * 0.5 / 0.25);
    CHECK(stat_T(x, alpha, WeightKind::Laplace) == Approx(expected_laplace));
    CHECK(stat_T(x, alpha, WeightKind::Laplace) ==
          Approx(oracle::stat_T_quadrature(x, 2.0, true, 3, 0.5)).epsilon(1e-6));
}

TEST_CASE("Zhang statistics", "[competitors]") {
    // n=1 with F = 0.5: ZA = 4 ln 2
    const std::vector<double> x{std::pow(2.0, 1.0)};  // F(2) = 0.5 under alpha=1
    CHECK(stat_zhang(x, ParetoShape(1.0), ZhangKind::ZA) == Approx(4.0 * std::log(2.0)));

    // n=3 hand evaluation
    const std::vector<double> h{1.2, 2.0, 5.0};
    const ParetoShape a(1.5);
    const auto F = [&](double v) { return 1.0 - std::pow(v, -1.5); };
    double za = 0.0, zb = 0.0;
    const double n = 3.0;
    std::vector<double> fs{F(1.2), F(2.0), F(5.0)};
    for (std::size_t j = 1; j <= 3; ++j) {
        const double fj = fs[j - 1];
        za -= std::log(fj) / (n - j + 0.5) + std::log(1.0 - fj) / (j - 0.5);
        const double t = std::log((1.0 / fj - 1.0) / ((n - 0.5) / (j - 0.75) - 1.0));
        zb += t * t;
    }
    CHECK(stat_zhang(h, a, ZhangKind::ZA) == Approx(za).epsilon(1e-13));
    CHECK(stat_zhang(h, a, ZhangKind::ZB) == Approx(zb).epsilon(1e-13));
}

TEST_CASE("Zhang statistics stay finite below the support", "[competitors]") {
    const std::vector<double> x{0.2, 0.7, 3.0};  // F clamps at 1e-12
    const ParetoShape a(1.1);
    CHECK(std::isfinite(stat_zhang(x, a, ZhangKind::ZA)));
    CHECK(std::isfinite(stat_zhang(x, a, ZhangKind::ZB)));
    CHECK(std::isfinite(stat_edf(x, a, EdfKind::AD)));
}

TEST_CASE("ME statistic hand cases", "[competitors]") {
    // n=1 with U = 0.5, a = 0.5
    const std::vector<double> x{2.0};  // F(2)=0.5 at alpha 1
    const double a = 0.5;
    const double expected = 2.0 * a / (a * a) -
                            4.0 * (std::atan(1.0) + std::atan(1.0)) +
                            2.0 * (2.0 * std::atan(2.0) - 0.5 * std::log(5.0));
    CHECK(stat_me(x, ParetoShape(1.0), a) == Approx(expected).epsilon(1e-13));

    // n=3 hand evaluation
    const std::vector<double> h{1.3, 2.2, 8.0};
    const ParetoShape alpha(1.4);
    std::vector<double> u;
    for (double v : h) u.push_back(1.0 - std::pow(v, -1.4));
    double t1 = 0.0;
    for (double uj : u)
        for (double uk : u) t1 += 2.0 * a / ((uj - uk) * (uj - uk) + a * a);
    t1 /= 3.0;
    double t2 = 0.0;
    for (double uj : u) t2 += std::atan(uj / a) + std::atan((1.0 - uj) / a);
    t2 *= 4.0;
    const double t3 = 2.0 * 3.0 * (2.0 * std::atan(1.0 / a) - a * std::log(1.0 + 1.0 / (a * a)));
    CHECK(stat_me(h, alpha, a) == Approx(t1 - t2 + t3).epsilon(1e-13));
}

TEST_CASE("ME is invariant under U -> 1-U", "[competitors]") {
    // direct check on the printed formula with mirrored arguments
    const std::vector<double> u{0.1, 0.35, 0.8};
    const double a = 0.5;
    const auto eval = [&](const std::vector<double>& us) {
        double t1 = 0.0;
        for (double uj : us)
            for (double uk : us) t1 += 2.0 * a / ((uj - uk) * (uj - uk) + a * a);
        t1 /= static_cast<double>(us.size());
        double t2 = 0.0;
        for (double uj : us) t2 += std::atan(uj / a) + std::atan((1.0 - uj) / a);
        t2 *= 4.0;
        const double t3 = 2.0 * static_cast<double>(us.size()) *
                          (2.0 * std::atan(1.0 / a) - a * std::log(1.0 + 1.0 / (a * a)));
        return t1 - t2 + t3;
    };
    std::vector<double> mirrored;
    for (double v : u) mirrored.push_back(1.0 - v);
    CHECK(eval(u) == Approx(eval(mirrored)).epsilon(1e-13));
}

TEST_CASE("OJ hand case and brute force", "[competitors]") {
    const std::vector<double> cc{3.0, 3.0};
    CHECK(stat_oj(cc) == Approx(0.25));

    Rng rng(135);
    for (int rep = 0; rep < 120; ++rep) {
        const std::size_t n = 2 + rng.next_u64() % 5;  // 2..6
        std::vector<double> x(n);
        for (auto& v : x) v = 1.0 + 6.0 * rng.uniform();
        CHECK(stat_oj(x) == Approx(oracle::oj_brute(x)).epsilon(1e-12).margin(1e-12));
    }
    CHECK_THROWS_AS(stat_oj(std::vector<double>{-1.0, 2.0}), DomainError);
}

TEST_CASE("Allison rank counting equals literal enumeration", "[competitors]") {
    Rng rng(777);
    for (int rep = 0; rep < 120; ++rep) {
        const std::size_t n = 2 + rng.next_u64() % 5;  // 2..6
        std::vector<double> x(n);
        for (auto& v : x) v = 0.9 + 4.0 * rng.uniform();
        CHECK(stat_allison(x, AllisonKind::Integral, 2) ==
              Approx(oracle::allison_enum(x, true, 2)).epsilon(1e-12).margin(1e-12));
        CHECK(stat_allison(x, AllisonKind::CvM, 2) ==
              Approx(oracle::allison_enum(x, false, 2)).epsilon(1e-12).margin(1e-12));
    }
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t n = 2 + rng.next_u64() % 4;  // 2..5 at m=3
        std::vector<double> x(n);
        for (auto& v : x) v = 0.9 + 4.0 * rng.uniform();
        CHECK(stat_allison(x, AllisonKind::Integral, 3) ==
              Approx(oracle::allison_enum(x, true, 3)).epsilon(1e-12).margin(1e-12));
        CHECK(stat_allison(x, AllisonKind::CvM, 3) ==
              Approx(oracle::allison_enum(x, false, 3)).epsilon(1e-12).margin(1e-12));
    }
}

TEST_CASE("Allison discrepancy vanishes past the sample maximum", "[competitors]") {
    const std::vector<double> x{1.2, 2.0, 3.5, 9.0};
    const double mx = 9.0;
    CHECK(oracle::allison_delta_enum(x, mx * mx + 1.0, 2) == Approx(0.0).margin(1e-15));
}

TEST_CASE("EDF statistics", "[competitors]") {
    // perfect fit: F_(i) = (2i-1)/(2n) gives CvM = 1/(12n)
    {
        const std::size_t n = 8;
        std::vector<double> x(n);
        const ParetoShape a(2.0);
        for (std::size_t i = 1; i <= n; ++i) {
            const double target = (2.0 * i - 1.0) / (2.0 * n);
            x[i - 1] = pareto_quantile(target, a);
        }
        CHECK(stat_edf(x, a, EdfKind::CvM) == Approx(1.0 / (12.0 * n)).epsilon(1e-12));
    }
    // n=1 with F = 0.3: KS = 0.7
    {
        const ParetoShape a(1.0);
        const double x1 = pareto_quantile(0.3, a);
        CHECK(stat_edf(std::vector<double>{x1}, a, EdfKind::KS) == Approx(0.7).epsilon(1e-12));
    }
    // n=3 AD hand evaluation
    {
        const std::vector<double> x{1.4, 2.3, 6.0};
        const ParetoShape a(1.2);
        std::vector<double> f;
        for (double v : x) f.push_back(1.0 - std::pow(v, -1.2));
        const double n = 3.0;
        double s = 0.0;
        for (std::size_t i = 1; i <= 3; ++i)
            s += (2.0 * i - 1.0) * (std::log(f[i - 1]) + std::log(1.0 - f[3 - i]));
        CHECK(stat_edf(x, a, EdfKind::AD) == Approx(-n - s / n).epsilon(1e-13));
    }
}

TEST_CASE("statistics are permutation invariant and finite", "[competitors]") {
    Rng rng(99);
    std::vector<double> x(12);
    for (auto& v : x) v = 0.8 + 5.0 * rng.uniform();
    const ParetoShape alpha(1.7);
    std::vector<double> base;
    for (const auto& def : statistic_registry()) base.push_back(def.fn(x, alpha));
    for (double v : base) CHECK(std::isfinite(v));
    std::mt19937 shuffler(4);
    for (int rep = 0; rep < 10; ++rep) {
        std::shuffle(x.begin(), x.end(), shuffler);
        std::size_t i = 0;
        for (const auto& def : statistic_registry()) {
            CHECK(def.fn(x, alpha) == Approx(base[i]).epsilon(1e-10).margin(1e-12));
            ++i;
        }
    }
}

TEST_CASE("registry routes names and sidedness", "[competitors]") {
    CHECK(find_statistic("delta_I") != nullptr);
    CHECK(find_statistic("delta_I")->two_sided);
    CHECK_FALSE(find_statistic("delta_M")->two_sided);
    CHECK(find_statistic("OJ")->two_sided);
    CHECK(find_statistic("Inm")->two_sided);
    CHECK_FALSE(find_statistic("Mnm")->two_sided);
    CHECK_FALSE(find_statistic("AD")->two_sided);
    CHECK(find_statistic("nope") == nullptr);
    CHECK(statistic_registry().size() == 13);
}
