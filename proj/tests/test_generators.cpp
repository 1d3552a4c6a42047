/**
 * Generator checks: white-noise ensemble statistics and seeding, exact
 * sample values of the bivariate benchmarks, the zero-noise degenerate
 * pair, trend-slope recovery, and the default noise levels in dB.
 */

#include <catch2/catch_amalgamated.hpp>

#include <mvfif/mvfif.hpp>

#include <cmath>
#include <numbers>
#include <vector>

TEST_CASE("white-noise realizations have unit statistics", "[generators]")
{
    mvfif::GeneratorSpec spec; // n=4, m=1000, 100 realizations, seed 42
    const std::vector<mvfif::MultivariateSignal> ens = mvfif::gen_wgn_ensemble(spec);
    REQUIRE(ens.size() == 100);

    std::size_t mean_ok = 0, var_ok = 0;
    for (const mvfif::MultivariateSignal &s : ens)
    {
        REQUIRE(s.n == 4);
        REQUIRE(s.m == 1000);
        bool mean_good = true, var_good = true;
        for (std::size_t c = 0; c < s.n; ++c)
        {
            double sum = 0.0, sq = 0.0;
            for (std::size_t t = 0; t < s.m; ++t)
            {
                sum += s.at(c, t);
                sq += s.at(c, t) * s.at(c, t);
            }
            const double mean = sum / static_cast<double>(s.m);
            const double var = sq / static_cast<double>(s.m) - mean * mean;
            mean_good = mean_good && std::abs(mean) <= 0.15;
            var_good = var_good && var >= 0.85 && var <= 1.15;
        }
        mean_ok += mean_good ? 1 : 0;
        var_ok += var_good ? 1 : 0;
    }
    CHECK(mean_ok >= 95);
    CHECK(var_ok >= 95);
}

TEST_CASE("the same seed reproduces the ensemble bit for bit", "[generators]")
{
    mvfif::GeneratorSpec spec;
    spec.n = 2;
    spec.m = 200;
    spec.realizations = 3;
    spec.seed = 7;
    const auto a = mvfif::gen_wgn_ensemble(spec);
    const auto b = mvfif::gen_wgn_ensemble(spec);
    REQUIRE(a.size() == b.size());
    for (std::size_t r = 0; r < a.size(); ++r)
        CHECK(a[r].data == b[r].data);

    spec.seed = 8;
    const auto c = mvfif::gen_wgn_ensemble(spec);
    CHECK(a[0].data != c[0].data);
}

TEST_CASE("channel draws depend on the channel count", "[generators]")
{
    // The draw key hashes (seed, n, realization, channel, sample), so the
    // first channel differs between a 2-channel and a 64-channel ensemble.
    mvfif::GeneratorSpec narrow, wide;
    narrow.n = 2;
    wide.n = 64;
    narrow.m = wide.m = 100;
    narrow.realizations = wide.realizations = 1;
    const auto a = mvfif::gen_wgn_ensemble(narrow);
    const auto b = mvfif::gen_wgn_ensemble(wide);
    bool any_diff = false;
    for (std::size_t t = 0; t < 100; ++t)
        any_diff = any_diff || a[0].at(0, t) != b[0].at(0, t);
    CHECK(any_diff);
}

TEST_CASE("generator spec validation", "[generators]")
{
    mvfif::GeneratorSpec bad;
    bad.m = 2;
    CHECK_THROWS_AS(bad.check(), mvfif::Error);

    mvfif::GeneratorSpec flat;
    flat.sample_rate = 0.0;
    CHECK_THROWS_AS(flat.check(), mvfif::Error);

    mvfif::GeneratorSpec none;
    none.realizations = 0;
    CHECK(mvfif::gen_wgn_ensemble(none).empty());
}

TEST_CASE("bivariate benchmark pins exact samples", "[generators]")
{
    const mvfif::MultivariateSignal s = mvfif::gen_bivariate_ivb();
    REQUIRE(s.n == 2);
    REQUIRE(s.m == 2000);
    CHECK(s.sample_rate == 200.0);
    CHECK(s.labels == std::vector<std::string>{"c1", "c2"});

    // t = 0: c₁ = 0 + sin(π/2) + cos(0) = 2, c₂ = 0 + 0 + 0 = 0.
    CHECK(s.at(0, 0) == 2.0);
    CHECK(s.at(1, 0) == 0.0);

    // t = 1 is sample 200 on the half-open 10 s grid:
    // c₁(1) = 1/2 + sin(4π + π/2) + cos(0.2π) = 3/2 + cos(0.2π).
    const double want = 1.5 + std::cos(0.2 * std::numbers::pi);
    CHECK(std::abs(s.at(0, 200) - want) <= 1e-12);
}

TEST_CASE("benchmark components match their sum", "[generators]")
{
    const std::size_t m = 500;
    const mvfif::MultivariateSignal s = mvfif::gen_bivariate_ivb(m);
    const mvfif::ComponentSet cs = mvfif::ivb_components(m);
    REQUIRE(cs.series.size() == 4);
    REQUIRE(cs.channel == std::vector<std::size_t>{0, 0, 1, 1});

    // Channel minus its components leaves only the linear trend.
    const double dt = 10.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < m; ++k)
    {
        const double t = static_cast<double>(k) * dt;
        const double resid0 = s.at(0, k) - cs.series[0][k] - cs.series[1][k];
        const double resid1 = s.at(1, k) - cs.series[2][k] - cs.series[3][k];
        CHECK(std::abs(resid0 - 0.5 * t) <= 1e-12);
        CHECK(std::abs(resid1 + 0.2 * t) <= 1e-12);
    }
}

TEST_CASE("the residual trend regresses to slope one half", "[generators]")
{
    const std::size_t m = 2000;
    const mvfif::MultivariateSignal s = mvfif::gen_bivariate_ivb(m);
    const mvfif::ComponentSet cs = mvfif::ivb_components(m);

    // Least-squares line through (t_k, c₁ − oscillatory parts).
    const double dt = 10.0 / static_cast<double>(m);
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    for (std::size_t k = 0; k < m; ++k)
    {
        const double t = static_cast<double>(k) * dt;
        const double y = s.at(0, k) - cs.series[0][k] - cs.series[1][k];
        st += t;
        sy += y;
        stt += t * t;
        sty += t * y;
    }
    const double n = static_cast<double>(m);
    const double slope = (n * sty - st * sy) / (n * stt - st * st);
    CHECK(std::abs(slope - 0.5) <= 1e-6);
}

TEST_CASE("zero noise makes the pair identical", "[generators]")
{
    const mvfif::NoisyCleanPair pair = mvfif::gen_bivariate_ive(1000, 0.0, 20.0, 42, {0.0, 0.0});
    CHECK(pair.noisy.data == pair.clean.data);
    CHECK(pair.clean.at(1, 0) == 0.0);
    CHECK(pair.clean.sample_rate == 50.0);
}

TEST_CASE("negative noise levels are rejected", "[generators]")
{
    CHECK_THROWS_AS(mvfif::gen_bivariate_ive(1000, 0.0, 20.0, 42, {-1.0, 2.0}), mvfif::Error);
}

TEST_CASE("default noise levels land at the reference SNRs", "[generators]")
{
    const mvfif::NoisyCleanPair pair = mvfif::gen_bivariate_ive();
    REQUIRE(pair.clean.m == 1000);

    for (std::size_t c = 0; c < 2; ++c)
    {
        std::vector<double> clean(pair.clean.channel(c), pair.clean.channel(c) + pair.clean.m);
        std::vector<double> noise(pair.clean.m);
        for (std::size_t t = 0; t < pair.clean.m; ++t)
            noise[t] = pair.noisy.at(c, t) - pair.clean.at(c, t);
        const double db = mvfif::snr(clean, noise);
        const double want = (c == 0) ? 15.11 : 2.12;
        INFO("channel " << c << " snr " << db);
        CHECK(std::abs(db - want) <= 1.0);
    }
}

TEST_CASE("generators are pure functions of their arguments", "[generators]")
{
    const mvfif::MultivariateSignal a = mvfif::gen_bivariate_ivb(800);
    const mvfif::MultivariateSignal b = mvfif::gen_bivariate_ivb(800);
    CHECK(a.data == b.data);

    const mvfif::NoisyCleanPair p = mvfif::gen_bivariate_ive(500);
    const mvfif::NoisyCleanPair q = mvfif::gen_bivariate_ive(500);
    CHECK(p.noisy.data == q.noisy.data);
}
