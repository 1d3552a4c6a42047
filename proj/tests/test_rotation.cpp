/**
 * Rotation-geometry checks: the angle series against a long-double oracle
 * and closed-form cases, extrema detection against a brute-force scan,
 * and both mask-length rules on series with known extrema counts.
 */

#include <catch2/catch_amalgamated.hpp>

#include <mvfif/mvfif.hpp>

#include <cmath>
#include <numbers>
#include <vector>

namespace
{

    // Independent θ oracle in long double, same clamped-arccos definition.
    std::vector<double> theta_oracle(const mvfif::MultivariateSignal &s)
    {
        std::vector<double> out(s.m - 1);
        for (std::size_t t = 1; t < s.m; ++t)
        {
            long double dot = 0.0L, na = 0.0L, nb = 0.0L;
            for (std::size_t c = 0; c < s.n; ++c)
            {
                const long double a = s.at(c, t - 1);
                const long double b = s.at(c, t);
                dot += a * b;
                na += a * a;
                nb += b * b;
            }
            long double r = dot / (std::sqrt(na) * std::sqrt(nb));
            r = std::min(1.0L, std::max(-1.0L, r));
            out[t - 1] = static_cast<double>(std::acos(r));
        }
        return out;
    }

    // Strict interior extrema without plateau handling; valid when all
    // neighboring values differ.
    std::vector<std::size_t> brute_extrema(const std::vector<double> &x)
    {
        std::vector<std::size_t> out;
        for (std::size_t i = 1; i + 1 < x.size(); ++i)
        {
            const bool mx = x[i - 1] < x[i] && x[i + 1] < x[i];
            const bool mn = x[i - 1] > x[i] && x[i + 1] > x[i];
            if (mx || mn)
                out.push_back(i);
        }
        return out;
    }

} // namespace

TEST_CASE("constant direction gives zero rotation angle", "[rotation]")
{
    mvfif::MultivariateSignal s(2, 50);
    for (std::size_t t = 0; t < s.m; ++t)
    {
        s.at(0, t) = 1.0;
        s.at(1, t) = 0.0;
    }
    const mvfif::ThetaSeries th = mvfif::compute_theta(s);
    REQUIRE(th.values.size() == 49);
    for (double v : th.values)
        CHECK(v == 0.0);
    CHECK(th.degenerate_count == 0);
}

TEST_CASE("uniform rotation gives a constant angle step", "[rotation]")
{
    // 2 Hz circular motion sampled at 100 Hz: θ = 2π·2/100 every step.
    const std::size_t m = 200;
    const double step = 2.0 * std::numbers::pi * 2.0 / 100.0;
    mvfif::MultivariateSignal s(2, m, 100.0);
    for (std::size_t t = 0; t < m; ++t)
    {
        s.at(0, t) = std::cos(step * static_cast<double>(t));
        s.at(1, t) = std::sin(step * static_cast<double>(t));
    }
    const mvfif::ThetaSeries th = mvfif::compute_theta(s);
    for (double v : th.values)
        CHECK(std::abs(v - step) <= 1e-12);
}

TEST_CASE("rotation angle matches the long-double oracle", "[rotation]")
{
    mvfif::MultivariateSignal s(4, 50);
    for (std::size_t c = 0; c < 4; ++c)
        for (std::size_t t = 0; t < 50; ++t)
            s.at(c, t) = mvfif::rng::gaussian(0x707, 4, 0, c, t);

    const mvfif::ThetaSeries th = mvfif::compute_theta(s);
    const std::vector<double> want = theta_oracle(s);
    REQUIRE(th.values.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i)
    {
        CHECK(std::abs(th.values[i] - want[i]) <= 1e-12);
        CHECK(th.values[i] >= 0.0);
        CHECK(th.values[i] <= std::numbers::pi);
    }
}

TEST_CASE("rotation angle ignores positive per-sample rescaling", "[rotation]")
{
    mvfif::MultivariateSignal a(3, 40);
    for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t t = 0; t < 40; ++t)
            a.at(c, t) = mvfif::rng::gaussian(0x5CA1E, 3, 0, c, t);

    mvfif::MultivariateSignal b = a;
    for (std::size_t t = 0; t < 40; ++t)
    {
        const double scale = 0.5 + 3.0 * std::abs(mvfif::rng::gaussian(0x5CA1E, 3, 1, 0, t));
        for (std::size_t c = 0; c < 3; ++c)
            b.at(c, t) *= scale;
    }

    const mvfif::ThetaSeries ta = mvfif::compute_theta(a);
    const mvfif::ThetaSeries tb = mvfif::compute_theta(b);
    for (std::size_t i = 0; i < ta.values.size(); ++i)
        CHECK(std::abs(ta.values[i] - tb.values[i]) <= 1e-12);
}

TEST_CASE("near-zero sample vectors are degenerate, not errors", "[rotation]")
{
    mvfif::MultivariateSignal s(2, 5);
    const double vals[5] = {1.0, 2.0, 0.0, 3.0, 1.5};
    for (std::size_t t = 0; t < 5; ++t)
    {
        s.at(0, t) = vals[t];
        s.at(1, t) = vals[t];
    }
    const mvfif::ThetaSeries th = mvfif::compute_theta(s);
    CHECK(th.degenerate_count == 2); // pairs (1,2) and (2,3) touch the zero column
    CHECK(th.values[1] == 0.0);
    CHECK(th.values[2] == 0.0);
}

TEST_CASE("compute_theta needs at least two samples", "[rotation]")
{
    const mvfif::MultivariateSignal s(2, 1);
    CHECK_THROWS_MATCHES(mvfif::compute_theta(s), mvfif::Error,
                         Catch::Matchers::Predicate<mvfif::Error>([](const mvfif::Error &e)
                                                                  { return e.code() == mvfif::Errc::SignalTooShort; }));
}

TEST_CASE("find_extrema matches a brute-force scan on a sampled sine", "[rotation]")
{
    std::vector<double> x(1000);
    for (std::size_t t = 0; t < 1000; ++t)
        x[t] = std::sin(2.0 * std::numbers::pi * static_cast<double>(t) / 100.0);

    const mvfif::ExtremaSet ex = mvfif::find_extrema(x);
    const std::vector<std::size_t> want = brute_extrema(x);
    CHECK(ex.count() == 20);
    CHECK(ex.indices == want);
}

TEST_CASE("monotone series have no extrema", "[rotation]")
{
    std::vector<double> x(100);
    for (std::size_t t = 0; t < 100; ++t)
        x[t] = 0.1 * static_cast<double>(t);
    CHECK(mvfif::find_extrema(x).count() == 0);
}

TEST_CASE("plateaus compress to their midpoint", "[rotation]")
{
    CHECK(mvfif::find_extrema({0.0, 1.0, 1.0, 0.0}).indices ==
          std::vector<std::size_t>{1});
    CHECK(mvfif::find_extrema({0.0, 1.0, 1.0, 1.0, 0.0}).indices ==
          std::vector<std::size_t>{2});
    // A plateau at the boundary is not interior.
    CHECK(mvfif::find_extrema({1.0, 1.0, 0.0}).count() == 0);
}

TEST_CASE("extrema are symmetric under sign flip", "[rotation]")
{
    std::vector<double> x(200), neg(200);
    for (std::size_t t = 0; t < 200; ++t)
    {
        x[t] = mvfif::rng::gaussian(0xF1DE, 1, 0, 0, t);
        neg[t] = -x[t];
    }
    CHECK(mvfif::find_extrema(x).indices == mvfif::find_extrema(neg).indices);
}

TEST_CASE("mask length doubles the mean extrema gap of theta", "[rotation]")
{
    // θ extrema at 10, 20, 30: mean gap 10, so L = 20.
    mvfif::ThetaSeries th;
    th.values.resize(41);
    th.source_length = 42;
    for (std::size_t t = 0; t <= 40; ++t)
        th.values[t] = 1.5 + 0.5 * std::cos(2.0 * std::numbers::pi *
                                            (static_cast<double>(t) - 10.0) / 20.0);
    const mvfif::ExtremaSet ex = mvfif::find_extrema(th);
    REQUIRE(ex.indices == std::vector<std::size_t>{10, 20, 30});
    const std::optional<int> L = mvfif::filter_length_from_theta(th);
    REQUIRE(L.has_value());
    CHECK(*L == 20);
}

TEST_CASE("fewer than two theta extrema means a trend signal", "[rotation]")
{
    mvfif::ThetaSeries th;
    th.values.resize(41);
    th.source_length = 42;
    for (std::size_t t = 0; t <= 40; ++t)
    {
        const double d = static_cast<double>(t) - 20.0;
        th.values[t] = std::exp(-d * d / 50.0); // single interior bump
    }
    CHECK(mvfif::find_extrema(th).count() == 1);
    CHECK_FALSE(mvfif::filter_length_from_theta(th).has_value());
}

TEST_CASE("uniform rotation reaches the trend guard after snapping", "[rotation]")
{
    // A pure circular pair has constant θ up to rounding jitter; the
    // decomposer snaps θ to a coarse grid before extrema detection, which
    // flattens the jitter and classifies the signal as a trend.
    const std::size_t m = 500;
    const double step = 2.0 * std::numbers::pi * 2.0 / 100.0;
    mvfif::MultivariateSignal s(2, m, 100.0);
    for (std::size_t t = 0; t < m; ++t)
    {
        s.at(0, t) = std::cos(step * static_cast<double>(t));
        s.at(1, t) = std::sin(step * static_cast<double>(t));
    }
    mvfif::ThetaSeries th = mvfif::compute_theta(s);
    mvfif::detail::snap_to_grid(th.values);
    CHECK_FALSE(mvfif::filter_length_from_theta(th).has_value());
}

TEST_CASE("univariate mask length follows the extrema-density rule", "[rotation]")
{
    // 100 extrema in 1000 samples: L = 2⌊1.6·1000/100⌋ = 32.
    std::vector<double> dense(1000);
    for (std::size_t t = 0; t < 1000; ++t)
        dense[t] = std::sin(0.1 * std::numbers::pi * static_cast<double>(t));
    REQUIRE(mvfif::find_extrema(dense).count() == 100);
    CHECK(mvfif::filter_length_univariate(dense, 1.6) == 32);

    // Alternating series: 1000 extrema in 1002 samples collapse L to 2.
    std::vector<double> alt(1002);
    for (std::size_t t = 0; t < 1002; ++t)
        alt[t] = (t % 2 == 0) ? 1.0 : -1.0;
    REQUIRE(mvfif::find_extrema(alt).count() == 1000);
    CHECK(mvfif::filter_length_univariate(alt, 1.6) == 2);

    // 2 Hz tone over 10 s at 100 Hz: 40 extrema, L = 80.
    std::vector<double> tone(1000);
    for (std::size_t t = 0; t < 1000; ++t)
        tone[t] = std::sin(4.0 * std::numbers::pi * static_cast<double>(t) / 100.0);
    REQUIRE(mvfif::find_extrema(tone).count() == 40);
    CHECK(mvfif::filter_length_univariate(tone, 1.6) == 80);
}

TEST_CASE("univariate mask length needs two extrema", "[rotation]")
{
    std::vector<double> ramp(50);
    for (std::size_t t = 0; t < 50; ++t)
        ramp[t] = static_cast<double>(t);
    CHECK_THROWS_MATCHES(mvfif::filter_length_univariate(ramp, 1.6), mvfif::Error,
                         Catch::Matchers::Predicate<mvfif::Error>([](const mvfif::Error &e)
                                                                  { return e.code() == mvfif::Errc::NoExtrema; }));
    CHECK_THROWS_AS(mvfif::filter_length_univariate(ramp, 0.0), mvfif::Error);
}
