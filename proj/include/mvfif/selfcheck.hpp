/**
 * Embedded desk-scale self-checks: oracle equivalences and invariants run
 * by the `selftest` subcommand as a release gate. Every check is seeded
 * and deterministic, so two runs print identical bytes.
 *
 * The fault-injection hook corrupts the kernels the checks build directly
 * (an asymmetric tap violates the even-symmetry hypothesis); a correct
 * suite must then report failures — this proves the checks can actually
 * detect a broken kernel rather than vacuously passing.
 */

#ifndef MVFIF_SELFCHECK_HPP
#define MVFIF_SELFCHECK_HPP

#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "decompose.hpp"
#include "errors.hpp"
#include "fft.hpp"
#include "filter_bank.hpp"
#include "generators.hpp"
#include "rotation.hpp"
#include "signal.hpp"

namespace mvfif
{

    enum class Fault
    {
        None,
        KernelAsymmetry, // adds 1e-3 to the first tap of directly built kernels
    };

    struct CheckResult
    {
        std::string name;
        bool pass = false;
        std::string detail;
    };

    namespace detail
    {
        inline void apply_fault(FilterKernel &k, Fault fault)
        {
            if (fault == Fault::KernelAsymmetry)
                k.weights.front() += 1e-3;
        }

        inline MultivariateSignal seeded_noise(std::size_t n, std::size_t m, std::uint64_t seed)
        {
            MultivariateSignal s(n, m, 1.0);
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t t = 0; t < m; ++t)
                    s.at(c, t) = rng::gaussian(seed, n, 0, c, t);
            return s;
        }

        template <typename Fn>
        inline CheckResult run_check(const std::string &name, Fn &&fn)
        {
            CheckResult r;
            r.name = name;
            try
            {
                std::ostringstream detail;
                r.pass = fn(detail);
                r.detail = detail.str();
            }
            catch (const Error &e)
            {
                r.pass = false;
                r.detail = e.what();
            }
            catch (const std::exception &e)
            {
                r.pass = false;
                r.detail = e.what();
            }
            return r;
        }
    } // namespace detail

    inline std::vector<CheckResult> run_selfchecks(Fault fault = Fault::None)
    {
        std::vector<CheckResult> results;

        results.push_back(detail::run_check("fft-roundtrip", [&](std::ostringstream &out)
                                            {
            // Power-of-two and prime lengths; inverse(forward) must be identity.
            double worst = 0.0;
            for (std::size_t m : {std::size_t(64), std::size_t(29)})
            {
                const MultivariateSignal s = detail::seeded_noise(1, m, 7);
                std::vector<double> x(s.channel(0), s.channel(0) + m);
                std::vector<fft::cplx> spec = fft::forward_real(x);
                fft::inverse_inplace(spec);
                for (std::size_t t = 0; t < m; ++t)
                    worst = std::max(worst, std::abs(spec[t].real() - x[t]) +
                                                std::abs(spec[t].imag()));
            }
            out << "max roundtrip error " << worst;
            return worst < 1e-12; }));

        results.push_back(detail::run_check("kernel-invariants", [&](std::ostringstream &out)
                                            {
            double worst_asym = 0.0, worst_sum = 0.0;
            for (int L : {1, 4, 7})
            {
                for (FilterShape shape : {FilterShape::Bump, FilterShape::Triangle})
                {
                    FilterKernel k = build_kernel(L, shape);
                    detail::apply_fault(k, fault);
                    double sum = 0.0;
                    for (std::size_t i = 0; i < k.weights.size(); ++i)
                    {
                        if (k.weights[i] < 0.0)
                            return false;
                        sum += k.weights[i];
                        worst_asym = std::max(worst_asym,
                                              std::abs(k.weights[i] -
                                                       k.weights[k.weights.size() - 1 - i]));
                    }
                    worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
                    // Throws on asymmetric spectra; bounds checked below.
                    auto [lam, diag] = eigenvalues_with_diagnostics(k, 64);
                    if (diag.max_abs_imag >= 1e-10 || diag.min_real < -1e-10 ||
                        diag.max_real > 1.0 + 1e-12)
                        return false;
                    if (std::abs(lam[0] - 1.0) > 1e-12)
                        return false;
                }
            }
            out << "max asymmetry " << worst_asym << ", max |sum-1| " << worst_sum;
            return worst_asym <= 1e-12 && worst_sum <= 1e-12; }));

        results.push_back(detail::run_check("inner-loop-vs-dense-oracle", [&](std::ostringstream &out)
                                            {
            const MultivariateSignal u = detail::seeded_noise(2, 48, 11);
            FilterKernel k = build_kernel(3, FilterShape::Bump);
            detail::apply_fault(k, fault);
            const InnerLoopResult r = inner_loop(u, k, 1e-6, 200);
            const MultivariateSignal oracle = dense_oracle_imf(u, k, r.N0);
            double worst = 0.0;
            for (std::size_t i = 0; i < u.data.size(); ++i)
                worst = std::max(worst, std::abs(r.imf.data[i] - oracle.data[i]));
            out << "N0 " << r.N0 << ", max |fft - dense| " << worst
                << ", sc violations " << r.sc_violations;
            return worst < 1e-9 && r.sc_violations == 0; }));

        results.push_back(detail::run_check("reconstruction", [&](std::ostringstream &out)
                                            {
            DecompositionConfig cfg;
            cfg.max_imfs = 3;
            const MultivariateSignal s = gen_bivariate_ivb(256);
            const Decomposition d = mvfif_decompose(s, cfg);
            const double err = reconstruction_error(d, s);
            out << d.imf_count() << " IMFs, relative error " << err;
            return err < 1e-10; }));

        results.push_back(detail::run_check("extrema-and-length-rules", [&](std::ostringstream &out)
                                            {
            const ExtremaSet plateau = find_extrema(std::vector<double>{0, 1, 1, 0});
            if (plateau.count() != 1 || plateau.indices[0] != 1)
                return false;
            if (find_extrema(std::vector<double>{1, 2, 3, 4, 5}).count() != 0)
                return false;
            // Triangle-wave series whose extrema sit exactly at 10, 20, 30.
            ThetaSeries theta;
            theta.source_length = 41;
            theta.values.resize(40);
            for (std::size_t i = 0; i < 40; ++i)
            {
                const double fold = std::abs(10.0 - std::abs(10.0 - (static_cast<double>(i) -
                                                                     10.0)));
                theta.values[i] = 0.1 * (10.0 - fold);
            }
            const std::optional<int> L = filter_length_from_theta(theta);
            if (!L || *L != 20)
                return false;
            std::vector<double> wave(1000);
            for (std::size_t i = 0; i < 1000; ++i)
                wave[i] = std::sin(2.0 * std::numbers::pi * static_cast<double>(i) / 100.0);
            if (find_extrema(wave).count() != 20)
                return false;
            const int Lu = filter_length_univariate(wave, 1.6);
            out << "theta L " << *L << ", univariate L " << Lu;
            return Lu == 160; }));

        results.push_back(detail::run_check("psd-parseval", [&](std::ostringstream &out)
                                            {
            const MultivariateSignal s = detail::seeded_noise(1, 512, 23);
            std::vector<double> x(s.channel(0), s.channel(0) + 512);
            const PsdCurve curve = psd(x, 2.0);
            double lhs = 0.0;
            const double df = 2.0 / 512.0;
            for (double p : curve.power)
                lhs += p * df;
            double rhs = 0.0;
            for (double v : x)
                rhs += v * v;
            rhs /= 512.0;
            const double gap = std::abs(lhs - rhs) / rhs;
            out << "relative Parseval gap " << gap;
            return gap < 1e-8; }));

        results.push_back(detail::run_check("generator-determinism", [&](std::ostringstream &out)
                                            {
            GeneratorSpec spec;
            spec.n = 2;
            spec.m = 64;
            spec.realizations = 2;
            spec.seed = 5;
            const auto a = gen_wgn_ensemble(spec);
            const auto b = gen_wgn_ensemble(spec);
            for (std::size_t r = 0; r < a.size(); ++r)
                if (a[r].data != b[r].data)
                    return false;
            out << a.size() << " realizations bitwise stable";
            return true; }));

        results.push_back(detail::run_check("extension-roundtrip", [&](std::ostringstream &out)
                                            {
            const MultivariateSignal s = MultivariateSignal::from_channels({{1, 2, 3, 4}});
            const MultivariateSignal e = pre_extend(s, ExtensionMode::Reflect, 2);
            const std::vector<double> want = {3, 2, 1, 2, 3, 4, 3, 2};
            for (std::size_t i = 0; i < want.size(); ++i)
                if (e.at(0, i) != want[i])
                    return false;
            const MultivariateSignal back = crop(e, 2);
            out << "reflect worked example holds";
            return back.data == s.data; }));

        return results;
    }

} // namespace mvfif

#endif // MVFIF_SELFCHECK_HPP
