/**
 * Multivariate Fast Iterative Filtering (MvFIF) and the univariate FIF
 * baseline, after Cicone's multivariate extension of iterative filtering.
 *
 * Inner loop: with λ the eigenvalues of the filter's circulant operator,
 * every channel spectrum is driven by û_i ← (1−λ)⊙û_i jointly. After k
 * applications the (k+1)-th changes channel i by exactly
 * ‖λ⊙(1−λ)^k⊙û_i⁰‖₂/√m (Parseval), so the stopping value is computed
 * entirely in the frequency domain from the initial spectra, before the
 * application it measures. Each pass evaluates that value, applies the
 * multiplication, and stops once the change just applied was below δ —
 * hence at least one application always runs and N₀ counts the
 * applications performed. Because every factor lies in [0,1] and the
 * reduction order is fixed, the stopping value is non-increasing in exact
 * arithmetic and in this implementation's floating point alike;
 * violations are counted and reported.
 *
 * Outer loop: compute the rotation angle θ of the residual, derive the
 * mask half-length from twice the average θ-extrema spacing scaled by ξ
 * (θ oscillates at twice the rotation rate, so this matches the
 * univariate L = 2⌊ξN/k⌋ rule on matched content), filter, subtract,
 * repeat until θ has fewer than 2 extrema. The residual is the trend.
 * Guards: θ is snapped to a 1e−12·max|θ| grid before extrema detection
 * (arccos jitter otherwise manufactures extrema on uniform rotations); the
 * loop also stops when the mask no longer fits the window or when the
 * residual energy falls below rounding level relative to the input.
 *
 * A dense-operator oracle (explicit circulant matrix powers) is provided
 * for cross-validation at test scale.
 */

#ifndef MVFIF_DECOMPOSE_HPP
#define MVFIF_DECOMPOSE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "fft.hpp"
#include "filter_bank.hpp"
#include "rotation.hpp"
#include "signal.hpp"

namespace mvfif
{

    // ============================================================================
    // Inner loop
    // ============================================================================

    struct InnerLoopResult
    {
        MultivariateSignal imf;
        int N0 = 0;                 // filter applications performed
        double sc = 0.0;            // stopping value at termination
        bool converged = true;      // false iff max_inner was reached first
        long long sc_violations = 0; // stopping-value increases observed
    };

    namespace detail
    {
        /** Run fn(ch) for ch in [0, n), optionally across threads; the work is
         *  per-channel independent, so results are identical for any count. */
        template <typename F>
        inline void for_each_channel(std::size_t n, int threads, F &&fn)
        {
            const std::size_t t_count = std::min<std::size_t>(std::max(threads, 1), n);
            if (t_count <= 1)
            {
                for (std::size_t ch = 0; ch < n; ++ch)
                    fn(ch);
                return;
            }
            std::vector<std::thread> pool;
            pool.reserve(t_count - 1);
            const std::size_t per = (n + t_count - 1) / t_count;
            for (std::size_t b = 1; b < t_count; ++b)
            {
                const std::size_t lo = b * per;
                const std::size_t hi = std::min(n, lo + per);
                if (lo >= hi)
                    break;
                pool.emplace_back([&fn, lo, hi]
                                  {
                    for (std::size_t ch = lo; ch < hi; ++ch)
                        fn(ch); });
            }
            for (std::size_t ch = 0; ch < std::min(per, n); ++ch)
                fn(ch);
            for (std::thread &t : pool)
                t.join();
        }
    } // namespace detail

    /**
     * Joint per-channel filtering in the frequency domain until the change
     * applied by the latest filter application drops below delta or
     * max_inner is reached. All channels share the same iteration count
     * (the stopping value is the max over channels). At least one
     * application is always performed; a zero signal reports N₀ = 1 with
     * stopping value 0.
     */
    inline InnerLoopResult inner_loop(const MultivariateSignal &u, const FilterKernel &kernel,
                                      double delta, int max_inner, int threads = 1)
    {
        if (!(delta > 0.0))
            throw Error(Errc::BadArgument, "delta must be positive");
        if (max_inner < 1)
            throw Error(Errc::BadArgument, "max_inner must be >= 1");

        const std::size_t n = u.n;
        const std::size_t m = u.m;
        const std::vector<double> lam = eigenvalues(kernel, m);

        std::vector<double> one_minus(m);
        for (std::size_t j = 0; j < m; ++j)
            one_minus[j] = 1.0 - lam[j];

        // Initial spectra and the fixed per-channel weights λ_j²·|û_j⁰|²
        // entering the stopping value.
        std::vector<std::vector<fft::cplx>> spec(n);
        std::vector<std::vector<double>> sc_base(n);
        double max_abs_input = 0.0;
        for (std::size_t ch = 0; ch < n; ++ch)
            for (std::size_t t = 0; t < m; ++t)
                max_abs_input = std::max(max_abs_input, std::abs(u.at(ch, t)));

        detail::for_each_channel(n, threads, [&](std::size_t ch)
                                 {
            std::vector<double> chan(u.channel(ch), u.channel(ch) + m);
            spec[ch] = fft::forward_real(chan);
            sc_base[ch].resize(m);
            for (std::size_t j = 0; j < m; ++j)
                sc_base[ch][j] = lam[j] * lam[j] * std::norm(spec[ch][j]); });

        // fac_j tracks (1−λ_j)^k; every update multiplies by a value in [0,1],
        // so each bin — and hence each fixed-order sum below — never increases.
        std::vector<double> fac(m, 1.0);
        std::vector<double> per_channel_sq(n, 0.0);
        const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(m));

        int k = 0;
        double sc = 0.0;
        double prev_sc = 0.0;
        long long violations = 0;
        bool converged = false;

        while (true)
        {
            // Norm of the change the next application will make:
            // ‖λ⊙(1−λ)^k⊙û⁰‖₂/√m, max over channels.
            detail::for_each_channel(n, threads, [&](std::size_t ch)
                                     {
                const double *b = sc_base[ch].data();
                double acc = 0.0;
                for (std::size_t j = 0; j < m; ++j)
                    acc += b[j] * (fac[j] * fac[j]);
                per_channel_sq[ch] = acc; });
            double worst = 0.0;
            for (std::size_t ch = 0; ch < n; ++ch)
                worst = std::max(worst, per_channel_sq[ch]);
            sc = std::sqrt(worst) * inv_sqrt_m;

            if (k > 0 && sc > prev_sc)
                ++violations;
            prev_sc = sc;

            // Apply it.
            detail::for_each_channel(n, threads, [&](std::size_t ch)
                                     {
                fft::cplx *s = spec[ch].data();
                for (std::size_t j = 0; j < m; ++j)
                    s[j] *= one_minus[j]; });
            for (std::size_t j = 0; j < m; ++j)
                fac[j] *= one_minus[j];
            ++k;

            if (sc < delta)
            {
                converged = true;
                break;
            }
            if (k >= max_inner)
                break;
        }

        InnerLoopResult out;
        out.N0 = k;
        out.sc = sc;
        out.converged = converged;
        out.sc_violations = violations;
        out.imf = MultivariateSignal(n, m, u.sample_rate);
        out.imf.labels = u.labels;

        std::vector<double> imag_peak(n, 0.0);
        detail::for_each_channel(n, threads, [&](std::size_t ch)
                                 {
            fft::inverse_inplace(spec[ch]);
            double peak = 0.0;
            double *dst = out.imf.channel(ch);
            for (std::size_t t = 0; t < m; ++t)
            {
                peak = std::max(peak, std::abs(spec[ch][t].imag()));
                dst[t] = spec[ch][t].real();
            }
            imag_peak[ch] = peak; });

        const double residue_tol = 1e-9 * std::max(1.0, max_abs_input);
        for (std::size_t ch = 0; ch < n; ++ch)
            if (imag_peak[ch] > residue_tol)
                throw Error(Errc::ComplexResidue, "inverse transform left imaginary magnitude " +
                                                      std::to_string(imag_peak[ch]) +
                                                      " on channel " + std::to_string(ch));
        return out;
    }

    // ============================================================================
    // Outer loops
    // ============================================================================

    namespace detail
    {
        /** Snap values to multiples of 1e−12·max|x|: collapses rounding jitter
         *  that would otherwise read as extrema of a constant sequence. */
        inline void snap_to_grid(std::vector<double> &x)
        {
            double peak = 0.0;
            for (double v : x)
                peak = std::max(peak, std::abs(v));
            if (peak == 0.0)
                return;
            const double g = 1e-12 * peak;
            for (double &v : x)
                v = std::round(v / g) * g;
        }

        inline double effective_delta(const DecompositionConfig &cfg,
                                      const MultivariateSignal &residual)
        {
            if (cfg.delta)
                return *cfg.delta;
            double worst = 0.0;
            for (std::size_t ch = 0; ch < residual.n; ++ch)
                worst = std::max(worst, residual.channel_norm(ch));
            return cfg.delta_scale * worst;
        }

        inline void subtract_imf(MultivariateSignal &residual, const MultivariateSignal &imf)
        {
            for (std::size_t i = 0; i < residual.data.size(); ++i)
                residual.data[i] -= imf.data[i];
        }

        inline void crop_outputs(Decomposition &d, std::size_t ext)
        {
            if (ext == 0)
                return;
            for (MultivariateSignal &imf : d.imfs)
                imf = crop(imf, ext);
            d.trend = crop(d.trend, ext);
        }
    } // namespace detail

    /**
     * Full MvFIF decomposition: pre-extend, peel IMFs until the rotation
     * angle of the residual has fewer than 2 extrema, crop back. One L and
     * one N₀ serve all channels of a given IMF.
     */
    inline Decomposition mvfif_decompose(const MultivariateSignal &input,
                                         const DecompositionConfig &cfg = {})
    {
        validate(input);
        cfg.check();

        const std::size_t ext = (cfg.extension == ExtensionMode::None)
                                    ? 0
                                    : std::min(cfg.ext_len.value_or(input.m), input.m);
        MultivariateSignal residual = pre_extend(input, cfg.extension, ext);
        const std::size_t mE = residual.m;
        const double input_fnorm = residual.frobenius_norm();

        Decomposition out;
        int prev_L = 0;
        while (true)
        {
            if (cfg.max_imfs && out.imfs.size() >= static_cast<std::size_t>(*cfg.max_imfs))
                break;
            if (residual.frobenius_norm() < 1e-13 * input_fnorm)
                break; // only rounding debris left

            ThetaSeries theta = compute_theta(residual);
            detail::snap_to_grid(theta.values);
            const std::optional<int> L_theta = filter_length_from_theta(theta);
            if (!L_theta)
                break; // trend signal: Algorithm guard k < 2

            const long long scaled =
                2 * static_cast<long long>(std::floor(cfg.xi * static_cast<double>(*L_theta)));
            int L = static_cast<int>(std::max(1LL, scaled));
            if (cfg.monotone_L)
                L = std::max(L, prev_L);
            if (2 * static_cast<std::size_t>(L) + 1 > mE)
                break; // mask no longer fits the extended window
            prev_L = L;

            const FilterKernel kernel = build_kernel(L, cfg.filter_shape);
            const double delta = detail::effective_delta(cfg, residual);
            if (!(delta > 0.0))
                break;

            InnerLoopResult r = inner_loop(residual, kernel, delta, cfg.max_inner, cfg.threads);
            detail::subtract_imf(residual, r.imf);
            out.imfs.push_back(std::move(r.imf));
            out.meta.push_back(ImfMeta{L, r.N0, r.sc, r.converged, r.sc_violations});
        }

        out.trend = std::move(residual);
        detail::crop_outputs(out, ext);
        return out;
    }

    /**
     * Univariate FIF baseline on a single channel: identical loop shape,
     * but L comes from the Eq. (3) rule on the residual itself and the
     * guard counts the residual's own extrema.
     */
    inline Decomposition fif_decompose(const MultivariateSignal &input,
                                       const DecompositionConfig &cfg = {})
    {
        if (input.n != 1)
            throw Error(Errc::BadArgument, "fif_decompose expects a single channel, got " +
                                               std::to_string(input.n));
        validate(input);
        cfg.check();

        const std::size_t ext = (cfg.extension == ExtensionMode::None)
                                    ? 0
                                    : std::min(cfg.ext_len.value_or(input.m), input.m);
        MultivariateSignal residual = pre_extend(input, cfg.extension, ext);
        const std::size_t mE = residual.m;
        const double input_fnorm = residual.frobenius_norm();

        Decomposition out;
        int prev_L = 0;
        while (true)
        {
            if (cfg.max_imfs && out.imfs.size() >= static_cast<std::size_t>(*cfg.max_imfs))
                break;
            if (residual.frobenius_norm() < 1e-13 * input_fnorm)
                break;

            std::vector<double> chan(residual.channel(0), residual.channel(0) + mE);
            detail::snap_to_grid(chan);
            if (find_extrema(chan).count() < 2)
                break; // trend signal

            int L = filter_length_univariate(chan, cfg.xi);
            if (cfg.monotone_L)
                L = std::max(L, prev_L);
            if (2 * static_cast<std::size_t>(L) + 1 > mE)
                break;
            prev_L = L;

            const FilterKernel kernel = build_kernel(L, cfg.filter_shape);
            const double delta = detail::effective_delta(cfg, residual);
            if (!(delta > 0.0))
                break;

            InnerLoopResult r = inner_loop(residual, kernel, delta, cfg.max_inner, cfg.threads);
            detail::subtract_imf(residual, r.imf);
            out.imfs.push_back(std::move(r.imf));
            out.meta.push_back(ImfMeta{L, r.N0, r.sc, r.converged, r.sc_violations});
        }

        out.trend = std::move(residual);
        detail::crop_outputs(out, ext);
        return out;
    }

    // ============================================================================
    // Dense oracle
    // ============================================================================

    /**
     * Explicit matrix form of N₀ filter applications: (I−W)^{N₀}·u per
     * channel with W the dense circulant. Test-scale only (m ≤ 512).
     */
    inline MultivariateSignal dense_oracle_imf(const MultivariateSignal &u,
                                               const FilterKernel &kernel, int N0)
    {
        if (u.m > 512)
            throw Error(Errc::TooLarge, "dense oracle limited to m <= 512, got " +
                                            std::to_string(u.m));
        if (N0 < 0)
            throw Error(Errc::BadArgument, "N0 must be >= 0");
        const std::size_t m = u.m;
        const std::vector<double> W = dense_circulant(kernel, m);

        MultivariateSignal out = u;
        std::vector<double> cur(m), next(m);
        for (std::size_t ch = 0; ch < u.n; ++ch)
        {
            std::copy(out.channel(ch), out.channel(ch) + m, cur.begin());
            for (int step = 0; step < N0; ++step)
            {
                for (std::size_t i = 0; i < m; ++i)
                {
                    double acc = 0.0;
                    const double *row = W.data() + i * m;
                    for (std::size_t j = 0; j < m; ++j)
                        acc += row[j] * cur[j];
                    next[i] = cur[i] - acc;
                }
                std::swap(cur, next);
            }
            std::copy(cur.begin(), cur.end(), out.channel(ch));
        }
        return out;
    }

} // namespace mvfif

#endif // MVFIF_DECOMPOSE_HPP
