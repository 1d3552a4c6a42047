/**
 * Self-contained complex FFT for arbitrary lengths.
 *
 * Power-of-two sizes use an iterative radix-2 Cooley–Tukey transform;
 * every other size is handled by Bluestein's chirp-z algorithm, which
 * re-expresses the DFT as a circular convolution of a padded power-of-two
 * length. Chirp phases are computed from k² reduced modulo 2n in exact
 * integer arithmetic, so tables are reproducible bit-for-bit run to run —
 * a determinism guarantee external FFT libraries with runtime planners do
 * not make.
 *
 * Plans (bit-reversal tables, twiddles, chirp spectra) are cached per size
 * behind a mutex; transforms themselves are pure and thread-safe.
 */

#ifndef MVFIF_FFT_HPP
#define MVFIF_FFT_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numbers>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mvfif::fft
{

    using cplx = std::complex<double>;

    namespace detail
    {

        inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

        inline std::size_t next_pow2(std::size_t n)
        {
            std::size_t p = 1;
            while (p < n)
                p <<= 1;
            return p;
        }

        // ========================================================================
        // Plan: precomputed tables for one transform size
        // ========================================================================

        struct Plan
        {
            std::size_t n = 0;

            // radix-2 path
            std::vector<std::size_t> rev;  // bit-reversal permutation
            std::vector<cplx> roots;       // exp(-2πi j/n), j < n/2

            // Bluestein path (n not a power of two)
            std::size_t conv_n = 0;        // power-of-two convolution length >= 2n-1
            std::shared_ptr<Plan> inner;   // plan of size conv_n
            std::vector<cplx> chirp;       // c_k = exp(-iπ k²/n), k < n
            std::vector<cplx> bhat;        // forward FFT of the embedded conj-chirp

            explicit Plan(std::size_t size, const std::shared_ptr<Plan> &inner_plan = nullptr)
                : n(size)
            {
                if (n <= 1)
                    return;
                if (is_pow2(n))
                {
                    init_pow2();
                }
                else
                {
                    conv_n = next_pow2(2 * n - 1);
                    inner = inner_plan; // caller supplies the power-of-two plan
                    init_bluestein();
                }
            }

            void init_pow2()
            {
                rev.resize(n);
                rev[0] = 0;
                for (std::size_t i = 1; i < n; ++i)
                    rev[i] = (rev[i >> 1] >> 1) | ((i & 1) ? n >> 1 : 0);
                roots.resize(n / 2);
                const double step = -2.0 * std::numbers::pi / static_cast<double>(n);
                for (std::size_t j = 0; j < n / 2; ++j)
                    roots[j] = std::polar(1.0, step * static_cast<double>(j));
            }

            void init_bluestein()
            {
                // exact phase: k² mod 2n keeps the argument small and reproducible
                chirp.resize(n);
                const std::uint64_t two_n = 2 * static_cast<std::uint64_t>(n);
                for (std::size_t k = 0; k < n; ++k)
                {
                    const std::uint64_t k2 = (static_cast<std::uint64_t>(k) * k) % two_n;
                    const double phase = -std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n);
                    chirp[k] = std::polar(1.0, phase);
                }
                // b_j = conj(c_j) embedded circularly: b[0..n) and b[conv_n - j] = b[j]
                std::vector<cplx> b(conv_n, cplx{0.0, 0.0});
                for (std::size_t j = 0; j < n; ++j)
                {
                    b[j] = std::conj(chirp[j]);
                    if (j > 0)
                        b[conv_n - j] = std::conj(chirp[j]);
                }
                pow2_transform(*inner, b, /*inverse=*/false);
                bhat = std::move(b);
            }

            static void pow2_transform(const Plan &p, std::vector<cplx> &a, bool inverse)
            {
                const std::size_t n = p.n;
                for (std::size_t i = 0; i < n; ++i)
                    if (i < p.rev[i])
                        std::swap(a[i], a[p.rev[i]]);
                for (std::size_t len = 2; len <= n; len <<= 1)
                {
                    const std::size_t half = len >> 1;
                    const std::size_t stride = n / len;
                    for (std::size_t base = 0; base < n; base += len)
                    {
                        for (std::size_t j = 0; j < half; ++j)
                        {
                            cplx w = p.roots[j * stride];
                            if (inverse)
                                w = std::conj(w);
                            const cplx t = a[base + j + half] * w;
                            a[base + j + half] = a[base + j] - t;
                            a[base + j] = a[base + j] + t;
                        }
                    }
                }
                if (inverse)
                {
                    const double inv = 1.0 / static_cast<double>(n);
                    for (auto &x : a)
                        x *= inv;
                }
            }
        };

        // ========================================================================
        // Plan cache
        // ========================================================================

        inline std::shared_ptr<Plan> get_plan(std::size_t n)
        {
            static std::mutex mu;
            static std::unordered_map<std::size_t, std::shared_ptr<Plan>> cache;
            std::lock_guard<std::mutex> lk(mu);
            auto it = cache.find(n);
            if (it != cache.end())
                return it->second;
            std::shared_ptr<Plan> inner;
            if (n > 1 && !is_pow2(n))
            {
                const std::size_t cn = next_pow2(2 * n - 1);
                auto ii = cache.find(cn);
                inner = (ii != cache.end()) ? ii->second : std::make_shared<Plan>(cn);
                cache.emplace(cn, inner);
            }
            auto plan = std::make_shared<Plan>(n, inner);
            cache.emplace(n, plan);
            return plan;
        }

        inline void bluestein_forward(const Plan &p, std::vector<cplx> &x)
        {
            const std::size_t n = p.n;
            std::vector<cplx> a(p.conv_n, cplx{0.0, 0.0});
            for (std::size_t j = 0; j < n; ++j)
                a[j] = x[j] * p.chirp[j];
            Plan::pow2_transform(*p.inner, a, false);
            for (std::size_t j = 0; j < p.conv_n; ++j)
                a[j] *= p.bhat[j];
            Plan::pow2_transform(*p.inner, a, true);
            for (std::size_t k = 0; k < n; ++k)
                x[k] = a[k] * p.chirp[k];
        }

    } // namespace detail

    // ============================================================================
    // Public API
    // ============================================================================

    /** In-place forward DFT: X_k = Σ_j x_j·exp(-2πi jk/n). Unnormalized. */
    inline void forward_inplace(std::vector<cplx> &x)
    {
        const std::size_t n = x.size();
        if (n <= 1)
            return;
        auto plan = detail::get_plan(n);
        if (detail::is_pow2(n))
            detail::Plan::pow2_transform(*plan, x, false);
        else
            detail::bluestein_forward(*plan, x);
    }

    /** In-place inverse DFT with 1/n normalization (conjugation trick). */
    inline void inverse_inplace(std::vector<cplx> &x)
    {
        const std::size_t n = x.size();
        if (n <= 1)
            return;
        for (auto &v : x)
            v = std::conj(v);
        forward_inplace(x);
        const double inv = 1.0 / static_cast<double>(n);
        for (auto &v : x)
            v = std::conj(v) * inv;
    }

    inline std::vector<cplx> forward(std::vector<cplx> x)
    {
        forward_inplace(x);
        return x;
    }

    inline std::vector<cplx> inverse(std::vector<cplx> x)
    {
        inverse_inplace(x);
        return x;
    }

    /** Forward DFT of a real sequence (returned as full complex spectrum). */
    inline std::vector<cplx> forward_real(const std::vector<double> &x)
    {
        std::vector<cplx> c(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            c[i] = cplx{x[i], 0.0};
        forward_inplace(c);
        return c;
    }

} // namespace mvfif::fft

#endif // MVFIF_FFT_HPP
