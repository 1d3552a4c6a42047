/**
 * Filter-bank construction for iterative filtering.
 *
 * Kernels are built to satisfy the convergence theorem's hypotheses by
 * construction: a symmetric nonnegative base kernel h (unit sum) is
 * discretely self-convolved with itself, so the DFT of the result is the
 * elementwise square of a real spectrum — guaranteeing real eigenvalues in
 * [0, 1] up to rounding. The base is sampled at L+1 uniform interior
 * points of (−1, 1) so the self-convolution has support exactly 2L+1; no
 * trimming is applied, because cutting tail mass after convolution destroys
 * the squared-spectrum identity and can push eigenvalues negative (the
 * 3-point triangle base trimmed back to 3 taps has λ_min = −1/7).
 *
 * Eigenvalues of the induced m×m circulant operator (the matrix whose rows
 * are circular shifts of the kernel) are the DFT of its first column; the
 * symmetry and nonnegativity of the spectrum are asserted before clamping
 * into [0, 1].
 */

#ifndef MVFIF_FILTER_BANK_HPP
#define MVFIF_FILTER_BANK_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "fft.hpp"
#include "signal.hpp"

namespace mvfif
{

    // ============================================================================
    // Types
    // ============================================================================

    /** Normalized self-convolved filter: 2L+1 symmetric nonnegative weights. */
    struct FilterKernel
    {
        std::vector<double> weights; // length 2L+1, even-symmetric, sum 1
        std::vector<double> base;    // the L+1 pre-convolution samples of h
        int L = 0;                   // half-length in samples
        FilterShape shape = FilterShape::Bump;
    };

    /** Pre-clamp spectrum diagnostics from an eigenvalue computation. */
    struct SpectrumDiagnostics
    {
        double max_abs_imag = 0.0; // symmetry forces this to rounding level
        double min_real = 0.0;     // self-convolution forces this >= -eps
        double max_real = 0.0;     // normalization forces this <= 1 + eps
    };

    // ============================================================================
    // Kernel construction
    // ============================================================================

    namespace detail
    {
        inline double shape_value(FilterShape shape, double x)
        {
            const double x2 = x * x;
            if (x2 >= 1.0)
                return 0.0;
            switch (shape)
            {
            case FilterShape::Bump:
                return std::exp(-1.0 / (1.0 - x2));
            case FilterShape::Triangle:
                return 1.0 - std::abs(x);
            }
            return 0.0;
        }
    } // namespace detail

    /**
     * Build the 2L+1-tap kernel for half-length L: sample the shape at the
     * L+1 points x_j = (j − L/2)/(L/2 + 1), normalize, self-convolve,
     * renormalize, and mirror the lower half so symmetry is exact.
     */
    inline FilterKernel build_kernel(int L, FilterShape shape)
    {
        if (L < 1)
            throw Error(Errc::InvalidLength, "kernel half-length must be >= 1, got " +
                                                 std::to_string(L));

        FilterKernel k;
        k.L = L;
        k.shape = shape;

        // Base kernel h: L+1 samples symmetric about the (possibly half-integer)
        // center c = L/2, strictly inside (-1, 1).
        const int nb = L + 1;
        const double c = 0.5 * static_cast<double>(L);
        k.base.resize(nb);
        double hsum = 0.0;
        for (int j = 0; j < nb; ++j)
        {
            const double x = (static_cast<double>(j) - c) / (c + 1.0);
            k.base[j] = detail::shape_value(shape, x);
            hsum += k.base[j];
        }
        for (double &v : k.base)
            v /= hsum;

        // w = h ⊛ h, support exactly 2L+1. Direct lower-half products for
        // small kernels; FFT convolution once the O(L²) form starts to cost
        // (the decomposer reaches L in the tens of thousands on long
        // windows). A circular convolution at length 2L+1 equals the linear
        // one — the support fits without wraparound — and the mirror step
        // keeps the symmetry exact on both paths.
        const int nw = 2 * L + 1;
        k.weights.assign(nw, 0.0);
        if (L <= 512)
        {
            for (int i = 0; i <= L; ++i)
            {
                double acc = 0.0;
                const int j_lo = std::max(0, i - L);
                const int j_hi = std::min(L, i);
                for (int j = j_lo; j <= j_hi; ++j)
                    acc += k.base[j] * k.base[i - j];
                k.weights[i] = acc;
                k.weights[nw - 1 - i] = acc;
            }
        }
        else
        {
            std::vector<double> padded(static_cast<std::size_t>(nw), 0.0);
            std::copy(k.base.begin(), k.base.end(), padded.begin());
            std::vector<fft::cplx> spec = fft::forward_real(padded);
            for (fft::cplx &v : spec)
                v *= v;
            fft::inverse_inplace(spec);
            for (int i = 0; i <= L; ++i)
            {
                // Rounding ripple can leave ~1e-18 negatives where the true
                // kernel vanishes; the weights are nonnegative by contract.
                const double acc = std::max(0.0, spec[static_cast<std::size_t>(i)].real());
                k.weights[i] = acc;
                k.weights[nw - 1 - i] = acc;
            }
        }
        double wsum = 0.0;
        for (double v : k.weights)
            wsum += v;
        for (double &v : k.weights)
            v /= wsum;
        return k;
    }

    // ============================================================================
    // Circulant spectrum
    // ============================================================================

    namespace detail
    {
        /** First column of the m×m circulant: center tap at 0, right half at
         *  1..L, left half wrapped to m−L..m−1. */
        inline std::vector<double> circulant_first_column(const FilterKernel &k, std::size_t m)
        {
            const std::size_t L = static_cast<std::size_t>(k.L);
            if (2 * L + 1 > m)
                throw Error(Errc::KernelTooWide, "kernel support " + std::to_string(2 * L + 1) +
                                                     " exceeds signal length " + std::to_string(m));
            std::vector<double> col(m, 0.0);
            col[0] = k.weights[L];
            for (std::size_t q = 1; q <= L; ++q)
            {
                col[q] = k.weights[L + q];
                col[m - q] = k.weights[L - q];
            }
            return col;
        }
    } // namespace detail

    /** Raw (unclamped, complex) DFT of the circulant first column. */
    inline std::vector<fft::cplx> eigenvalues_raw(const FilterKernel &k, std::size_t m)
    {
        return fft::forward_real(detail::circulant_first_column(k, m));
    }

    /**
     * Clamped real eigenvalues λ_p ∈ [0, 1] of the filter's circulant
     * operator, with pre-clamp diagnostics. Throws ComplexResidue when the
     * raw spectrum violates the symmetry (|Im| < 1e−10) or nonnegativity
     * (Re > −1e−10) bounds — the signature of a corrupted (asymmetric or
     * non-self-convolved) kernel.
     */
    inline std::pair<std::vector<double>, SpectrumDiagnostics>
    eigenvalues_with_diagnostics(const FilterKernel &k, std::size_t m)
    {
        const std::vector<fft::cplx> raw = eigenvalues_raw(k, m);
        SpectrumDiagnostics diag;
        diag.min_real = raw[0].real();
        diag.max_real = raw[0].real();
        for (const fft::cplx &z : raw)
        {
            diag.max_abs_imag = std::max(diag.max_abs_imag, std::abs(z.imag()));
            diag.min_real = std::min(diag.min_real, z.real());
            diag.max_real = std::max(diag.max_real, z.real());
        }
        if (diag.max_abs_imag >= 1e-10)
            throw Error(Errc::ComplexResidue, "kernel spectrum has imaginary magnitude " +
                                                  std::to_string(diag.max_abs_imag) +
                                                  "; kernel is not symmetric");
        if (diag.min_real < -1e-10)
            throw Error(Errc::ComplexResidue, "kernel spectrum dips to " +
                                                  std::to_string(diag.min_real) +
                                                  "; kernel is not a self-convolution");

        std::vector<double> lam(m);
        for (std::size_t p = 0; p < m; ++p)
            lam[p] = std::clamp(raw[p].real(), 0.0, 1.0);
        return {std::move(lam), diag};
    }

    /** Clamped real eigenvalues; see eigenvalues_with_diagnostics. */
    inline std::vector<double> eigenvalues(const FilterKernel &k, std::size_t m)
    {
        return eigenvalues_with_diagnostics(k, m).first;
    }

    /** Dense m×m circulant W (row-major), W[i][j] = col[(i−j) mod m]. */
    inline std::vector<double> dense_circulant(const FilterKernel &k, std::size_t m)
    {
        const std::vector<double> col = detail::circulant_first_column(k, m);
        std::vector<double> W(m * m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                W[i * m + j] = col[(i + m - j) % m];
        return W;
    }

} // namespace mvfif

#endif // MVFIF_FILTER_BANK_HPP
