/**
 * Spectral and statistical diagnostics for decompositions: periodogram
 * PSD and ensemble averages, IMF correlation matrices, SNR, and the
 * cross-channel frequency-alignment report.
 *
 * The PSD is the plain one-sided periodogram |DFT|²/(m·fs) with interior
 * bins doubled, so the discrete Parseval identity Σ PSD·Δf = mean square
 * holds exactly up to rounding; an optional Hann window trades that
 * identity for leakage suppression. Correlation between IMFs uses the
 * population covariance over the time axis (the normalization cancels in
 * the ratio). Alignment elects, per channel, the IMF carrying the most
 * PSD power at the bin nearest the target frequency — the IMF in whose
 * spectrum that bin dominates — and a common oscillation is aligned when
 * every channel elects the same IMF index.
 */

#ifndef MVFIF_ANALYSIS_HPP
#define MVFIF_ANALYSIS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "errors.hpp"
#include "fft.hpp"
#include "signal.hpp"

namespace mvfif
{

    // ============================================================================
    // Power spectral density
    // ============================================================================

    /** One-sided spectrum: ⌊m/2⌋+1 bins from 0 to the Nyquist rate. */
    struct PsdCurve
    {
        std::vector<double> freq;  // Hz, strictly increasing from 0
        std::vector<double> power; // nonnegative
        int imf_index = -1;        // context tag, -1 when not from an IMF
        std::size_t channel = 0;   // context tag
    };

    /**
     * One-sided periodogram of a single channel. Interior bins are doubled
     * (DC never; the exact Nyquist bin of an even-length signal never), so
     * Σ power·Δf equals the channel's mean square.
     */
    inline PsdCurve psd(const std::vector<double> &x, double sample_rate, bool hann = false)
    {
        const std::size_t m = x.size();
        if (m < 4)
            throw Error(Errc::TooShort, "psd needs m >= 4, got " + std::to_string(m));
        if (!(sample_rate > 0.0))
            throw Error(Errc::BadArgument, "sample_rate must be positive");

        std::vector<double> buf = x;
        double win_power = 1.0;
        if (hann)
        {
            double acc = 0.0;
            for (std::size_t t = 0; t < m; ++t)
            {
                const double w = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi *
                                                       static_cast<double>(t) /
                                                       static_cast<double>(m - 1)));
                buf[t] *= w;
                acc += w * w;
            }
            win_power = acc / static_cast<double>(m);
        }

        const std::vector<fft::cplx> spec = fft::forward_real(buf);
        const std::size_t half = m / 2;
        PsdCurve out;
        out.freq.resize(half + 1);
        out.power.resize(half + 1);
        const double scale = 1.0 / (static_cast<double>(m) * sample_rate * win_power);
        for (std::size_t k = 0; k <= half; ++k)
        {
            out.freq[k] = static_cast<double>(k) * sample_rate / static_cast<double>(m);
            double p = std::norm(spec[k]) * scale;
            const bool nyquist_bin = (m % 2 == 0) && (k == half);
            if (k != 0 && !nyquist_bin)
                p *= 2.0;
            out.power[k] = p;
        }
        return out;
    }

    /** Averaged PSD with the bookkeeping of partial ensembles. */
    struct EnsemblePsd
    {
        PsdCurve mean;
        std::size_t used = 0;    // realizations contributing
        std::size_t skipped = 0; // realizations lacking the requested IMF
    };

    /**
     * Pointwise mean of per-realization PSDs of one IMF channel across an
     * ensemble of decompositions, summed in list (realization) order.
     * Realizations without the requested IMF index are skipped and counted.
     */
    inline EnsemblePsd ensemble_psd(const std::vector<Decomposition> &ensemble,
                                    std::size_t imf_index, std::size_t channel,
                                    double sample_rate)
    {
        if (ensemble.empty())
            throw Error(Errc::EmptyEnsemble, "no decompositions given");
        EnsemblePsd out;
        for (const Decomposition &d : ensemble)
        {
            if (imf_index >= d.imfs.size())
            {
                ++out.skipped;
                continue;
            }
            const MultivariateSignal &imf = d.imfs[imf_index];
            std::vector<double> chan(imf.channel(channel), imf.channel(channel) + imf.m);
            PsdCurve cur = psd(chan, sample_rate);
            if (out.used == 0)
                out.mean = std::move(cur);
            else
            {
                if (cur.power.size() != out.mean.power.size())
                    throw Error(Errc::RaggedChannels, "ensemble members disagree on length");
                for (std::size_t k = 0; k < cur.power.size(); ++k)
                    out.mean.power[k] += cur.power[k];
            }
            ++out.used;
        }
        if (out.used == 0)
            throw Error(Errc::EmptyEnsemble, "no realization contains IMF " +
                                                 std::to_string(imf_index));
        for (double &p : out.mean.power)
            p /= static_cast<double>(out.used);
        out.mean.imf_index = static_cast<int>(imf_index);
        out.mean.channel = channel;
        return out;
    }

    /** Frequency of the largest non-DC PSD bin. */
    inline double dominant_frequency(const PsdCurve &curve)
    {
        std::size_t best = 1;
        for (std::size_t k = 2; k < curve.power.size(); ++k)
            if (curve.power[k] > curve.power[best])
                best = k;
        return curve.freq[best];
    }

    // ============================================================================
    // Correlation
    // ============================================================================

    /** Correlation coefficients between the usable IMFs of one channel. */
    struct CorrelationMatrix
    {
        std::size_t K = 0;                  // usable IMF count
        std::vector<double> c;              // K×K row-major
        std::vector<std::size_t> imf_index; // original index of each row/column
        std::vector<std::size_t> excluded;  // degenerate IMFs left out

        double at(std::size_t i, std::size_t j) const { return c[i * K + j]; }
    };

    /**
     * c_ij = cov(IMF_i, IMF_j)/(σ_i σ_j) over the time axis of one channel,
     * population normalization. IMFs whose standard deviation is below
     * 1e−14·‖reconstructed input channel‖₂ are excluded and reported;
     * fewer than 2 usable IMFs is an error.
     */
    inline CorrelationMatrix correlation_matrix(const Decomposition &d, std::size_t channel)
    {
        const std::size_t K_all = d.imfs.size();
        const std::size_t m = d.trend.m;

        // Reconstruct the input channel to scale the degeneracy threshold.
        std::vector<double> recon(m, 0.0);
        for (std::size_t t = 0; t < m; ++t)
        {
            double acc = d.trend.at(channel, t);
            for (const MultivariateSignal &imf : d.imfs)
                acc += imf.at(channel, t);
            recon[t] = acc;
        }
        double input_norm = 0.0;
        for (double v : recon)
            input_norm += v * v;
        input_norm = std::sqrt(input_norm);
        const double sigma_floor = 1e-14 * input_norm;

        std::vector<double> mean(K_all, 0.0), sigma(K_all, 0.0);
        CorrelationMatrix out;
        for (std::size_t i = 0; i < K_all; ++i)
        {
            const double *x = d.imfs[i].channel(channel);
            double mu = 0.0;
            for (std::size_t t = 0; t < m; ++t)
                mu += x[t];
            mu /= static_cast<double>(m);
            double var = 0.0;
            for (std::size_t t = 0; t < m; ++t)
                var += (x[t] - mu) * (x[t] - mu);
            var /= static_cast<double>(m);
            mean[i] = mu;
            sigma[i] = std::sqrt(var);
            if (sigma[i] > sigma_floor)
                out.imf_index.push_back(i);
            else
                out.excluded.push_back(i);
        }

        out.K = out.imf_index.size();
        if (out.K < 2)
            throw Error(Errc::DegenerateImf, "fewer than 2 IMFs with usable variance");

        out.c.assign(out.K * out.K, 0.0);
        for (std::size_t a = 0; a < out.K; ++a)
        {
            out.c[a * out.K + a] = 1.0;
            const std::size_t i = out.imf_index[a];
            const double *xi = d.imfs[i].channel(channel);
            for (std::size_t b = a + 1; b < out.K; ++b)
            {
                const std::size_t j = out.imf_index[b];
                const double *xj = d.imfs[j].channel(channel);
                double cov = 0.0;
                for (std::size_t t = 0; t < m; ++t)
                    cov += (xi[t] - mean[i]) * (xj[t] - mean[j]);
                cov /= static_cast<double>(m);
                const double r = std::clamp(cov / (sigma[i] * sigma[j]), -1.0, 1.0);
                out.c[a * out.K + b] = r;
                out.c[b * out.K + a] = r;
            }
        }
        return out;
    }

    /** Pearson correlation of two equal-length series. */
    inline double pearson(const std::vector<double> &a, const std::vector<double> &b)
    {
        if (a.size() != b.size() || a.empty())
            throw Error(Errc::BadArgument, "pearson needs equal nonempty series");
        const double inv = 1.0 / static_cast<double>(a.size());
        double ma = 0.0, mb = 0.0;
        for (std::size_t t = 0; t < a.size(); ++t)
        {
            ma += a[t];
            mb += b[t];
        }
        ma *= inv;
        mb *= inv;
        double cov = 0.0, va = 0.0, vb = 0.0;
        for (std::size_t t = 0; t < a.size(); ++t)
        {
            const double da = a[t] - ma;
            const double db = b[t] - mb;
            cov += da * db;
            va += da * da;
            vb += db * db;
        }
        if (va == 0.0 || vb == 0.0)
            throw Error(Errc::DegenerateImf, "constant series in correlation");
        return cov / std::sqrt(va * vb);
    }

    // ============================================================================
    // SNR
    // ============================================================================

    /** SNR in dB: 20·log₁₀(‖signal‖₂ / ‖noise‖₂). */
    inline double snr(const std::vector<double> &clean, const std::vector<double> &noise)
    {
        if (clean.size() != noise.size() || clean.empty())
            throw Error(Errc::BadArgument, "snr needs equal nonempty series");
        double es = 0.0, en = 0.0;
        for (std::size_t t = 0; t < clean.size(); ++t)
        {
            es += clean[t] * clean[t];
            en += noise[t] * noise[t];
        }
        if (en == 0.0)
            throw Error(Errc::ZeroNoise, "noise channel is identically zero");
        return 20.0 * std::log10(std::sqrt(es) / std::sqrt(en));
    }

    // ============================================================================
    // Frequency alignment
    // ============================================================================

    /** Per-target alignment verdict: which IMF owns the target's PSD bin. */
    struct AlignmentEntry
    {
        double target_hz = 0.0;
        std::vector<int> imf_per_channel;       // elected IMF index per channel
        std::vector<double> dominant_hz;        // that IMF's dominant frequency
        bool aligned = false;                   // all channels elect the same IMF
    };

    using AlignmentReport = std::vector<AlignmentEntry>;

    /**
     * For each target frequency and each channel, elect the IMF with the
     * largest PSD power at the bin nearest the target — when any IMF's
     * spectrum peaks at that bin, this picks the one actually carrying the
     * oscillation (ties to the lower index) — and report that IMF's
     * dominant frequency plus whether all channels agree.
     */
    inline AlignmentReport alignment_report(const Decomposition &d,
                                            const std::vector<double> &target_freqs,
                                            double sample_rate)
    {
        const std::size_t n = d.trend.n;
        const std::size_t K = d.imfs.size();

        // PSD of every (imf, channel) pair, computed once.
        std::vector<std::vector<PsdCurve>> curves(K, std::vector<PsdCurve>(n));
        for (std::size_t i = 0; i < K; ++i)
            for (std::size_t c = 0; c < n; ++c)
            {
                std::vector<double> chan(d.imfs[i].channel(c), d.imfs[i].channel(c) + d.imfs[i].m);
                curves[i][c] = psd(chan, sample_rate);
            }
        const std::size_t half = d.trend.m / 2;
        const double bin_width = sample_rate / static_cast<double>(d.trend.m);

        AlignmentReport report;
        for (double target : target_freqs)
        {
            const std::size_t bin = static_cast<std::size_t>(std::clamp(
                std::llround(target / bin_width), 0LL, static_cast<long long>(half)));
            AlignmentEntry entry;
            entry.target_hz = target;
            entry.imf_per_channel.resize(n, -1);
            entry.dominant_hz.resize(n, 0.0);
            for (std::size_t c = 0; c < n; ++c)
            {
                double best_power = -1.0;
                for (std::size_t i = 0; i < K; ++i)
                {
                    if (curves[i][c].power[bin] > best_power)
                    {
                        best_power = curves[i][c].power[bin];
                        entry.imf_per_channel[c] = static_cast<int>(i);
                        entry.dominant_hz[c] = dominant_frequency(curves[i][c]);
                    }
                }
            }
            entry.aligned = K > 0;
            for (std::size_t c = 1; c < n; ++c)
                if (entry.imf_per_channel[c] != entry.imf_per_channel[0])
                    entry.aligned = false;
            report.push_back(std::move(entry));
        }
        return report;
    }

} // namespace mvfif

#endif // MVFIF_ANALYSIS_HPP
