/**
 * Core data model: multichannel signals, decompositions, configuration.
 *
 * A MultivariateSignal is an n×m real matrix (channels × time) with a
 * sampling rate; channels are rows, mirroring the u_i row-vector layout of
 * the iterative-filtering literature. A Decomposition is an ordered list of
 * IMFs (each itself n×m) plus a trend and per-IMF metadata; because IMFs
 * are produced by exact subtraction from the running residual, the sum of
 * all components reproduces the input to rounding error by construction.
 *
 * Boundary handling for the FFT's implicit periodicity is even reflection
 * about both endpoints (endpoint not duplicated), applied before
 * decomposition and inverted by crop() afterwards.
 */

#ifndef MVFIF_SIGNAL_HPP
#define MVFIF_SIGNAL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace mvfif
{

    // ============================================================================
    // MultivariateSignal
    // ============================================================================

    struct MultivariateSignal
    {
        std::size_t n = 0;              // channels
        std::size_t m = 0;              // samples per channel
        double sample_rate = 1.0;       // Hz
        std::vector<double> data;       // row-major, data[ch*m + t]
        std::vector<std::string> labels; // empty or size n

        MultivariateSignal() = default;

        MultivariateSignal(std::size_t channels, std::size_t samples, double fs = 1.0)
            : n(channels), m(samples), sample_rate(fs), data(channels * samples, 0.0) {}

        double &at(std::size_t ch, std::size_t t) { return data[ch * m + t]; }
        double at(std::size_t ch, std::size_t t) const { return data[ch * m + t]; }

        double *channel(std::size_t ch) { return data.data() + ch * m; }
        const double *channel(std::size_t ch) const { return data.data() + ch * m; }

        /** Build from per-channel vectors; throws RaggedChannels on length mismatch. */
        static MultivariateSignal from_channels(const std::vector<std::vector<double>> &chans,
                                                double fs = 1.0)
        {
            if (chans.empty() || chans.front().empty())
                throw Error(Errc::EmptySignal, "no channels or no samples");
            MultivariateSignal s(chans.size(), chans.front().size(), fs);
            for (std::size_t c = 0; c < chans.size(); ++c)
            {
                if (chans[c].size() != s.m)
                    throw Error(Errc::RaggedChannels, "channel " + std::to_string(c) +
                                                          " has length " + std::to_string(chans[c].size()) +
                                                          ", expected " + std::to_string(s.m));
                std::copy(chans[c].begin(), chans[c].end(), s.channel(c));
            }
            return s;
        }

        /** Euclidean norm of one channel. */
        double channel_norm(std::size_t ch) const
        {
            double acc = 0.0;
            const double *p = channel(ch);
            for (std::size_t t = 0; t < m; ++t)
                acc += p[t] * p[t];
            return std::sqrt(acc);
        }

        /** Frobenius norm of the whole matrix. */
        double frobenius_norm() const
        {
            double acc = 0.0;
            for (double v : data)
                acc += v * v;
            return std::sqrt(acc);
        }
    };

    // ============================================================================
    // Decomposition
    // ============================================================================

    /** Per-IMF record: mask half-length, inner iterations, final stopping value. */
    struct ImfMeta
    {
        int L = 0;                  // filter half-length (samples)
        int N0 = 0;                 // inner-loop iterations applied
        double stopping_value = 0;  // SC at termination
        bool converged = true;      // false iff max_inner was hit
        long long sc_violations = 0; // count of SC increases observed (expected 0)
    };

    struct Decomposition
    {
        std::vector<MultivariateSignal> imfs;
        MultivariateSignal trend;
        std::vector<ImfMeta> meta;

        std::size_t imf_count() const { return imfs.size(); }
    };

    /**
     * Max-over-channels relative reconstruction error of a decomposition
     * against the signal it came from. Channels with zero input norm
     * contribute their absolute residual norm instead.
     */
    inline double reconstruction_error(const Decomposition &d, const MultivariateSignal &input)
    {
        double worst = 0.0;
        for (std::size_t c = 0; c < input.n; ++c)
        {
            double acc = 0.0;
            for (std::size_t t = 0; t < input.m; ++t)
            {
                double sum = d.trend.at(c, t);
                for (const auto &imf : d.imfs)
                    sum += imf.at(c, t);
                const double diff = input.at(c, t) - sum;
                acc += diff * diff;
            }
            const double nrm = input.channel_norm(c);
            const double err = std::sqrt(acc) / (nrm > 0.0 ? nrm : 1.0);
            worst = std::max(worst, err);
        }
        return worst;
    }

    // ============================================================================
    // DecompositionConfig
    // ============================================================================

    enum class FilterShape
    {
        Bump,     // normalized exp(-1/(1-x²)) on (-1,1): C^∞, compactly supported
        Triangle, // 1-|x| on (-1,1)
    };

    enum class ExtensionMode
    {
        None,    // rely on the FFT's periodicity assumption directly
        Reflect, // even reflection about both endpoints
    };

    inline const char *to_string(FilterShape s)
    {
        return s == FilterShape::Bump ? "bump" : "triangle";
    }

    inline const char *to_string(ExtensionMode e)
    {
        return e == ExtensionMode::None ? "none" : "reflect";
    }

    struct DecompositionConfig
    {
        double xi = 1.6;                  // mask-length multiplier
        std::optional<double> delta;      // absolute stopping threshold; when unset,
                                          // delta_scale · max_i ||u_i||₂ is used per IMF
        double delta_scale = 0.0316227766016837933; // √(1e−3): EMD-style squared-relative 1e−3
        int max_inner = 200;              // inner-loop cap (NonConvergence flag past this)
        std::optional<int> max_imfs;      // outer-loop cap; unset = run to trend
        ExtensionMode extension = ExtensionMode::Reflect;
        std::optional<std::size_t> ext_len; // per-side samples; unset = full mirror (m)
        FilterShape filter_shape = FilterShape::Bump;
        bool monotone_L = true;           // enforce non-decreasing L across IMFs
        int threads = 1;                  // per-channel transform parallelism

        void check() const
        {
            if (!(xi > 0.0))
                throw Error(Errc::BadArgument, "xi must be positive");
            if (delta && !(*delta > 0.0))
                throw Error(Errc::BadArgument, "delta must be positive");
            if (max_inner < 1)
                throw Error(Errc::BadArgument, "max_inner must be >= 1");
            if (threads < 1)
                throw Error(Errc::BadArgument, "threads must be >= 1");
        }
    };

    // ============================================================================
    // Validation and boundary handling
    // ============================================================================

    /** Checks the MultivariateSignal invariants; returns the signal on success. */
    inline const MultivariateSignal &validate(const MultivariateSignal &s)
    {
        if (s.n == 0 || s.m == 0)
            throw Error(Errc::EmptySignal, "signal has no data");
        if (s.m < 3)
            throw Error(Errc::TooShort, "need at least 3 samples, got " + std::to_string(s.m));
        if (s.data.size() != s.n * s.m)
            throw Error(Errc::RaggedChannels, "storage does not match n*m");
        for (double v : s.data)
            if (!std::isfinite(v))
                throw Error(Errc::NonFinite, "signal contains NaN or Inf");
        return s;
    }

    namespace detail
    {
        /** Fold an out-of-range position into [0, m) by even reflection (period 2(m-1)). */
        inline std::size_t reflect_index(long long p, std::size_t m)
        {
            if (m == 1)
                return 0;
            const long long period = 2 * (static_cast<long long>(m) - 1);
            long long q = p % period;
            if (q < 0)
                q += period;
            if (q >= static_cast<long long>(m))
                q = period - q;
            return static_cast<std::size_t>(q);
        }
    } // namespace detail

    /**
     * Pre-extend every channel by ext_len samples per side.
     * Reflect mode mirrors about both endpoints without duplicating them:
     * [1,2,3,4] with ext_len 2 becomes [3,2,1,2,3,4,3,2].
     */
    inline MultivariateSignal pre_extend(const MultivariateSignal &s, ExtensionMode mode,
                                         std::size_t ext_len)
    {
        if (mode == ExtensionMode::None || ext_len == 0)
            return s;
        if (ext_len > s.m)
            throw Error(Errc::ExtensionTooLong, "ext_len " + std::to_string(ext_len) +
                                                    " exceeds signal length " + std::to_string(s.m));
        MultivariateSignal out(s.n, s.m + 2 * ext_len, s.sample_rate);
        out.labels = s.labels;
        for (std::size_t c = 0; c < s.n; ++c)
        {
            const double *src = s.channel(c);
            double *dst = out.channel(c);
            for (std::size_t e = 0; e < out.m; ++e)
            {
                const long long p = static_cast<long long>(e) - static_cast<long long>(ext_len);
                dst[e] = src[detail::reflect_index(p, s.m)];
            }
        }
        return out;
    }

    /** Remove ext_len samples from each side of every channel (inverse of pre_extend). */
    inline MultivariateSignal crop(const MultivariateSignal &s, std::size_t ext_len)
    {
        if (ext_len == 0)
            return s;
        if (2 * ext_len >= s.m)
            throw Error(Errc::ExtensionTooLong, "crop of " + std::to_string(ext_len) +
                                                    " per side exhausts length " + std::to_string(s.m));
        MultivariateSignal out(s.n, s.m - 2 * ext_len, s.sample_rate);
        out.labels = s.labels;
        for (std::size_t c = 0; c < s.n; ++c)
            std::copy(s.channel(c) + ext_len, s.channel(c) + ext_len + out.m, out.channel(c));
        return out;
    }

} // namespace mvfif

#endif // MVFIF_SIGNAL_HPP
