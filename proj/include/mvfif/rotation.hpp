/**
 * Rotation geometry: inter-sample rotation angle, extrema detection, and
 * filter-length selection.
 *
 * The multivariate extension of iterative filtering replaces counting
 * extrema of a scalar signal with measuring how fast the n-dimensional
 * sample vector v(t) rotates: θ(t) = arccos(v̂(t)·v̂(t−1)), following the
 * multivariate FIF construction of Cicone. Half the average distance
 * between consecutive extrema of θ then plays the role the average
 * inter-extrema distance plays in the univariate method (Eq. (3) of the
 * FIF literature: L = 2⌊ξN/k⌋).
 *
 * Extrema are detected on plateau-compressed sequences: runs of equal
 * values collapse to their midpoint index, and a compressed interior point
 * is an extremum when both compressed neighbors lie strictly on the same
 * side. Boundary samples are never extrema.
 */

#ifndef MVFIF_ROTATION_HPP
#define MVFIF_ROTATION_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "signal.hpp"

namespace mvfif
{

    // ============================================================================
    // Types
    // ============================================================================

    /** Rotation-angle series θ(t), length m−1, each value in [0, π] radians. */
    struct ThetaSeries
    {
        std::vector<double> values;      // θ at each consecutive sample pair
        std::size_t source_length = 0;   // m of the originating signal
        std::size_t degenerate_count = 0; // pairs where a near-zero column forced θ = 0
    };

    /** Sorted interior extrema indices (maxima and minima merged). */
    struct ExtremaSet
    {
        std::vector<std::size_t> indices;
        std::size_t count() const { return indices.size(); }
    };

    // ============================================================================
    // Operations
    // ============================================================================

    /**
     * Rotation angle between consecutive sample vectors:
     * θ(t) = arccos(clamp(v(t)·v(t−1) / (‖v(t)‖‖v(t−1)‖), −1, 1)).
     * Columns with norm ≤ 1e−14·(max column norm) yield θ = 0 and are
     * counted in degenerate_count instead of raising an error.
     */
    inline ThetaSeries compute_theta(const MultivariateSignal &s)
    {
        if (s.m < 2)
            throw Error(Errc::SignalTooShort, "compute_theta needs m >= 2, got " +
                                                  std::to_string(s.m));

        std::vector<double> col_norm(s.m, 0.0);
        double max_norm = 0.0;
        for (std::size_t t = 0; t < s.m; ++t)
        {
            double acc = 0.0;
            for (std::size_t c = 0; c < s.n; ++c)
            {
                const double v = s.at(c, t);
                acc += v * v;
            }
            col_norm[t] = std::sqrt(acc);
            max_norm = std::max(max_norm, col_norm[t]);
        }
        const double tiny = 1e-14 * max_norm;

        ThetaSeries out;
        out.source_length = s.m;
        out.values.resize(s.m - 1);
        for (std::size_t t = 1; t < s.m; ++t)
        {
            if (col_norm[t] <= tiny || col_norm[t - 1] <= tiny)
            {
                out.values[t - 1] = 0.0;
                ++out.degenerate_count;
                continue;
            }
            double dot = 0.0;
            for (std::size_t c = 0; c < s.n; ++c)
                dot += s.at(c, t) * s.at(c, t - 1);
            dot /= col_norm[t] * col_norm[t - 1];
            dot = std::clamp(dot, -1.0, 1.0);
            out.values[t - 1] = std::acos(dot);
        }
        return out;
    }

    /**
     * Strict interior local extrema after plateau compression: runs of
     * equal values collapse to their midpoint index; a compressed point is
     * an extremum when both compressed neighbors lie strictly on the same
     * side. Sequences shorter than 3 samples have no extrema.
     */
    inline ExtremaSet find_extrema(const std::vector<double> &x)
    {
        ExtremaSet out;
        if (x.size() < 3)
            return out;

        // Compress equal-value runs to (midpoint index, value).
        std::vector<std::size_t> rep;
        std::vector<double> val;
        std::size_t i = 0;
        while (i < x.size())
        {
            std::size_t j = i;
            while (j + 1 < x.size() && x[j + 1] == x[i])
                ++j;
            rep.push_back((i + j) / 2);
            val.push_back(x[i]);
            i = j + 1;
        }

        for (std::size_t p = 1; p + 1 < rep.size(); ++p)
        {
            const bool is_max = val[p - 1] < val[p] && val[p + 1] < val[p];
            const bool is_min = val[p - 1] > val[p] && val[p + 1] > val[p];
            if (is_max || is_min)
                out.indices.push_back(rep[p]);
        }
        return out;
    }

    inline ExtremaSet find_extrema(const ThetaSeries &theta)
    {
        return find_extrema(theta.values);
    }

    /**
     * Mask half-length from the rotation angle: double the average distance
     * between consecutive extrema of θ, rounded to nearest and floored at 1.
     * Returns nullopt (trend signal) when θ has fewer than 2 extrema, which
     * terminates the outer decomposition loop.
     */
    inline std::optional<int> filter_length_from_theta(const ThetaSeries &theta)
    {
        const ExtremaSet ex = find_extrema(theta);
        if (ex.count() < 2)
            return std::nullopt;
        double gap_sum = 0.0;
        for (std::size_t p = 1; p < ex.indices.size(); ++p)
            gap_sum += static_cast<double>(ex.indices[p] - ex.indices[p - 1]);
        const double mean_gap = gap_sum / static_cast<double>(ex.indices.size() - 1);
        const long long L = std::llround(2.0 * mean_gap);
        return static_cast<int>(std::max(1LL, L));
    }

    /**
     * Univariate mask half-length, Eq. (3): L = 2⌊ξ·N/k⌋ with N the series
     * length and k its extrema count; floored at 1.
     */
    inline int filter_length_univariate(const std::vector<double> &series, double xi)
    {
        if (!(xi > 0.0))
            throw Error(Errc::BadArgument, "xi must be positive");
        const ExtremaSet ex = find_extrema(series);
        if (ex.count() < 2)
            throw Error(Errc::NoExtrema, "series has fewer than 2 extrema");
        const double ratio = xi * static_cast<double>(series.size()) /
                             static_cast<double>(ex.count());
        const long long L = 2 * static_cast<long long>(std::floor(ratio));
        return static_cast<int>(std::max(1LL, L));
    }

} // namespace mvfif

#endif // MVFIF_ROTATION_HPP
