/**
 * Error taxonomy for the MvFIF toolkit.
 *
 * Every failure the library can signal carries a stable error code so the
 * CLI can map conditions onto its exit-code contract (0 success, 1 input
 * error, 2 non-convergence) and tests can assert on the exact condition
 * rather than on message text.
 */

#ifndef MVFIF_ERRORS_HPP
#define MVFIF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mvfif
{

    enum class Errc
    {
        // signal model
        NonFinite,        // NaN or Inf sample
        RaggedChannels,   // channels of unequal length
        TooShort,         // fewer samples than the operation requires
        ExtensionTooLong, // ext_len exceeds what pre_extend/crop admit
        EmptySignal,      // zero channels or zero samples
        // I/O
        ParseError, // non-numeric CSV cell
        RaggedRows, // CSV rows of unequal arity
        IoError,    // unreadable/unwritable path
        MissingDecomposition,
        // rotation geometry
        SignalTooShort, // m < 2 for compute_theta
        NoExtrema,      // univariate filter length needs k >= 2
        // filter bank
        InvalidLength, // L < 1
        KernelTooWide, // 2L+1 > m
        // decomposer
        ComplexResidue, // inverse DFT left non-negligible imaginary parts
        TooLarge,       // dense oracle guard (m > 512)
        // analysis
        ZeroNoise,     // SNR with identically zero noise
        EmptyEnsemble, // ensemble average over nothing
        DegenerateImf, // correlation matrix with all-constant IMFs
        // cli / config
        BadArgument,
    };

    /** Human-readable tag for an error code (stable, used in CLI diagnostics). */
    inline const char *errc_name(Errc c)
    {
        switch (c)
        {
        case Errc::NonFinite: return "NonFinite";
        case Errc::RaggedChannels: return "RaggedChannels";
        case Errc::TooShort: return "TooShort";
        case Errc::ExtensionTooLong: return "ExtensionTooLong";
        case Errc::EmptySignal: return "EmptySignal";
        case Errc::ParseError: return "ParseError";
        case Errc::RaggedRows: return "RaggedRows";
        case Errc::IoError: return "IoError";
        case Errc::MissingDecomposition: return "MissingDecomposition";
        case Errc::SignalTooShort: return "SignalTooShort";
        case Errc::NoExtrema: return "NoExtrema";
        case Errc::InvalidLength: return "InvalidLength";
        case Errc::KernelTooWide: return "KernelTooWide";
        case Errc::ComplexResidue: return "ComplexResidue";
        case Errc::TooLarge: return "TooLarge";
        case Errc::ZeroNoise: return "ZeroNoise";
        case Errc::EmptyEnsemble: return "EmptyEnsemble";
        case Errc::DegenerateImf: return "DegenerateImf";
        case Errc::BadArgument: return "BadArgument";
        }
        return "Unknown";
    }

    /** Exception type carrying an Errc; what() prepends the code name. */
    class Error : public std::runtime_error
    {
    public:
        Error(Errc code, const std::string &msg)
            : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

        Errc code() const noexcept { return code_; }

    private:
        Errc code_;
    };

} // namespace mvfif

#endif // MVFIF_ERRORS_HPP
