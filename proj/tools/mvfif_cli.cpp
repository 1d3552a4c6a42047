/**
 * mvfif — command-line toolkit for multivariate fast iterative filtering.
 *
 * Subcommands:
 *   decompose  multichannel decomposition of a CSV signal into IMFs + trend
 *   fif        univariate baseline decomposition of a single-column CSV
 *   generate   deterministic test signals (white-noise ensembles, bivariate pairs)
 *   analyze    PSD / correlation / alignment / SNR reports on decompositions
 *   selftest   embedded invariant and oracle checks (release gate)
 *   bench      wall-time medians and complexity-scaling assertions
 *
 * Exit codes: 0 success; 1 input or processing error; 2 inner-loop
 * non-convergence (decomposition outputs are still written).
 *
 * Decomposition and generation outputs are all-or-nothing: files are
 * staged in a temporary sibling directory and renamed into place, so an
 * interrupted or failed run never leaves partial results at the target.
 * MVFIF_THREADS overrides the per-channel transform parallelism.
 */

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mvfif/mvfif.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace
{

    // ============================================================================
    // Shared plumbing
    // ============================================================================

    int thread_override()
    {
        const char *env = std::getenv("MVFIF_THREADS");
        if (!env)
            return 1;
        const int v = std::atoi(env);
        return std::clamp(v, 1, 256);
    }

    /** Staging directory that renames into place on success. */
    class StagedDir
    {
    public:
        explicit StagedDir(const fs::path &target)
            : target_(target),
              tmp_(target.parent_path() / (target.filename().string() + ".tmp." +
                                           std::to_string(static_cast<long long>(::getpid()))))
        {
            fs::remove_all(tmp_);
            fs::create_directories(tmp_);
        }

        ~StagedDir()
        {
            if (!committed_)
            {
                std::error_code ec;
                fs::remove_all(tmp_, ec);
            }
        }

        const fs::path &path() const { return tmp_; }

        /** Replace the target with the staged tree. Refuses to clobber a
         *  directory that is neither empty nor a previous decomposition or
         *  generation output of this tool. */
        void commit()
        {
            if (fs::exists(target_))
            {
                const bool replaceable = fs::is_directory(target_) &&
                                         (fs::is_empty(target_) ||
                                          fs::exists(target_ / "decomposition.json") ||
                                          fs::exists(target_ / "spec.json"));
                if (!replaceable)
                    throw mvfif::Error(mvfif::Errc::IoError,
                                       "refusing to overwrite " + target_.string());
                fs::remove_all(target_);
            }
            fs::create_directories(target_.parent_path().empty() ? "." : target_.parent_path());
            fs::rename(tmp_, target_);
            committed_ = true;
        }

    private:
        fs::path target_;
        fs::path tmp_;
        bool committed_ = false;
    };

    void write_text_file(const fs::path &path, const std::string &content)
    {
        std::ofstream out(path);
        if (!out)
            throw mvfif::Error(mvfif::Errc::IoError, "cannot write " + path.string());
        out << content;
        if (!out)
            throw mvfif::Error(mvfif::Errc::IoError, "write failed for " + path.string());
    }

    /** Write a single report through a temp name so readers never see a torn file. */
    void write_report(const fs::path &path, const std::string &content)
    {
        const fs::path tmp = path.string() + ".tmp." +
                             std::to_string(static_cast<long long>(::getpid()));
        write_text_file(tmp, content);
        fs::rename(tmp, path);
    }

    /** '*' and '?' wildcard match on one path component. */
    bool wildcard_match(const std::string &pattern, const std::string &text)
    {
        std::size_t p = 0, t = 0, star = std::string::npos, mark = 0;
        while (t < text.size())
        {
            if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t]))
            {
                ++p;
                ++t;
            }
            else if (p < pattern.size() && pattern[p] == '*')
            {
                star = p++;
                mark = t;
            }
            else if (star != std::string::npos)
            {
                p = star + 1;
                t = ++mark;
            }
            else
                return false;
        }
        while (p < pattern.size() && pattern[p] == '*')
            ++p;
        return p == pattern.size();
    }

    /** Expand a glob whose wildcards live in the last component; sorted. */
    std::vector<fs::path> expand_glob(const std::string &pattern)
    {
        const fs::path pat(pattern);
        const std::string leaf = pat.filename().string();
        if (leaf.find('*') == std::string::npos && leaf.find('?') == std::string::npos)
        {
            if (fs::exists(pat))
                return {pat};
            return {};
        }
        const fs::path parent = pat.parent_path().empty() ? fs::path(".") : pat.parent_path();
        std::vector<fs::path> hits;
        if (!fs::is_directory(parent))
            return hits;
        for (const fs::directory_entry &e : fs::directory_iterator(parent))
            if (wildcard_match(leaf, e.path().filename().string()))
                hits.push_back(e.path());
        std::sort(hits.begin(), hits.end());
        return hits;
    }

    bool any_nonconverged(const mvfif::Decomposition &d)
    {
        for (const mvfif::ImfMeta &meta : d.meta)
            if (!meta.converged)
                return true;
        return false;
    }

    // ============================================================================
    // decompose / fif
    // ============================================================================

    struct DecomposeArgs
    {
        std::string input;
        std::string output;
        mvfif::DecompositionConfig cfg;
        bool transpose = false;
        double sample_rate = 1.0;
        double delta = 0.0;
        int max_imfs = 0;
        long long ext_len = -1;
        std::string extension = "reflect";
        std::string filter_shape = "bump";
        bool no_monotone = false;
    };

    void add_decompose_flags(CLI::App *cmd, DecomposeArgs &a)
    {
        cmd->add_option("--input", a.input, "input CSV (columns = channels)")
            ->required();
        cmd->add_option("--output", a.output, "output directory for IMFs + metadata")
            ->required();
        cmd->add_option("--xi", a.cfg.xi, "filter-length multiplier (default 1.6)");
        cmd->add_option("--delta", a.delta, "absolute stopping threshold (default: scaled to input)");
        cmd->add_option("--max-inner", a.cfg.max_inner, "inner-loop iteration cap (default 200)");
        cmd->add_option("--max-imfs", a.max_imfs, "stop after this many IMFs (default: run to trend)");
        cmd->add_option("--extension", a.extension, "boundary handling: none | reflect")
            ->check(CLI::IsMember({"none", "reflect"}));
        cmd->add_option("--ext-len", a.ext_len, "reflection length per side (default: full mirror)");
        cmd->add_option("--filter-shape", a.filter_shape, "kernel shape: bump | triangle")
            ->check(CLI::IsMember({"bump", "triangle"}));
        cmd->add_flag("--no-monotone-L", a.no_monotone, "allow the filter length to shrink between IMFs");
        cmd->add_flag("--transpose", a.transpose, "input rows are channels instead of columns");
        cmd->add_option("--sample-rate", a.sample_rate, "sample rate in Hz (default 1)");
    }

    mvfif::DecompositionConfig resolve_config(const DecomposeArgs &a, const CLI::App *cmd)
    {
        mvfif::DecompositionConfig cfg = a.cfg;
        if (cmd->count("--delta"))
            cfg.delta = a.delta;
        if (cmd->count("--max-imfs"))
            cfg.max_imfs = a.max_imfs;
        if (cmd->count("--ext-len"))
            cfg.ext_len = static_cast<std::size_t>(std::max(0LL, a.ext_len));
        cfg.extension = a.extension == "none" ? mvfif::ExtensionMode::None
                                              : mvfif::ExtensionMode::Reflect;
        cfg.filter_shape = a.filter_shape == "triangle" ? mvfif::FilterShape::Triangle
                                                        : mvfif::FilterShape::Bump;
        cfg.monotone_L = !a.no_monotone;
        cfg.threads = thread_override();
        return cfg;
    }

    int run_decompose(const DecomposeArgs &a, const CLI::App *cmd, bool univariate)
    {
        const mvfif::DecompositionConfig cfg = resolve_config(a, cmd);
        const mvfif::MultivariateSignal signal =
            mvfif::read_csv(a.input, a.transpose, a.sample_rate);

        const mvfif::Decomposition d = univariate ? mvfif::fif_decompose(signal, cfg)
                                                  : mvfif::mvfif_decompose(signal, cfg);

        StagedDir staged{fs::path(a.output)};
        mvfif::write_decomposition(staged.path(), d, cfg);
        staged.commit();

        if (any_nonconverged(d))
        {
            std::cerr << "warning: inner loop hit the iteration cap; outputs written\n";
            return 2;
        }
        std::cout << d.imf_count() << " IMFs + trend -> " << a.output << "\n";
        return 0;
    }

    // ============================================================================
    // generate
    // ============================================================================

    struct GenerateArgs
    {
        std::string kind;
        std::string output;
        std::size_t channels = 4;
        std::size_t samples = 0; // 0 = kind default
        std::size_t realizations = 100;
        std::uint64_t seed = 42;
        double t0 = 0.0;
        double t1 = 0.0; // 0 = kind default
        double sample_rate = 1.0;
        double sigma1 = 1.0;
        double sigma2 = 2.0;
    };

    int run_generate(const GenerateArgs &g, const CLI::App *cmd)
    {
        StagedDir staged{fs::path(g.output)};
        ordered_json spec;
        spec["kind"] = g.kind;
        spec["seed"] = g.seed;

        if (g.kind == "wgn")
        {
            mvfif::GeneratorSpec s;
            s.n = g.channels;
            s.m = g.samples ? g.samples : 1000;
            s.realizations = g.realizations;
            s.seed = g.seed;
            s.sample_rate = g.sample_rate;
            const std::vector<mvfif::MultivariateSignal> ens = mvfif::gen_wgn_ensemble(s);
            for (std::size_t r = 0; r < ens.size(); ++r)
            {
                char name[48];
                std::snprintf(name, sizeof(name), "realization_%03zu.csv", r);
                mvfif::write_csv(ens[r], staged.path() / name);
            }
            spec["n"] = s.n;
            spec["m"] = s.m;
            spec["realizations"] = s.realizations;
            spec["sample_rate"] = s.sample_rate;
        }
        else if (g.kind == "ivb")
        {
            const std::size_t m = g.samples ? g.samples : 2000;
            const double t1 = cmd->count("--t1") ? g.t1 : 10.0;
            const mvfif::MultivariateSignal s = mvfif::gen_bivariate_ivb(m, g.t0, t1);
            mvfif::write_csv(s, staged.path() / "signal.csv");
            spec["n"] = 2;
            spec["m"] = m;
            spec["t0"] = g.t0;
            spec["t1"] = t1;
            spec["sample_rate"] = s.sample_rate;
        }
        else if (g.kind == "ive")
        {
            const std::size_t m = g.samples ? g.samples : 1000;
            const double t1 = cmd->count("--t1") ? g.t1 : 20.0;
            const mvfif::NoisyCleanPair pair =
                mvfif::gen_bivariate_ive(m, g.t0, t1, g.seed, {g.sigma1, g.sigma2});
            mvfif::write_csv(pair.noisy, staged.path() / "noisy.csv");
            mvfif::write_csv(pair.clean, staged.path() / "clean.csv");
            spec["n"] = 2;
            spec["m"] = m;
            spec["t0"] = g.t0;
            spec["t1"] = t1;
            spec["sigmas"] = {g.sigma1, g.sigma2};
            spec["sample_rate"] = pair.clean.sample_rate;
        }
        else
        {
            throw mvfif::Error(mvfif::Errc::BadArgument, "unknown kind " + g.kind);
        }

        write_text_file(staged.path() / "spec.json", spec.dump(2) + "\n");
        staged.commit();
        std::cout << g.kind << " -> " << g.output << "\n";
        return 0;
    }

    // ============================================================================
    // analyze
    // ============================================================================

    struct AnalyzeArgs
    {
        std::string kind;
        std::string input;
        std::string output;
        std::string ensemble;
        int imf = -1;             // 1-based filter; -1 = all
        long long channel = -1;   // 0-based filter; -1 = all (corr: default 0)
        std::vector<double> freqs;
        std::string clean;
        std::string noisy;
    };

    void psd_rows(std::string &csv, int imf_1based, std::size_t channel, std::size_t used,
                  const mvfif::PsdCurve &curve)
    {
        for (std::size_t k = 0; k < curve.freq.size(); ++k)
        {
            csv += std::to_string(imf_1based);
            csv += ',';
            csv += std::to_string(channel);
            csv += ',';
            csv += std::to_string(used);
            csv += ',';
            csv += mvfif::detail::format_number(curve.freq[k]);
            csv += ',';
            csv += mvfif::detail::format_number(curve.power[k]);
            csv += '\n';
        }
    }

    int run_analyze(const AnalyzeArgs &a)
    {
        if (a.kind == "snr")
        {
            if (a.clean.empty() || a.noisy.empty())
                throw mvfif::Error(mvfif::Errc::BadArgument,
                                   "analyze --kind snr needs --clean and --noisy");
            const mvfif::MultivariateSignal clean = mvfif::read_csv(a.clean);
            const mvfif::MultivariateSignal noisy = mvfif::read_csv(a.noisy);
            if (clean.n != noisy.n || clean.m != noisy.m)
                throw mvfif::Error(mvfif::Errc::RaggedChannels,
                                   "clean and noisy signals disagree in shape");
            ordered_json out;
            out["channels"] = ordered_json::array();
            for (std::size_t c = 0; c < clean.n; ++c)
            {
                std::vector<double> sig(clean.channel(c), clean.channel(c) + clean.m);
                std::vector<double> noise(clean.m);
                for (std::size_t t = 0; t < clean.m; ++t)
                    noise[t] = noisy.at(c, t) - clean.at(c, t);
                ordered_json e;
                e["channel"] = c;
                e["snr_db"] = mvfif::snr(sig, noise);
                out["channels"].push_back(std::move(e));
            }
            const std::string path = a.output.empty() ? "snr.json" : a.output;
            write_report(path, out.dump(2) + "\n");
            std::cout << "snr -> " << path << "\n";
            return 0;
        }

        if (a.kind == "psd" && !a.ensemble.empty())
        {
            const std::vector<fs::path> dirs = expand_glob(a.ensemble);
            if (dirs.empty())
                throw mvfif::Error(mvfif::Errc::EmptyEnsemble,
                                   "no decomposition directories match " + a.ensemble);
            std::vector<mvfif::Decomposition> ens;
            double fs_rate = 1.0;
            std::size_t K_max = 0;
            for (const fs::path &dir : dirs)
            {
                mvfif::StoredDecomposition sd = mvfif::read_decomposition(dir);
                fs_rate = sd.sample_rate;
                K_max = std::max(K_max, sd.decomposition.imfs.size());
                ens.push_back(std::move(sd.decomposition));
            }
            const std::size_t n = ens.front().trend.n;
            std::string csv = "imf,channel,used,freq,power\n";
            for (std::size_t i = 0; i < K_max; ++i)
            {
                if (a.imf > 0 && static_cast<std::size_t>(a.imf) != i + 1)
                    continue;
                for (std::size_t c = 0; c < n; ++c)
                {
                    if (a.channel >= 0 && static_cast<std::size_t>(a.channel) != c)
                        continue;
                    const mvfif::EnsemblePsd ep = mvfif::ensemble_psd(ens, i, c, fs_rate);
                    psd_rows(csv, static_cast<int>(i + 1), c, ep.used, ep.mean);
                }
            }
            const std::string path = a.output.empty() ? "psd.csv" : a.output;
            write_report(path, csv);
            std::cout << "ensemble psd over " << dirs.size() << " decompositions -> "
                      << path << "\n";
            return 0;
        }

        // Remaining kinds read one decomposition directory.
        const mvfif::StoredDecomposition sd = mvfif::read_decomposition(a.input);
        const mvfif::Decomposition &d = sd.decomposition;

        if (a.kind == "psd")
        {
            std::string csv = "imf,channel,used,freq,power\n";
            for (std::size_t i = 0; i < d.imfs.size(); ++i)
            {
                if (a.imf > 0 && static_cast<std::size_t>(a.imf) != i + 1)
                    continue;
                for (std::size_t c = 0; c < d.imfs[i].n; ++c)
                {
                    if (a.channel >= 0 && static_cast<std::size_t>(a.channel) != c)
                        continue;
                    std::vector<double> chan(d.imfs[i].channel(c),
                                             d.imfs[i].channel(c) + d.imfs[i].m);
                    psd_rows(csv, static_cast<int>(i + 1), c, 1,
                             mvfif::psd(chan, sd.sample_rate));
                }
            }
            const std::string path = a.output.empty() ? "psd.csv" : a.output;
            write_report(path, csv);
            std::cout << "psd -> " << path << "\n";
            return 0;
        }
        if (a.kind == "corr")
        {
            const std::size_t channel = a.channel < 0 ? 0 : static_cast<std::size_t>(a.channel);
            const mvfif::CorrelationMatrix cm = mvfif::correlation_matrix(d, channel);
            std::string csv;
            for (std::size_t i = 0; i < cm.K; ++i)
            {
                for (std::size_t j = 0; j < cm.K; ++j)
                {
                    if (j)
                        csv += ',';
                    csv += mvfif::detail::format_number(cm.at(i, j));
                }
                csv += '\n';
            }
            const std::string path = a.output.empty() ? "corr.csv" : a.output;
            write_report(path, csv);
            std::cout << cm.K << "x" << cm.K << " correlation matrix -> " << path << "\n";
            return 0;
        }
        if (a.kind == "align")
        {
            const std::vector<double> targets = a.freqs.empty() ? std::vector<double>{2.0}
                                                                : a.freqs;
            const mvfif::AlignmentReport rep =
                mvfif::alignment_report(d, targets, sd.sample_rate);
            ordered_json out;
            out["targets"] = ordered_json::array();
            for (const mvfif::AlignmentEntry &e : rep)
            {
                ordered_json t;
                t["target_hz"] = e.target_hz;
                ordered_json idx = ordered_json::array();
                for (int i : e.imf_per_channel)
                    idx.push_back(i + 1); // 1-based, matching imf_*.csv names
                t["imf_per_channel"] = std::move(idx);
                t["dominant_hz"] = e.dominant_hz;
                t["aligned"] = e.aligned;
                out["targets"].push_back(std::move(t));
            }
            const std::string path = a.output.empty() ? "align.json" : a.output;
            write_report(path, out.dump(2) + "\n");
            std::cout << "alignment -> " << path << "\n";
            return 0;
        }
        throw mvfif::Error(mvfif::Errc::BadArgument, "unknown analyze kind " + a.kind);
    }

    // ============================================================================
    // selftest
    // ============================================================================

    int run_selftest(const std::string &inject)
    {
        mvfif::Fault fault = mvfif::Fault::None;
        if (inject == "kernel-asymmetry")
            fault = mvfif::Fault::KernelAsymmetry;
        else if (!inject.empty())
            throw mvfif::Error(mvfif::Errc::BadArgument, "unknown fault " + inject);

        const std::vector<mvfif::CheckResult> results = mvfif::run_selfchecks(fault);
        bool all_pass = true;
        for (const mvfif::CheckResult &r : results)
        {
            all_pass = all_pass && r.pass;
            std::printf("[%s] %-28s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                        r.detail.c_str());
        }
        std::printf("%s: %zu checks\n", all_pass ? "OK" : "FAILED", results.size());
        return all_pass ? 0 : 1;
    }

    // ============================================================================
    // bench
    // ============================================================================

    struct BenchArgs
    {
        std::vector<std::size_t> channels = {4};
        std::vector<std::size_t> samples = {4096, 8192, 16384};
        std::size_t realizations = 3;
        std::uint64_t seed = 42;
        std::string output;
    };

    int run_bench(const BenchArgs &b)
    {
        struct Row
        {
            std::size_t n, m;
            double median;
        };
        std::vector<Row> rows;
        std::string csv = "record,n,m,value,status\n";

        mvfif::DecompositionConfig cfg;
        cfg.threads = thread_override();

        for (std::size_t n : b.channels)
        {
            for (std::size_t m : b.samples)
            {
                mvfif::GeneratorSpec spec;
                spec.n = n;
                spec.m = m;
                spec.realizations = b.realizations;
                spec.seed = b.seed;
                const std::vector<mvfif::MultivariateSignal> ens = mvfif::gen_wgn_ensemble(spec);
                std::vector<double> times;
                for (const mvfif::MultivariateSignal &s : ens)
                {
                    const auto start = std::chrono::steady_clock::now();
                    const mvfif::Decomposition d = mvfif::mvfif_decompose(s, cfg);
                    const auto stop = std::chrono::steady_clock::now();
                    (void)d;
                    times.push_back(std::chrono::duration<double>(stop - start).count());
                }
                std::sort(times.begin(), times.end());
                const std::size_t h = times.size() / 2;
                const double median = times.size() % 2 ? times[h]
                                                       : 0.5 * (times[h - 1] + times[h]);
                rows.push_back({n, m, median});
                csv += "median_seconds," + std::to_string(n) + "," + std::to_string(m) + "," +
                       mvfif::detail::format_number(median) + ",ok\n";
            }
        }

        bool all_pass = true;
        // Ratio per doubling of m at fixed n.
        for (std::size_t n : b.channels)
            for (std::size_t i = 1; i < b.samples.size(); ++i)
            {
                if (b.samples[i] != 2 * b.samples[i - 1])
                    continue;
                double t_prev = 0.0, t_cur = 0.0;
                for (const Row &r : rows)
                {
                    if (r.n == n && r.m == b.samples[i - 1])
                        t_prev = r.median;
                    if (r.n == n && r.m == b.samples[i])
                        t_cur = r.median;
                }
                const double ratio = t_prev > 0.0 ? t_cur / t_prev : 0.0;
                const bool pass = ratio <= 2.5;
                all_pass = all_pass && pass;
                csv += "m_doubling_ratio," + std::to_string(n) + "," +
                       std::to_string(b.samples[i]) + "," +
                       mvfif::detail::format_number(ratio) + (pass ? ",pass\n" : ",fail\n");
            }
        // Growth in n at fixed m: at most linear within 1.5x slack.
        for (std::size_t m : b.samples)
            for (std::size_t i = 1; i < b.channels.size(); ++i)
            {
                double t_prev = 0.0, t_cur = 0.0;
                for (const Row &r : rows)
                {
                    if (r.m == m && r.n == b.channels[i - 1])
                        t_prev = r.median;
                    if (r.m == m && r.n == b.channels[i])
                        t_cur = r.median;
                }
                const double ratio = t_prev > 0.0 ? t_cur / t_prev : 0.0;
                const double bound = 1.5 * static_cast<double>(b.channels[i]) /
                                     static_cast<double>(b.channels[i - 1]);
                const bool pass = ratio <= bound;
                all_pass = all_pass && pass;
                csv += "n_scaling_ratio," + std::to_string(b.channels[i]) + "," +
                       std::to_string(m) + "," + mvfif::detail::format_number(ratio) +
                       (pass ? ",pass\n" : ",fail\n");
            }
        csv += std::string("assertion,0,0,0,") + (all_pass ? "pass\n" : "fail\n");

        if (b.output.empty())
            std::cout << csv;
        else
        {
            write_report(b.output, csv);
            std::cout << "bench -> " << b.output << "\n";
        }
        return 0;
    }

} // namespace

// ============================================================================
// main
// ============================================================================

int main(int argc, char **argv)
{
    CLI::App app{"Multivariate fast iterative filtering toolkit"};
    app.require_subcommand(1);

    DecomposeArgs dec, fif;
    CLI::App *cmd_dec = app.add_subcommand("decompose", "decompose a multichannel CSV signal");
    add_decompose_flags(cmd_dec, dec);
    CLI::App *cmd_fif = app.add_subcommand("fif", "univariate decomposition of one channel");
    add_decompose_flags(cmd_fif, fif);

    GenerateArgs gen;
    CLI::App *cmd_gen = app.add_subcommand("generate", "write deterministic test signals");
    cmd_gen->add_option("--kind", gen.kind, "wgn | ivb | ive")
        ->required()
        ->check(CLI::IsMember({"wgn", "ivb", "ive"}));
    cmd_gen->add_option("--output", gen.output, "output directory")->required();
    cmd_gen->add_option("--channels", gen.channels, "channels (wgn; default 4)");
    cmd_gen->add_option("--samples", gen.samples, "samples per channel (kind default if omitted)");
    cmd_gen->add_option("--realizations", gen.realizations, "ensemble size (wgn; default 100)");
    cmd_gen->add_option("--seed", gen.seed, "RNG seed (default 42)");
    cmd_gen->add_option("--t0", gen.t0, "time span start (bivariate kinds; default 0)");
    cmd_gen->add_option("--t1", gen.t1, "time span end (ivb default 10, ive default 20)");
    cmd_gen->add_option("--sample-rate", gen.sample_rate, "sample rate (wgn; default 1)");
    cmd_gen->add_option("--sigma1", gen.sigma1, "channel-1 noise std (ive; default 1)");
    cmd_gen->add_option("--sigma2", gen.sigma2, "channel-2 noise std (ive; default 2)");

    AnalyzeArgs ana;
    CLI::App *cmd_ana = app.add_subcommand("analyze", "reports on decomposition directories");
    cmd_ana->add_option("--kind", ana.kind, "psd | corr | align | snr")
        ->required()
        ->check(CLI::IsMember({"psd", "corr", "align", "snr"}));
    cmd_ana->add_option("--input", ana.input, "decomposition directory");
    cmd_ana->add_option("--output", ana.output, "report file (default: <kind>.csv/json)");
    cmd_ana->add_option("--ensemble", ana.ensemble, "glob of decomposition dirs (psd averaging)");
    cmd_ana->add_option("--imf", ana.imf, "restrict to one IMF (1-based)");
    cmd_ana->add_option("--channel", ana.channel, "restrict to one channel (0-based)");
    cmd_ana->add_option("--freq", ana.freqs, "alignment target frequencies in Hz");
    cmd_ana->add_option("--clean", ana.clean, "clean CSV (snr)");
    cmd_ana->add_option("--noisy", ana.noisy, "noisy CSV (snr)");

    std::string inject;
    CLI::App *cmd_self = app.add_subcommand("selftest", "run embedded invariant checks");
    cmd_self->add_option("--inject-fault", inject, "test hook: kernel-asymmetry");

    BenchArgs ben;
    CLI::App *cmd_ben = app.add_subcommand("bench", "timing medians and scaling assertions");
    cmd_ben->add_option("--channels", ben.channels, "channel counts (default 4)");
    cmd_ben->add_option("--samples", ben.samples, "signal lengths (default 4096 8192 16384)");
    cmd_ben->add_option("--realizations", ben.realizations, "realizations per point (default 3)");
    cmd_ben->add_option("--seed", ben.seed, "RNG seed");
    cmd_ben->add_option("--output", ben.output, "CSV path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (app.got_subcommand(cmd_dec))
            return run_decompose(dec, cmd_dec, false);
        if (app.got_subcommand(cmd_fif))
            return run_decompose(fif, cmd_fif, true);
        if (app.got_subcommand(cmd_gen))
            return run_generate(gen, cmd_gen);
        if (app.got_subcommand(cmd_ana))
            return run_analyze(ana);
        if (app.got_subcommand(cmd_self))
            return run_selftest(inject);
        if (app.got_subcommand(cmd_ben))
            return run_bench(ben);
    }
    catch (const mvfif::Error &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
