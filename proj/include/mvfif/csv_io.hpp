/**
 * CSV and JSON persistence.
 *
 * Signals travel as plain comma-separated numeric tables, columns =
 * channels by default (one row per time sample); a transpose flag covers
 * the rows = channels convention. An optional single header row is
 * auto-detected: if any cell of the first row fails numeric parsing, the
 * row is treated as channel labels. Values are written with enough digits
 * (%.17g) that read ∘ write is the identity on doubles.
 *
 * A decomposition is stored as a directory: imf_001.csv … imf_K.csv,
 * trend.csv, and decomposition.json carrying {config, imfs:[{index, L,
 * N0, stopping_value}], n, m, sample_rate}. The JSON is the sole metadata
 * channel between the decompose and analyze stages.
 */

#ifndef MVFIF_CSV_IO_HPP
#define MVFIF_CSV_IO_HPP

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "json.hpp"

#include "errors.hpp"
#include "signal.hpp"

namespace mvfif
{

    namespace detail
    {
        inline std::string trim(const std::string &s)
        {
            std::size_t b = s.find_first_not_of(" \t\r\n");
            std::size_t e = s.find_last_not_of(" \t\r\n");
            if (b == std::string::npos)
                return {};
            return s.substr(b, e - b + 1);
        }

        inline std::vector<std::string> split_row(const std::string &line)
        {
            std::vector<std::string> cells;
            std::string cur;
            for (char ch : line)
            {
                if (ch == ',')
                {
                    cells.push_back(trim(cur));
                    cur.clear();
                }
                else
                    cur += ch;
            }
            cells.push_back(trim(cur));
            return cells;
        }

        inline std::optional<double> parse_number(const std::string &cell)
        {
            if (cell.empty())
                return std::nullopt;
            double value = 0.0;
            const char *first = cell.data();
            const char *last = first + cell.size();
            auto [ptr, ec] = std::from_chars(first, last, value);
            if (ec != std::errc() || ptr != last)
                return std::nullopt;
            return value;
        }

        inline std::string format_number(double v)
        {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            return buf;
        }
    } // namespace detail

    // ============================================================================
    // Signal CSV
    // ============================================================================

    /**
     * Read a numeric CSV as a signal. Default layout: columns = channels.
     * With transpose, rows = channels. A non-numeric first row becomes the
     * channel labels (default layout only).
     */
    inline MultivariateSignal read_csv(const std::filesystem::path &path,
                                       bool transpose = false, double sample_rate = 1.0)
    {
        std::ifstream in(path);
        if (!in)
            throw Error(Errc::IoError, "cannot open " + path.string());

        std::vector<std::vector<double>> rows;
        std::vector<std::string> labels;
        std::string line;
        std::size_t lineno = 0;
        bool first_data_seen = false;
        while (std::getline(in, line))
        {
            ++lineno;
            if (detail::trim(line).empty())
                continue;
            const std::vector<std::string> cells = detail::split_row(line);
            std::vector<double> row;
            row.reserve(cells.size());
            bool numeric = true;
            for (const std::string &cell : cells)
            {
                const std::optional<double> v = detail::parse_number(cell);
                if (!v)
                {
                    numeric = false;
                    break;
                }
                row.push_back(*v);
            }
            if (!numeric)
            {
                if (!first_data_seen && labels.empty())
                {
                    labels = cells; // header row
                    continue;
                }
                throw Error(Errc::ParseError, path.string() + ":" + std::to_string(lineno) +
                                                  ": non-numeric cell");
            }
            if (first_data_seen && row.size() != rows.front().size())
                throw Error(Errc::RaggedRows, path.string() + ":" + std::to_string(lineno) +
                                                  ": expected " + std::to_string(rows.front().size()) +
                                                  " cells, got " + std::to_string(row.size()));
            first_data_seen = true;
            rows.push_back(std::move(row));
        }
        if (rows.empty())
            throw Error(Errc::EmptySignal, path.string() + ": no data rows");

        MultivariateSignal s;
        if (!transpose)
        {
            s = MultivariateSignal(rows.front().size(), rows.size(), sample_rate);
            for (std::size_t t = 0; t < rows.size(); ++t)
                for (std::size_t c = 0; c < s.n; ++c)
                    s.at(c, t) = rows[t][c];
            if (labels.size() == s.n)
                s.labels = labels;
        }
        else
        {
            s = MultivariateSignal(rows.size(), rows.front().size(), sample_rate);
            for (std::size_t c = 0; c < s.n; ++c)
                for (std::size_t t = 0; t < s.m; ++t)
                    s.at(c, t) = rows[c][t];
        }
        return s;
    }

    /** Write columns = channels, with a header row when labels are present. */
    inline void write_csv(const MultivariateSignal &s, const std::filesystem::path &path)
    {
        std::ofstream out(path);
        if (!out)
            throw Error(Errc::IoError, "cannot write " + path.string());
        if (s.labels.size() == s.n)
        {
            for (std::size_t c = 0; c < s.n; ++c)
                out << (c ? "," : "") << s.labels[c];
            out << '\n';
        }
        for (std::size_t t = 0; t < s.m; ++t)
        {
            for (std::size_t c = 0; c < s.n; ++c)
                out << (c ? "," : "") << detail::format_number(s.at(c, t));
            out << '\n';
        }
        if (!out)
            throw Error(Errc::IoError, "write failed for " + path.string());
    }

    // ============================================================================
    // Configuration JSON
    // ============================================================================

    inline nlohmann::ordered_json config_to_json(const DecompositionConfig &cfg)
    {
        nlohmann::ordered_json j;
        j["xi"] = cfg.xi;
        j["delta"] = cfg.delta ? nlohmann::ordered_json(*cfg.delta)
                               : nlohmann::ordered_json(nullptr);
        j["delta_scale"] = cfg.delta_scale;
        j["max_inner"] = cfg.max_inner;
        j["max_imfs"] = cfg.max_imfs ? nlohmann::ordered_json(*cfg.max_imfs)
                                     : nlohmann::ordered_json(nullptr);
        j["extension"] = to_string(cfg.extension);
        j["ext_len"] = cfg.ext_len ? nlohmann::ordered_json(*cfg.ext_len)
                                   : nlohmann::ordered_json(nullptr);
        j["filter_shape"] = to_string(cfg.filter_shape);
        j["monotone_L"] = cfg.monotone_L;
        return j;
    }

    inline DecompositionConfig config_from_json(const nlohmann::json &j)
    {
        DecompositionConfig cfg;
        if (j.contains("xi"))
            cfg.xi = j.at("xi").get<double>();
        if (j.contains("delta") && !j.at("delta").is_null())
            cfg.delta = j.at("delta").get<double>();
        if (j.contains("delta_scale"))
            cfg.delta_scale = j.at("delta_scale").get<double>();
        if (j.contains("max_inner"))
            cfg.max_inner = j.at("max_inner").get<int>();
        if (j.contains("max_imfs") && !j.at("max_imfs").is_null())
            cfg.max_imfs = j.at("max_imfs").get<int>();
        if (j.contains("extension"))
            cfg.extension = j.at("extension").get<std::string>() == "none"
                                ? ExtensionMode::None
                                : ExtensionMode::Reflect;
        if (j.contains("ext_len") && !j.at("ext_len").is_null())
            cfg.ext_len = j.at("ext_len").get<std::size_t>();
        if (j.contains("filter_shape"))
            cfg.filter_shape = j.at("filter_shape").get<std::string>() == "triangle"
                                   ? FilterShape::Triangle
                                   : FilterShape::Bump;
        if (j.contains("monotone_L"))
            cfg.monotone_L = j.at("monotone_L").get<bool>();
        return cfg;
    }

    // ============================================================================
    // Decomposition directories
    // ============================================================================

    inline std::string imf_file_name(std::size_t index_1based)
    {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "imf_%03zu.csv", index_1based);
        return buf;
    }

    /** Write imf_*.csv, trend.csv, decomposition.json into dir (created if needed). */
    inline void write_decomposition(const std::filesystem::path &dir, const Decomposition &d,
                                    const DecompositionConfig &cfg)
    {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec)
            throw Error(Errc::IoError, "cannot create " + dir.string() + ": " + ec.message());

        for (std::size_t i = 0; i < d.imfs.size(); ++i)
            write_csv(d.imfs[i], dir / imf_file_name(i + 1));
        write_csv(d.trend, dir / "trend.csv");

        nlohmann::ordered_json j;
        j["config"] = config_to_json(cfg);
        nlohmann::ordered_json imfs = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < d.meta.size(); ++i)
        {
            nlohmann::ordered_json e;
            e["index"] = i + 1;
            e["L"] = d.meta[i].L;
            e["N0"] = d.meta[i].N0;
            e["stopping_value"] = d.meta[i].stopping_value;
            imfs.push_back(std::move(e));
        }
        j["imfs"] = std::move(imfs);
        j["n"] = d.trend.n;
        j["m"] = d.trend.m;
        j["sample_rate"] = d.trend.sample_rate;

        std::ofstream out(dir / "decomposition.json");
        if (!out)
            throw Error(Errc::IoError, "cannot write decomposition.json in " + dir.string());
        out << j.dump(2) << '\n';
    }

    struct StoredDecomposition
    {
        Decomposition decomposition;
        DecompositionConfig config;
        double sample_rate = 1.0;
    };

    /** Load a decomposition directory written by write_decomposition. */
    inline StoredDecomposition read_decomposition(const std::filesystem::path &dir)
    {
        const std::filesystem::path meta_path = dir / "decomposition.json";
        std::ifstream in(meta_path);
        if (!in)
            throw Error(Errc::MissingDecomposition, "no decomposition.json in " + dir.string());
        nlohmann::json j;
        try
        {
            in >> j;
        }
        catch (const nlohmann::json::exception &e)
        {
            throw Error(Errc::ParseError, meta_path.string() + ": " + e.what());
        }

        StoredDecomposition out;
        out.config = config_from_json(j.value("config", nlohmann::json::object()));
        out.sample_rate = j.value("sample_rate", 1.0);

        const std::size_t K = j.contains("imfs") ? j.at("imfs").size() : 0;
        for (std::size_t i = 0; i < K; ++i)
        {
            MultivariateSignal imf = read_csv(dir / imf_file_name(i + 1), false, out.sample_rate);
            ImfMeta meta;
            const nlohmann::json &e = j.at("imfs").at(i);
            meta.L = e.value("L", 0);
            meta.N0 = e.value("N0", 0);
            meta.stopping_value = e.value("stopping_value", 0.0);
            out.decomposition.imfs.push_back(std::move(imf));
            out.decomposition.meta.push_back(meta);
        }
        out.decomposition.trend = read_csv(dir / "trend.csv", false, out.sample_rate);
        return out;
    }

} // namespace mvfif

#endif // MVFIF_CSV_IO_HPP
