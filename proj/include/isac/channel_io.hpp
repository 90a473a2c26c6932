/**
 * channel_io.hpp — channel spec files (JSON) for the CLI and tests.
 *
 * Schema (all kernels dense row-major, mixed-radix with the last variable
 * fastest — identical to the in-memory layout documented in channel.hpp):
 *
 *   {
 *     "alphabets":     {"A":2,"X":2,"S1":2,"S2":2,"Y1":2,"Y2":2,
 *                       "S1hat":2,"S2hat":2},
 *     "state_kernel":  [[...|S1||S2| cols...] × |A| rows],
 *     "output_kernel": [[...|Y1||Y2| cols...] × |S1||S2||X| rows],
 *     "distortion1":   [[...|S1hat| cols...] × |S1| rows],
 *     "distortion2":   [[...|S2hat| cols...] × |S2| rows],
 *     "input_law":     {"V":0, "rows": [[...|X| cols...] × |A| rows]}
 *                   or {"V":k, "rows": [[...|A||X| cols, x fastest...] × k]},
 *     "binary_params": {"lambda":0.3,"alpha":0.7,"p":0.5,"q":0.5}   (optional)
 *   }
 *
 * input_law and binary_params are optional; binary_params marks the file
 * as an instance of the binary multiplicative-Bernoulli example, which
 * switches region sweeps for theorems 3/4 into (p,q)-grid mode.
 *
 * Parsing/validation failures throw ParseError naming the offending field
 * and row; filesystem failures throw IoError.
 */

#ifndef ISAC_CHANNEL_IO_HPP
#define ISAC_CHANNEL_IO_HPP

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "json.hpp"

#include "isac/channel.hpp"
#include "isac/errors.hpp"
#include "isac/util.hpp"

namespace isac {

using ordered_json = nlohmann::ordered_json;

/** Parsed content of a channel spec file. */
struct ChannelFile {
    ChannelSpec channel;
    std::optional<InputLaw> law;
    std::optional<BinaryParams> binary;
};

namespace detail {

inline std::vector<double> parse_matrix(const ordered_json& j,
                                        std::size_t rows, std::size_t cols,
                                        const std::string& name) {
    if (!j.is_array() || j.size() != rows)
        throw ParseError(name + ": expected " + std::to_string(rows) +
                         " rows");
    std::vector<double> out;
    out.reserve(rows * cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const ordered_json& row = j[r];
        if (!row.is_array() || row.size() != cols)
            throw ParseError(name + " row " + std::to_string(r) +
                             ": expected " + std::to_string(cols) +
                             " columns");
        for (std::size_t c = 0; c < cols; ++c) {
            if (!row[c].is_number())
                throw ParseError(name + " row " + std::to_string(r) +
                                 ": non-numeric entry");
            out.push_back(row[c].get<double>());
        }
    }
    return out;
}

inline int parse_alphabet(const ordered_json& a, const char* key) {
    if (!a.contains(key) || !a[key].is_number_integer())
        throw ParseError(std::string("alphabets: missing integer field '") +
                         key + "'");
    int v = a[key].get<int>();
    if (v < 1)
        throw ParseError(std::string("alphabets: '") + key + "' must be ≥ 1");
    return v;
}

inline ordered_json matrix_json(const std::vector<double>& m,
                                std::size_t rows, std::size_t cols) {
    ordered_json out = ordered_json::array();
    for (std::size_t r = 0; r < rows; ++r) {
        ordered_json row = ordered_json::array();
        for (std::size_t c = 0; c < cols; ++c) row.push_back(m[r * cols + c]);
        out.push_back(std::move(row));
    }
    return out;
}

} // namespace detail

/** Parse and validate a channel spec document from a JSON string. */
inline ChannelFile parse_channel_json(const std::string& text,
                                      const std::string& origin = "<string>") {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(origin + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("alphabets"))
        throw ParseError(origin + ": missing 'alphabets' object");

    ChannelFile f;
    const ordered_json& al = j["alphabets"];
    f.channel.A = detail::parse_alphabet(al, "A");
    f.channel.X = detail::parse_alphabet(al, "X");
    f.channel.S1 = detail::parse_alphabet(al, "S1");
    f.channel.S2 = detail::parse_alphabet(al, "S2");
    f.channel.Y1 = detail::parse_alphabet(al, "Y1");
    f.channel.Y2 = detail::parse_alphabet(al, "Y2");
    f.channel.S1hat = detail::parse_alphabet(al, "S1hat");
    f.channel.S2hat = detail::parse_alphabet(al, "S2hat");

    const ChannelSpec& c = f.channel;
    auto need = [&](const char* key) -> const ordered_json& {
        if (!j.contains(key))
            throw ParseError(origin + ": missing field '" + std::string(key) +
                             "'");
        return j[key];
    };
    f.channel.state_kernel = detail::parse_matrix(
        need("state_kernel"), static_cast<std::size_t>(c.A),
        static_cast<std::size_t>(c.S1) * c.S2, "state_kernel");
    f.channel.output_kernel = detail::parse_matrix(
        need("output_kernel"), static_cast<std::size_t>(c.S1) * c.S2 * c.X,
        static_cast<std::size_t>(c.Y1) * c.Y2, "output_kernel");
    f.channel.distortion1 = detail::parse_matrix(
        need("distortion1"), static_cast<std::size_t>(c.S1),
        static_cast<std::size_t>(c.S1hat), "distortion1");
    f.channel.distortion2 = detail::parse_matrix(
        need("distortion2"), static_cast<std::size_t>(c.S2),
        static_cast<std::size_t>(c.S2hat), "distortion2");
    f.channel.validate();

    if (j.contains("input_law")) {
        const ordered_json& lj = j["input_law"];
        if (!lj.is_object() || !lj.contains("rows"))
            throw ParseError("input_law: expected object with 'rows'");
        InputLaw law;
        law.V = lj.contains("V") ? lj["V"].get<int>() : 0;
        if (law.V < 0) throw ParseError("input_law: V must be ≥ 0");
        law.A = c.A;
        law.X = c.X;
        if (law.V == 0)
            law.mass = detail::parse_matrix(lj["rows"],
                                            static_cast<std::size_t>(c.A),
                                            static_cast<std::size_t>(c.X),
                                            "input_law rows");
        else
            law.mass = detail::parse_matrix(
                lj["rows"], static_cast<std::size_t>(law.V),
                static_cast<std::size_t>(c.A) * c.X, "input_law rows");
        law.validate();
        f.law = std::move(law);
    }

    if (j.contains("binary_params")) {
        const ordered_json& bj = j["binary_params"];
        BinaryParams bp;
        for (const char* key : {"lambda", "alpha", "p", "q"})
            if (!bj.contains(key) || !bj[key].is_number())
                throw ParseError(
                    std::string("binary_params: missing numeric field '") +
                    key + "'");
        bp.lambda = bj["lambda"].get<double>();
        bp.alpha = bj["alpha"].get<double>();
        bp.p = bj["p"].get<double>();
        bp.q = bj["q"].get<double>();
        try {
            bp.validate();
        } catch (const DomainError& e) {
            throw ParseError(std::string("binary_params: ") + e.what());
        }
        f.binary = bp;
    }
    return f;
}

/** Load a channel spec file from disk. */
inline ChannelFile load_channel_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("read failed for '" + path.string() + "'");
    return parse_channel_json(buf.str(), path.string());
}

/** Serialize a channel spec document (deterministic key and row order). */
inline std::string channel_json(const ChannelFile& f) {
    const ChannelSpec& c = f.channel;
    ordered_json j;
    j["alphabets"] = {{"A", c.A},         {"X", c.X},
                      {"S1", c.S1},       {"S2", c.S2},
                      {"Y1", c.Y1},       {"Y2", c.Y2},
                      {"S1hat", c.S1hat}, {"S2hat", c.S2hat}};
    j["state_kernel"] = detail::matrix_json(
        c.state_kernel, static_cast<std::size_t>(c.A),
        static_cast<std::size_t>(c.S1) * c.S2);
    j["output_kernel"] = detail::matrix_json(
        c.output_kernel, static_cast<std::size_t>(c.S1) * c.S2 * c.X,
        static_cast<std::size_t>(c.Y1) * c.Y2);
    j["distortion1"] = detail::matrix_json(c.distortion1,
                                           static_cast<std::size_t>(c.S1),
                                           static_cast<std::size_t>(c.S1hat));
    j["distortion2"] = detail::matrix_json(c.distortion2,
                                           static_cast<std::size_t>(c.S2),
                                           static_cast<std::size_t>(c.S2hat));
    if (f.law) {
        const InputLaw& law = *f.law;
        j["input_law"]["V"] = law.V;
        j["input_law"]["rows"] =
            law.V == 0
                ? detail::matrix_json(law.mass,
                                      static_cast<std::size_t>(law.A),
                                      static_cast<std::size_t>(law.X))
                : detail::matrix_json(law.mass,
                                      static_cast<std::size_t>(law.V),
                                      static_cast<std::size_t>(law.A) *
                                          law.X);
    }
    if (f.binary) {
        j["binary_params"] = {{"lambda", f.binary->lambda},
                              {"alpha", f.binary->alpha},
                              {"p", f.binary->p},
                              {"q", f.binary->q}};
    }
    return j.dump(2) + "\n";
}

/** Write a channel spec file atomically. */
inline void save_channel_file(const std::filesystem::path& path,
                              const ChannelFile& f) {
    atomic_write_text(path, channel_json(f));
}

} // namespace isac

#endif // ISAC_CHANNEL_IO_HPP
