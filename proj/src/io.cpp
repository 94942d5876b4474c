#include "censorsim/io.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <memory>
#include <sstream>

#include <openssl/evp.h>

#include "censorsim/config.hpp"

namespace censorsim::io {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_real(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 9);
    if (ec != std::errc{}) throw IoError("format_real: conversion failed");
    return {buf, end};
}

std::string format_real(const std::optional<double>& x) { return x ? format_real(*x) : std::string{}; }

namespace {

void write_row_fields(std::ostream& os, const GroupMetricsRow& r) {
    os << format_real(r.mean_assent) << ',' << format_real(r.mean_dissent) << ','
       << format_real(r.mean_divergence) << ',' << format_real(r.mean_degree) << ','
       << format_real(r.mean_certainty) << ',' << r.group_size << ',' << r.banned_count << ','
       << r.certainty_n;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    return out;
}

template <class T>
T parse_integer(std::string_view field) {
    T v{};
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw IoError("expected an integer, got \"" + std::string(field) + "\"");
    return v;
}

std::string csv_quote(std::string_view s) {
    if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c == '\n' || c == '\r' ? ' ' : c;
    }
    return out + '"';
}

}  // namespace

void write_run_csv(std::ostream& os, const RunResult& result) {
    os << kRunCsvHeader << '\n';
    for (const auto& r : result.rows) {
        os << r.step << ',' << to_int(r.belief) << ',';
        write_row_fields(os, r);
        os << '\n';
    }
}

void emit_run_csv(const RunResult& result, const fs::path& path) {
    auto out = open_out(path);
    write_run_csv(out, result);
    if (!out.flush()) throw IoError("write failed: " + path.string());
}

std::optional<double> parse_real(std::string_view field) {
    if (field.empty()) return std::nullopt;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw IoError("expected a real number, got \"" + std::string(field) + "\"");
    return v;
}

std::vector<GroupMetricsRow> read_run_csv(std::istream& is) {
    const CsvTable table = read_csv(is);
    std::string joined;
    for (std::size_t i = 0; i < table.header.size(); ++i) joined += (i ? "," : "") + table.header[i];
    if (joined != kRunCsvHeader) throw IoError("run csv: unexpected header");
    std::vector<GroupMetricsRow> rows;
    for (const auto& f : table.rows) {
        if (f.size() != 10) throw IoError("run csv: expected 10 fields per row");
        GroupMetricsRow r;
        r.step = parse_integer<std::uint32_t>(f[0]);
        r.belief = parse_integer<int>(f[1]) == 1 ? Belief::Radical : Belief::Mainstream;
        r.mean_assent = parse_real(f[2]);
        r.mean_dissent = parse_real(f[3]);
        r.mean_divergence = parse_real(f[4]);
        r.mean_degree = parse_real(f[5]);
        r.mean_certainty = parse_real(f[6]);
        r.group_size = parse_integer<std::uint32_t>(f[7]);
        r.banned_count = parse_integer<std::uint32_t>(f[8]);
        r.certainty_n = parse_integer<std::uint32_t>(f[9]);
        rows.push_back(r);
    }
    return rows;
}

void write_sweep_csv(std::ostream& os, const SweepResult& result) {
    os << "sample,mode,seed,n_agents,k_neighbors,rewire_prob,radical_fraction,homophily,tolerance,n_steps,status";
    for (const char* prefix : {"b0_", "b1_"})
        for (const char* name : {"mean_assent", "mean_dissent", "mean_divergence", "mean_degree", "mean_certainty",
                                 "group_size", "banned_count", "certainty_n"})
            os << ',' << prefix << name;
    os << ",error\n";

    for (const auto& rec : result.runs) {
        const SimParams& p = rec.params;
        os << rec.sample_index << ',' << to_string(rec.mode) << ',' << p.seed << ',' << p.n_agents << ','
           << p.k_neighbors << ',' << format_real(p.rewire_prob) << ',' << format_real(p.radical_fraction) << ','
           << format_real(p.homophily) << ',' << format_real(p.tolerance) << ',' << p.n_steps << ','
           << (rec.final_rows ? "ok" : "error");
        for (Belief b : kBeliefs) {
            os << ',';
            if (rec.final_rows)
                write_row_fields(os, (*rec.final_rows)[to_int(b)]);
            else
                os << ",,,,,,,";
        }
        os << ',' << csv_quote(rec.error) << '\n';
    }
}

std::size_t CsvTable::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw IoError("csv: missing column \"" + std::string(name) + "\"");
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else {
            fields.back() += c;
        }
    }
    return fields;
}

CsvTable read_csv(std::istream& is) {
    CsvTable table;
    std::string line;
    if (!std::getline(is, line)) throw IoError("csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    table.header = split_csv_line(line);
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != table.header.size())
            throw IoError("csv: row " + std::to_string(table.rows.size() + 1) + " has " +
                          std::to_string(fields.size()) + " fields, header has " +
                          std::to_string(table.header.size()));
        table.rows.push_back(std::move(fields));
    }
    return table;
}

CsvTable read_csv(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    return read_csv(in);
}

std::string sha256_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string() + " for hashing");
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw IoError("sha256: init failed");
    char buf[1 << 16];
    while (in) {
        in.read(buf, sizeof buf);
        if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), digest, &len);
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xf];
    }
    return out;
}

void prepare_output_dir(const fs::path& dir, bool force) {
    std::error_code ec;
    if (fs::exists(dir, ec)) {
        if (!fs::is_directory(dir)) throw IoError(dir.string() + " exists and is not a directory");
        if (!fs::is_empty(dir) && !force)
            throw IoError("output directory " + dir.string() + " is not empty (use --force to overwrite)");
    }
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

void write_text_file(const fs::path& path, std::string_view text) {
    auto out = open_out(path);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out.flush()) throw IoError("write failed: " + path.string());
}

void write_manifest(const fs::path& dir, const ManifestInfo& info, const std::vector<std::string>& files) {
    json digests = json::object();
    for (const auto& f : files) digests[f] = sha256_file(dir / f);
    json doc = {{"artifact", "censorsim"},
                {"version", CENSORSIM_VERSION},
                {"rng_algorithm", Rng::kAlgorithm},
                {"command", info.command},
                {"base_seed", info.base_seed},
                {"parameters", info.parameters},
                {"started_at", info.started_at},
                {"finished_at", info.finished_at},
                {"digest_algorithm", "sha256"},
                {"files", std::move(digests)}};
    for (const auto& [k, v] : info.extra.items()) doc[k] = v;
    write_text_file(dir / kManifestName, doc.dump(2) + "\n");
}

std::vector<DigestMismatch> verify_manifest(const fs::path& dir) {
    std::ifstream in(dir / kManifestName);
    if (!in) throw IoError("no manifest in " + dir.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw IoError(std::string("manifest: ") + e.what());
    }
    std::vector<DigestMismatch> bad;
    for (const auto& [file, expected] : doc.at("files").items()) {
        const auto path = dir / file;
        const std::string want = expected.get<std::string>();
        if (!fs::exists(path)) {
            bad.push_back({file, want, {}});
            continue;
        }
        std::string got = sha256_file(path);
        if (got != want) bad.push_back({file, want, std::move(got)});
    }
    return bad;
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace censorsim::io
