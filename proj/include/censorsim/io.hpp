#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "censorsim/engine.hpp"
#include "censorsim/sweep.hpp"

namespace censorsim::io {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kRunCsvHeader =
    "step,belief,mean_assent,mean_dissent,mean_divergence,mean_degree,mean_certainty,group_size,"
    "banned_count,certainty_n";

/// At most 9 significant digits, shortest form (no trailing zeros).
std::string format_real(double x);
std::string format_real(const std::optional<double>& x);   // empty when absent

void write_run_csv(std::ostream& os, const RunResult& result);
void emit_run_csv(const RunResult& result, const std::filesystem::path& path);
/// Parses a file written by write_run_csv.
std::vector<GroupMetricsRow> read_run_csv(std::istream& is);

/// One row per run, ordered by (sample, mode).
void write_sweep_csv(std::ostream& os, const SweepResult& result);

/// A parsed sweep CSV: header names and per-row fields, quotes removed.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(std::string_view name) const;   // throws IoError if missing
};

std::vector<std::string> split_csv_line(std::string_view line);
CsvTable read_csv(std::istream& is);
CsvTable read_csv(const std::filesystem::path& path);

/// Empty field -> absent; anything unparsable throws IoError.
std::optional<double> parse_real(std::string_view field);

/// Lower-case hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

/// Creates `dir`, refusing a non-empty existing directory unless `force`.
void prepare_output_dir(const std::filesystem::path& dir, bool force);

/// Writes `text` to dir/name (binary, exactly as given).
void write_text_file(const std::filesystem::path& path, std::string_view text);

inline constexpr std::string_view kManifestName = "manifest.json";

struct ManifestInfo {
    std::string command;
    nlohmann::json parameters;   // resolved params or design
    std::uint64_t base_seed = 0;
    std::string started_at;
    std::string finished_at;
    nlohmann::json extra = nlohmann::json::object();
};

/// Writes dir/manifest.json listing the SHA-256 of every `files` entry
/// (relative to dir). Must be called after all outputs are written.
void write_manifest(const std::filesystem::path& dir, const ManifestInfo& info,
                    const std::vector<std::string>& files);

struct DigestMismatch {
    std::string file;
    std::string expected;
    std::string actual;   // empty when the file is missing
};

/// Recomputes every digest listed in dir/manifest.json.
std::vector<DigestMismatch> verify_manifest(const std::filesystem::path& dir);

/// Current UTC time, ISO 8601.
std::string utc_timestamp();

}  // namespace censorsim::io
