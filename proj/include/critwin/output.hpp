#pragma once

// Result rows, deterministic CSV emission, JSON run summaries and the
// git-style content hash of inputs.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace critwin {

struct ResultRow {
    std::string experiment;
    double gamma = 0.0;
    std::int64_t n = 0;
    double alpha = 0.0;
    double beta = 0.0;
    std::string kernel;
    std::int64_t seed = -1;  // -1: aggregate row over seeds
    std::int64_t k = -1;     // -1: no threshold dimension
    std::string statistic;
    double estimate = 0.0;
    double half_width = 0.0;
    std::int64_t n_reps = 0;
    double censored_fraction = 0.0;
    std::string flag;  // "", "censored", "partial"
};

// Shortest round-trip decimal representation; keeps CSV output byte-stable.
std::string format_double(double v);

// Sorts rows by cell key and writes the CSV with a full header row.
void write_csv(std::ostream& os, std::vector<ResultRow> rows);

struct RunSummary {
    std::string experiment;
    std::string config_echo;
    std::string content_hash;  // git-style SHA-1 blob hash of the config text
    double wall_time_s = 0.0;
    std::int64_t n_rows = 0;
    std::vector<std::string> outputs;
};

void write_summary_json(std::ostream& os, const RunSummary& s);

// SHA-1 of "blob <len>\0<content>", hex-encoded (the hash git assigns the file).
std::string git_blob_sha1(const std::string& content);

}  // namespace critwin
