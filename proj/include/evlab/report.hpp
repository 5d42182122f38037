#pragma once

#include <string>

#include "json.hpp"

// Report plumbing shared by the CLI and its tests: fixed-key-order JSON
// documents, the flat per-mu CSV, and atomic file emission (write to a
// sibling temp file, then rename) so failures never leave partial reports.

namespace evlab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kCsvHeader = "mu,lower_margin,upper_margin,c_hat,classification";

// Document skeleton with the keys in their serialization order; timing_ms is
// appended by finalize so it always lands last (and stays strippable).
Json make_report(const Json& config);

// Serializes with 2-space indent and a trailing newline.
std::string to_text(const Json& doc);

// Appends timing_ms, then writes atomically; empty path prints to stdout.
void write_report(Json doc, const std::string& path, double timing_ms);

// Atomic text-file write used for CSV side tables.
void write_text_file(const std::string& path, const std::string& text);

// Drops the timing_ms line; two reports from identical configs must be
// byte-identical after this.
std::string strip_timing(const std::string& report_text);

}  // namespace evlab
