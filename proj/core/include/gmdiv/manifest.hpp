#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gmdiv {

/// FNV-1a 64-bit over the canonical (sorted-key, no-whitespace) form of the
/// given JSON text. Stable across runs and platforms.
std::uint64_t config_hash(const std::string& json_text);

struct RunManifest {
    std::string command;
    std::string config_json;  // canonicalized on write
    std::uint64_t seed = 0;
    std::string precision_tier = "auto";
    std::string tool_version;
    std::string timestamp;  // UTC, ISO 8601

    std::string to_json() const;  // includes the config hash
    /// Writes `<out_path>.manifest.json` next to the output it describes.
    void write_sidecar(const std::string& out_path) const;
};

std::string tool_version_string();

/// Numeric CSV with full round-trip precision (%.17g cells).
struct CsvWriter {
    explicit CsvWriter(const std::string& path,
                       const std::vector<std::string>& header);
    void row(const std::vector<double>& values);
    void row_mixed(const std::vector<std::string>& cells);
    void close();
    ~CsvWriter();

  private:
    struct Impl;
    Impl* impl_;
};

std::string format_g17(double v);

}  // namespace gmdiv
