#include "gmdiv/manifest.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace gmdiv {

namespace {

std::string canonical_json(const std::string& text) {
    if (text.empty()) return "{}";
    // nlohmann objects keep keys sorted; dump() emits no whitespace
    return nlohmann::json::parse(text).dump();
}

}  // namespace

std::uint64_t config_hash(const std::string& json_text) {
    const std::string canon = canonical_json(json_text);
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string tool_version_string() { return "gmdiv 0.1.0"; }

std::string RunManifest::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["config"] = nlohmann::json::parse(config_json.empty() ? "{}" : config_json);
    char hex[32];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(config_hash(config_json)));
    j["config_hash"] = hex;
    j["seed"] = seed;
    j["precision_tier"] = precision_tier;
    j["tool_version"] = tool_version.empty() ? tool_version_string() : tool_version;
    j["timestamp"] = timestamp;
    return j.dump(2);
}

void RunManifest::write_sidecar(const std::string& out_path) const {
    std::ofstream os(out_path + ".manifest.json");
    if (!os) throw std::runtime_error("cannot write manifest for " + out_path);
    os << to_json() << "\n";
}

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct CsvWriter::Impl {
    std::ofstream os;
    std::size_t width = 0;
};

CsvWriter::CsvWriter(const std::string& path,
                     const std::vector<std::string>& header)
    : impl_(new Impl) {
    impl_->os.open(path);
    if (!impl_->os) {
        delete impl_;
        throw std::runtime_error("cannot open " + path);
    }
    impl_->width = header.size();
    for (std::size_t i = 0; i < header.size(); ++i)
        impl_->os << (i ? "," : "") << header[i];
    impl_->os << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != impl_->width)
        throw std::invalid_argument("csv row width mismatch");
    for (std::size_t i = 0; i < values.size(); ++i)
        impl_->os << (i ? "," : "") << format_g17(values[i]);
    impl_->os << "\n";
}

void CsvWriter::row_mixed(const std::vector<std::string>& cells) {
    if (cells.size() != impl_->width)
        throw std::invalid_argument("csv row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i)
        impl_->os << (i ? "," : "") << cells[i];
    impl_->os << "\n";
}

void CsvWriter::close() {
    if (impl_->os.is_open()) impl_->os.close();
}

CsvWriter::~CsvWriter() {
    close();
    delete impl_;
}

}  // namespace gmdiv
