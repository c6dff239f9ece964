#pragma once

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cpa {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Floats print with 17 significant digits so values round-trip bit exactly.
std::string format_double(double v);

std::uint64_t fnv1a_hash(const std::string& text);

class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);

    void comment(const std::string& text); // "# text"
    void row(const std::vector<std::string>& cells);
    void close();

    static std::string cell(double v) { return format_double(v); }
    static std::string cell(std::uint64_t v) { return std::to_string(v); }
    static std::string cell(std::int64_t v) { return std::to_string(v); }
    static std::string cell(int v) { return std::to_string(v); }
    static std::string cell(const std::string& v) { return v; }

private:
    std::ofstream out_;
    std::string path_;
};

} // namespace cpa
