#include "cpa/csv.hpp"

#include <cstdio>

namespace cpa {

std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::uint64_t fnv1a_hash(const std::string& text)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

CsvWriter::CsvWriter(const std::string& path) : path_(path)
{
    out_.open(path, std::ios::out | std::ios::trunc);
    if (!out_)
        throw IoError("cannot open output file: " + path);
}

void CsvWriter::comment(const std::string& text)
{
    out_ << "# " << text << "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells)
{
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i)
            out_ << ",";
        out_ << cells[i];
    }
    out_ << "\n";
}

void CsvWriter::close()
{
    out_.flush();
    if (!out_)
        throw IoError("write failure on: " + path_);
    out_.close();
}

} // namespace cpa
