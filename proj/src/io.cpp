#include "confopt/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace confopt {

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        out << content;
        if (!out) {
            std::filesystem::remove(tmp);
            throw std::runtime_error("write failed for " + tmp);
        }
    }
    std::filesystem::rename(tmp, path);
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream out;
    for (std::size_t i = 0; i < header.size(); ++i)
        out << header[i] << (i + 1 < header.size() ? "," : "\n");
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i)
            out << row[i] << (i + 1 < row.size() ? "," : "\n");
    write_text_file(path, out.str());
}

void write_trace_csv(const std::string& path, const Trace& trace) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(trace.fvals.size());
    for (std::size_t i = 0; i < trace.fvals.size(); ++i) {
        const bool last = i + 1 == trace.fvals.size();
        rows.push_back({std::to_string(i), format_double(trace.fvals[i]),
                        format_double(trace.gradnorms[i]),
                        trace.diverged && last ? "1" : "0"});
    }
    write_csv(path, {"iter", "f", "gradnorm", "diverged"}, rows);
}

}  // namespace confopt
