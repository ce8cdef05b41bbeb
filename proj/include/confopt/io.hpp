#pragma once

#include <string>
#include <vector>

#include "confopt/types.hpp"

namespace confopt {

/// 17 significant digits; round-trips doubles bit-faithfully.
std::string format_double(double value);

/// Writes the whole file through a temporary and renames on success, so a
/// failed run never leaves a partial artifact behind.
void write_text_file(const std::string& path, const std::string& content);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/// Trace CSV with header iter,f,gradnorm,diverged.
void write_trace_csv(const std::string& path, const Trace& trace);

}  // namespace confopt
