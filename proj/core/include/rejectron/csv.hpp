#ifndef REJECTRON_CSV_HPP
#define REJECTRON_CSV_HPP

#include <string>

namespace rejectron {

// shortest representation that round-trips to the same double
std::string format_double(double v);

// writes text to path atomically enough for our purposes (truncate + write)
void write_text_file(const std::string& path, const std::string& text);

std::string read_text_file(const std::string& path);

}

#endif
