#ifndef REJECTRON_VERSION_HPP
#define REJECTRON_VERSION_HPP

namespace rejectron {

inline constexpr const char* kVersion = "rejectron-0.1.0";

}

#endif
