#include "memspike/errors.hpp"

#include <sstream>

namespace memspike {

namespace {

std::string not_separable_message(const std::string& lower, const std::string& upper, double margin) {
    std::ostringstream os;
    os << "calibration classes '" << lower << "' and '" << upper
       << "' are not separable (margin " << margin << " A)";
    return os.str();
}

std::string parse_message(const std::string& path, int line, const std::string& what) {
    std::ostringstream os;
    os << path;
    if (line > 0) os << ":" << line;
    os << ": " << what;
    return os.str();
}

} // namespace

NotSeparableError::NotSeparableError(std::string lower, std::string upper, double margin_amps_)
    : std::runtime_error(not_separable_message(lower, upper, margin_amps_)),
      lower_class(std::move(lower)),
      upper_class(std::move(upper)),
      margin_amps(margin_amps_) {}

ParseError::ParseError(const std::string& path_, int line_, const std::string& what_)
    : std::runtime_error(parse_message(path_, line_, what_)), path(path_), line(line_) {}

} // namespace memspike
