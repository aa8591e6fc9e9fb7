#ifndef TSFORE_FORMAT_HPP
#define TSFORE_FORMAT_HPP

#include <string>

namespace tsfore {

/// Shortest decimal string that round-trips to the same double
/// (std::to_chars); deterministic, used by every text/CSV output.
std::string format_double(double value);

} // namespace tsfore

#endif // TSFORE_FORMAT_HPP
