#include "tsfore/lag.hpp"

#include "tsfore/errors.hpp"

namespace tsfore {

LagMatrix make_lag_matrix(const TimeSeries& series, std::size_t window) {
    if (window == 0) raise(ErrorCode::ParamOutOfRange, "lag window must be positive");
    const std::size_t n = series.size();
    if (n <= window) {
        raise(ErrorCode::SeriesTooShort, "need more than " + std::to_string(window) +
                                             " points, have " + std::to_string(n));
    }
    LagMatrix m;
    m.window = window;
    const std::size_t rows = n - window;
    m.rows.reserve(rows);
    m.targets.reserve(rows);
    const auto& v = series.values();
    for (std::size_t i = 0; i < rows; ++i) {
        m.rows.emplace_back(v.begin() + static_cast<std::ptrdiff_t>(i),
                            v.begin() + static_cast<std::ptrdiff_t>(i + window));
        m.targets.push_back(v[i + window]);
    }
    return m;
}

} // namespace tsfore
