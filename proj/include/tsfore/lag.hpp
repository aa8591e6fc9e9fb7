#ifndef TSFORE_LAG_HPP
#define TSFORE_LAG_HPP

#include <cstddef>
#include <vector>

#include "tsfore/time_series.hpp"

namespace tsfore {

/**
 * Shifting-window feature matrix: row i holds values[i .. i+window) and
 * targets[i] is values[i+window], so each target is predicted from the
 * `window` observations before it.
 */
struct LagMatrix {
    std::vector<std::vector<double>> rows;
    std::vector<double> targets;
    std::size_t window = 0;

    std::size_t row_count() const { return rows.size(); }
};

LagMatrix make_lag_matrix(const TimeSeries& series, std::size_t window);

} // namespace tsfore

#endif // TSFORE_LAG_HPP
