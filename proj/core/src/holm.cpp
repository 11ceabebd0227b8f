#include "nabfs/holm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nabfs/errors.hpp"

namespace nabfs {

AdjustedPValues holm_adjust(std::span<const double> raw) {
    for (double v : raw) {
        if (!(v >= 0.0 && v <= 1.0)) throw OutOfRangePValueError(v);
    }
    const int m = static_cast<int>(raw.size());
    AdjustedPValues out;
    out.raw.assign(raw.begin(), raw.end());
    out.adjusted.resize(raw.size());
    out.order.resize(raw.size());
    std::iota(out.order.begin(), out.order.end(), 0);
    std::sort(out.order.begin(), out.order.end(), [&](int a, int b) {
        if (raw[static_cast<std::size_t>(a)] != raw[static_cast<std::size_t>(b)]) {
            return raw[static_cast<std::size_t>(a)] < raw[static_cast<std::size_t>(b)];
        }
        return a < b;  // stable under tied p-values
    });
    double running = 0.0;
    for (int j = 0; j < m; ++j) {
        const double scaled =
            static_cast<double>(m - j) * raw[static_cast<std::size_t>(out.order[static_cast<std::size_t>(j)])];
        running = std::min(1.0, std::max(running, scaled));
        out.adjusted[static_cast<std::size_t>(out.order[static_cast<std::size_t>(j)])] = running;
    }
    return out;
}

}  // namespace nabfs
