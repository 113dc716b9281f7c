#include "cmarket/kernels.hpp"

#include <limits>

namespace cmarket::kernels {

namespace {

void score_opinions_scalar(double gamma, const double* pressure_num, double pressure_den, const double* liking,
                           const std::uint8_t* consumed, double* out, std::size_t m) {
    constexpr double excluded = -std::numeric_limits<double>::infinity();
    const double personal = 1.0 - gamma;
    if (pressure_den == 0.0) {
        for (std::size_t a = 0; a < m; ++a)
            out[a] = consumed[a] ? excluded : gamma * 0.0 + personal * liking[a];
        return;
    }
    for (std::size_t a = 0; a < m; ++a) {
        const double s = pressure_num[a] / pressure_den;
        out[a] = consumed[a] ? excluded : gamma * s + personal * liking[a];
    }
}

MaxScan max_scan_scalar(const double* values, std::size_t m) {
    MaxScan r{-std::numeric_limits<double>::infinity(), 0};
    for (std::size_t a = 0; a < m; ++a) {
        if (values[a] > r.value) {
            r.value = values[a];
            r.ties = 1;
        } else if (values[a] == r.value) {
            ++r.ties;
        }
    }
    if (r.value == -std::numeric_limits<double>::infinity()) r.ties = 0;
    return r;
}

void accumulate_scalar(double* acc, const double* row, std::size_t m) {
    for (std::size_t a = 0; a < m; ++a) acc[a] += row[a];
}

} // namespace

const KernelSet& scalar() {
    static const KernelSet set{"scalar", &score_opinions_scalar, &max_scan_scalar, &accumulate_scalar};
    return set;
}

} // namespace cmarket::kernels
