#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace cmarket::kernels {

struct MaxScan {
    double value; ///< -inf when the input is empty or all -inf
    std::size_t ties; ///< number of entries exactly equal to value
};

/** Inner loops of the simulation.
 *
 * Every variant must produce bit-identical results to the scalar reference:
 * all operations are element-wise IEEE arithmetic (no reassociation, no FMA)
 * or order-independent (max, equality counts).
 */
struct KernelSet {
    std::string_view name;

    /// out[a] = consumed[a] ? -inf : gamma * s + (1 - gamma) * liking[a],
    /// with s = pressure_num[a] / pressure_den, or s = 0 when pressure_den == 0
    /// (pressure_num may then be null).
    void (*score_opinions)(double gamma, const double* pressure_num, double pressure_den, const double* liking,
                           const std::uint8_t* consumed, double* out, std::size_t m);

    MaxScan (*max_scan)(const double* values, std::size_t m);

    /// acc[a] += row[a]
    void (*accumulate)(double* acc, const double* row, std::size_t m);
};

const KernelSet& scalar();

/// AVX2 variant, or nullptr when not compiled in or the CPU lacks AVX2.
const KernelSet* avx2();

/// Every variant usable on this machine, scalar first.
std::vector<const KernelSet*> available();

/** Kernel set used by the library.
 *
 * Chosen once at first use: the best available variant, unless the
 * CMARKET_KERNELS environment variable names another one ("scalar", "avx2").
 */
const KernelSet& active();

/// Replaces the active kernel set for subsequent calls (used by equivalence tests).
void use(const KernelSet& set);

} // namespace cmarket::kernels
