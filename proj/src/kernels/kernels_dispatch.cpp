#include "cmarket/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace cmarket::kernels {

#if defined(CMARKET_HAVE_AVX2)
const KernelSet& avx2_impl();
#endif

const KernelSet* avx2() {
#if defined(CMARKET_HAVE_AVX2)
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? &avx2_impl() : nullptr;
#else
    return nullptr;
#endif
}

std::vector<const KernelSet*> available() {
    std::vector<const KernelSet*> sets{&scalar()};
    if (const auto* v = avx2()) sets.push_back(v);
    return sets;
}

namespace {

const KernelSet& choose() {
    const auto sets = available();
    if (const char* requested = std::getenv("CMARKET_KERNELS"); requested && *requested) {
        for (const auto* set : sets)
            if (set->name == requested) return *set;
        throw std::runtime_error(std::string("CMARKET_KERNELS=") + requested + " is not available on this machine");
    }
    return *sets.back();
}

std::atomic<const KernelSet*>& slot() {
    static std::atomic<const KernelSet*> current{&choose()};
    return current;
}

} // namespace

const KernelSet& active() {
    return *slot().load(std::memory_order_acquire);
}

void use(const KernelSet& set) {
    slot().store(&set, std::memory_order_release);
}

} // namespace cmarket::kernels
