#include <cstdlib>
#include <string_view>

#include "hawkrad/kernels.hpp"

namespace hawkrad::kernels {
namespace {

const KernelTable& select() {
    const char* forced = std::getenv("HAWKRAD_SIMD");
    if (forced != nullptr && std::string_view(forced) == "scalar") return scalar_table();
    if (const auto* t = avx2_table()) return *t;
    if (const auto* t = neon_table()) return *t;
    return scalar_table();
}

}  // namespace

const KernelTable& active() {
    static const KernelTable& table = select();
    return table;
}

}  // namespace hawkrad::kernels
