#include "wqed/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace wqed::kernels {

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Table& active() {
    static const Table* table = [] {
        const char* lane = std::getenv("LAMBDA_SCATTER_LANE");
        if (lane && std::strcmp(lane, "scalar") == 0) return &scalar_table();
        if (lane && std::strcmp(lane, "avx2") == 0) return &avx2_table();
        return avx2_available() ? &avx2_table() : &scalar_table();
    }();
    return *table;
}

}  // namespace wqed::kernels
