#include <cstdlib>
#include <string_view>

#include "hminor/kernels.hpp"

namespace hminor::kernels {

#ifdef HMINOR_HAVE_AVX2
const KernelTable& avx2_table_impl() noexcept;
#endif

const KernelTable* avx2_table() noexcept {
#ifdef HMINOR_HAVE_AVX2
    if (__builtin_cpu_supports("avx2")) return &avx2_table_impl();
#endif
    return nullptr;
}

namespace {

const KernelTable& select_table() noexcept {
    const char* env = std::getenv("HMINOR_KERNELS");
    if (env && std::string_view(env) == "scalar") return scalar_table();
    if (const KernelTable* t = avx2_table()) return *t;
    return scalar_table();
}

}  // namespace

const KernelTable& active() noexcept {
    static const KernelTable& table = select_table();
    return table;
}

std::vector<const KernelTable*> available_tables() {
    std::vector<const KernelTable*> out{&scalar_table()};
    if (const KernelTable* t = avx2_table()) out.push_back(t);
    return out;
}

}  // namespace hminor::kernels
