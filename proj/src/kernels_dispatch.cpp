#include "evlab/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace evlab::kernels {
namespace {

const Backend* g_forced = nullptr;

const Backend* pick(const char* name) {
    if (name != nullptr) {
#if defined(EVLAB_HAVE_AVX2)
        if (std::strcmp(name, "avx2") == 0 && avx2_supported()) return &avx2_backend;
#endif
        if (std::strcmp(name, "scalar") == 0) return &scalar_backend;
        return nullptr;  // unknown or unavailable: fall through to auto
    }
    return nullptr;
}

const Backend* auto_select() {
    if (const char* env = std::getenv("EVLAB_KERNELS")) {
        if (const Backend* b = pick(env)) return b;
    }
#if defined(EVLAB_HAVE_AVX2)
    if (avx2_supported()) return &avx2_backend;
#endif
    return &scalar_backend;
}

}  // namespace

const Backend& active() {
    if (g_forced != nullptr) return *g_forced;
    static const Backend* chosen = auto_select();
    return *chosen;
}

void force_backend(const char* name) {
    g_forced = (name != nullptr) ? pick(name) : nullptr;
}

const char* backend_name() { return active().name; }

}  // namespace evlab::kernels
