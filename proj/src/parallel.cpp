#include "dnls/parallel.hpp"

#include <atomic>
#include <cstdlib>

namespace dnls::par {

namespace {
std::atomic<bool> g_enabled{[] {
    const char* e = std::getenv("DNLS_SERIAL");
    return !(e && e[0] == '1');
}()};
}

bool enabled() { return g_enabled.load(std::memory_order_relaxed); }
void set_enabled(bool on) { g_enabled.store(on, std::memory_order_relaxed); }

void run_indexed(std::ptrdiff_t n, void (*fn)(std::ptrdiff_t, void*), void* ctx, bool force_serial) {
    if (force_serial || !enabled()) {
        for (std::ptrdiff_t i = 0; i < n; ++i) fn(i, ctx);
        return;
    }
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) fn(i, ctx);
}

}  // namespace dnls::par
