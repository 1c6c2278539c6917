#ifndef DNLS_PARALLEL_HPP
#define DNLS_PARALLEL_HPP

#include <cstddef>

namespace dnls::par {

// Global switch between the OpenMP map and the serial reference path.
// Both write results by index, so they produce bit-identical output.
bool enabled();
void set_enabled(bool on);

void run_indexed(std::ptrdiff_t n, void (*fn)(std::ptrdiff_t, void*), void* ctx, bool force_serial);

// Parallel map over [0, n).  f(i) must only write state owned by index i.
template <typename F>
void for_index(std::ptrdiff_t n, F&& f, bool force_serial = false) {
    auto thunk = [](std::ptrdiff_t i, void* ctx) { (*static_cast<F*>(ctx))(i); };
    run_indexed(n, thunk, &f, force_serial);
}

}  // namespace dnls::par

#endif
