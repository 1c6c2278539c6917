#ifndef DNLS_ACCEPTANCE_HPP
#define DNLS_ACCEPTANCE_HPP

#include <string>
#include <vector>

namespace dnls {

// One verification criterion of the shipped fixture suite (A1..A12), with the
// binding measurement and its pinned tolerance.
struct Criterion {
    std::string id;
    std::string what;
    bool pass = false;
    double measured = 0.0;  // worst measured/tolerance ratio across sub-checks
    std::string detail;     // per-sub-check numbers
};

// Run the criteria whose id matches the filter (empty: all).  Each criterion
// catches its own failures; an exception is reported as a failed criterion.
std::vector<Criterion> run_acceptance(const std::string& filter = "");

}  // namespace dnls

#endif
