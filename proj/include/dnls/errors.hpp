#ifndef DNLS_ERRORS_HPP
#define DNLS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dnls {

// Loss of validity of a numerical procedure (overflow, branch failure,
// failed decay gate, non-finite state). Maps to CLI exit code 3.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// A contract the caller violated (bad parameters, bad config). Exit code 2.
class config_error : public std::invalid_argument {
public:
    explicit config_error(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace dnls

#endif
