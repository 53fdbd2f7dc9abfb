#pragma once

#include <stdexcept>
#include <string>

namespace elab {

/// Failure detected by the kernel: ill-typed meta-free terms, malformed
/// declarations, unknown constants.
class kernel_exception : public std::runtime_error {
public:
    explicit kernel_exception(std::string const & msg) : std::runtime_error(msg) {}
};

}  // namespace elab
