#pragma once

#include <stdexcept>
#include <string>

namespace permzhu {

// Raised when a computation cannot be completed at the configured truncation
// (support beyond the stored basis, unexpressible coset, failed algebra
// validation).  The message names the offending object so the cutoff can be
// raised deliberately.
class CutoffError : public std::runtime_error {
 public:
  explicit CutoffError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace permzhu
