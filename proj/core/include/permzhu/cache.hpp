#pragma once

#include <string>
#include <vector>

#include "permzhu/iso.hpp"
#include "permzhu/zhu.hpp"

namespace permzhu {

struct CacheStats {
  int hits = 0;
  int misses = 0;
  std::vector<std::string> warnings;
};

// JSON file cache for O-span matrices, keyed by (algebra, twist, cutoffs)
// and guarded by a content checksum.  A corrupt or mismatched file is
// recomputed with a warning; an unwritable directory disables persistence
// but never fails the run.  Writes are atomic (write-then-rename).
class OspanCache {
 public:
  // empty directory disables caching entirely
  OspanCache(std::string dir, std::string algebra_name, int threads = 0);

  OspanBuilder builder();
  const CacheStats& stats() const { return stats_; }

  static std::string cache_key(const std::string& algebra, const TwistSpec& spec, Weight wgen,
                               Weight wstore);

 private:
  std::string dir_;
  std::string algebra_;
  int threads_;
  CacheStats stats_;
};

}  // namespace permzhu
