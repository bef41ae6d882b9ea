#include "l1rank/report.hpp"

namespace l1rank {

const char* to_string(SolvePath p) noexcept {
  switch (p) {
    case SolvePath::trivial: return "trivial";
    case SolvePath::exhaustive: return "exhaustive";
    case SolvePath::lp_rounding: return "lp_rounding";
    case SolvePath::oracle: return "oracle";
  }
  return "unknown";
}

}  // namespace l1rank
