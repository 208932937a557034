#include "drp/load_set.hpp"

#include <fmt/format.h>

#include "drp/graphgen.hpp"

namespace drp {

std::string LoadSet::hex() const {
  int top = kWords - 1;
  while (top > 0 && w_[top] == 0) --top;
  std::string s = fmt::format("{:x}", w_[top]);
  for (int k = top - 1; k >= 0; --k) s += fmt::format("{:016x}", w_[k]);
  return "0x" + s;
}

double load_weight(const LoadSet& load, const Instance& inst) {
  double w = 0;
  for (int r : load.members()) w += inst.request(r).q;
  return w;
}

}  // namespace drp
