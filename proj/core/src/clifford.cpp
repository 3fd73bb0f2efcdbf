#include "hypsym/clifford.hpp"

#include <cstdio>
#include <sstream>

namespace hypsym {

std::string to_string(const CliffordElement<double>& x) {
  std::ostringstream out;
  bool first = true;
  for (Mask m = 0; m < x.size(); ++m) {
    const double c = x[m];
    if (c == 0.0) continue;
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << "-";
    first = false;
    out << std::abs(c);
    if (m != 0) {
      out << "*e";
      for (int i = 0; i < kMaxCliffordDim; ++i)
        if ((m >> i) & 1u) out << (i + 1);
    }
  }
  if (first) out << "0";
  return out.str();
}

}  // namespace hypsym
