#include "mpsham/half_int.hpp"

#include <cctype>

namespace mpsham {

HalfInt HalfInt::parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty half-integer");
  std::size_t slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      std::size_t used = 0;
      int n = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return HalfInt(2 * n);
    }
    std::size_t used = 0;
    int num = std::stoi(s.substr(0, slash), &used);
    if (used != slash) throw std::invalid_argument(s);
    int den = std::stoi(s.substr(slash + 1), &used);
    if (used != s.size() - slash - 1 || den != 2)
      throw std::invalid_argument(s);
    return HalfInt(num);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad half-integer '" + s +
                                "' (expected e.g. 2, -1, 3/2)");
  }
}

}  // namespace mpsham
