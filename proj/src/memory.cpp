#include "mpsham/memory.hpp"

namespace mpsham {

MemoryBudget& default_budget() {
  static MemoryBudget budget;
  return budget;
}

}  // namespace mpsham
