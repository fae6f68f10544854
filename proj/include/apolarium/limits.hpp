#pragma once

#include <cstddef>

namespace apolarium {

/// Size guards for operations whose cost can explode (powers, Kronecker
/// products, partial-space closures). Exceeding one raises GuardError.
struct Limits {
  std::size_t max_terms = 1'000'000;
  std::size_t max_entries = 10'000'000;
  unsigned max_degree = 24;
};

}  // namespace apolarium
