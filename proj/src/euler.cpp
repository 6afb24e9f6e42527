#include "tetrus/euler.hpp"

#include <numeric>
#include <string>

namespace tetrus {

long long riemann_hurwitz(long long chi_base, long long degree,
                          const std::vector<BranchPointDatum>& branch) {
  if (degree < 1) throw InvalidArgument("covering degree must be positive");
  long long chi = degree * chi_base;
  for (const auto& point : branch) {
    long long sum = 0;
    for (long long d : point.local_degrees) {
      if (d < 1) throw InvalidArgument("local degrees must be positive");
      sum += d;
    }
    if (sum != degree) {
      throw InvalidArgument("inconsistent branch datum: local degrees sum to " + std::to_string(sum) +
                            ", covering degree is " + std::to_string(degree));
    }
    chi -= degree - static_cast<long long>(point.local_degrees.size());
  }
  return chi;
}

long long genus_from_chi(long long chi, long long boundary_components) {
  if (boundary_components < 0) throw InvalidArgument("boundary count must be nonnegative");
  const long long twice = 2 - boundary_components - chi;
  if (twice % 2 != 0) {
    throw InvariantViolation("parity violation: chi = " + std::to_string(chi) + " with " +
                             std::to_string(boundary_components) + " boundary components");
  }
  if (twice < 0) throw InvariantViolation("negative genus for chi = " + std::to_string(chi));
  return twice / 2;
}

std::vector<BranchPointDatum> simple_double_branching(long long count) {
  if (count < 0) throw InvalidArgument("branch point count must be nonnegative");
  return std::vector<BranchPointDatum>(static_cast<std::size_t>(count), BranchPointDatum{{2}});
}

}  // namespace tetrus
