// Prints the first Chebyshev moments of (1+x)^{-1/3} next to a quadrature check.
#include <cstdio>

#include <hyperapprox.hpp>

using namespace hyperapprox;

int main() {
  const KernelDescriptor k = kernels::IntervalAlgebraicLeft{-1.0 / 3.0};
  const auto mv = compute_moments<double>(k, 10, Region::interval());
  for (int r = 0; r <= 10; ++r) {
    const double ref = oracle_moment(k, r).real();
    std::printf("%2d % .16f  % .3e\n", r, mv.values[r], mv.values[r] - ref);
  }
}
