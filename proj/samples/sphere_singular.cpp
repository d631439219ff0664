// |xi - x|^{-1/2} e^{x+y+z} on the sphere, for a few degrees.
#include <cmath>
#include <cstdio>

#include <hyperapprox.hpp>

using namespace hyperapprox;

int main() {
  const auto xi = SphericalPoint::normalized(1.0, 1.0, 0.0);
  const KernelDescriptor k = kernels::SphereAlgebraic{xi, -0.5};
  auto f = [](const SphericalPoint& p) { return std::exp(p.x + p.y + p.z); };

  std::printf("%4s %6s %12s %12s\n", "n", "m", "classical", "efficient");
  for (int n : {4, 8, 12, 16}) {
    // a product rule of strength ~1.1 n, turned so no node sits on xi
    const int t = static_cast<int>(std::ceil(1.1 * n));
    const double phase = std::numbers::pi / (t + 1);
    const auto rule = sphere_product_rule(t, phase);

    const auto mv = compute_moments<double>(k, 2 * n, Region::sphere());
    const auto alpha = assemble_alpha<Sphere>(n, mv);
    const auto fs = sample(f, rule);
    const auto s = efficient_hyperinterpolation<Sphere>(std::span<const double>(fs), efficient_weights(rule, n, alpha));
    const auto l = classical_hyperinterpolation<Sphere, double>(k, f, rule, n);
    std::printf("%4d %6zu %12.4e %12.4e\n", n, rule.size(), error_norm<Sphere>(l, k, f, 1),
                error_norm<Sphere>(s, k, f, 1));
  }
}
