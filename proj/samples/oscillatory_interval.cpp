// Approximates e^{i 100 x} / (1.2 - x^2) with a 70-point Gauss-Legendre rule,
// where the classical scheme aliases and the moment-based one does not.
#include <cstdio>

#include <hyperapprox.hpp>

using namespace hyperapprox;

int main() {
  const int n = 120;
  const KernelDescriptor k = kernels::IntervalOscillatory{100.0};
  auto f = [](double x) { return 1.0 / (1.2 - x * x); };

  const auto rule = gauss_legendre(70);
  const auto mv = compute_moments<std::complex<double>>(k, 2 * n, Region::interval());
  const auto alpha = assemble_alpha<Interval>(n, mv);
  const auto ew = efficient_weights(rule, n, alpha);
  const auto fs = sample(f, rule);

  const auto s = efficient_hyperinterpolation<Interval>(std::span<const double>(fs), ew);
  const auto l = classical_hyperinterpolation<Interval, std::complex<double>>(k, f, rule, n);

  std::printf("n=%d m=%zu A_n=%.6e\n", n, rule.size(), alpha.A_n);
  std::printf("classical L2 error %.4e\n", error_norm<Interval>(l, k, f, 2));
  std::printf("efficient L2 error %.4e\n", error_norm<Interval>(s, k, f, 2));

  const double x = 0.3;
  std::printf("K f(%.1f) = %.6f%+.6fi, S_n = %.6f%+.6fi\n", x, (kernel_value(k, x) * f(x)).real(),
              (kernel_value(k, x) * f(x)).imag(), evaluate_expansion<Interval>(s, x).real(),
              evaluate_expansion<Interval>(s, x).imag());
}
