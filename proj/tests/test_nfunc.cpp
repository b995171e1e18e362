#include "doctest.h"

#include <cmath>
#include <random>

#include "varpstokes/exponent.hpp"
#include "varpstokes/nfunc.hpp"

namespace varpstokes {
namespace {

Mat2 random_matrix(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Mat2 m;
  m << u(rng), u(rng), u(rng), u(rng);
  return m;
}

TEST_CASE("conjugate exponent") {
  CHECK(conjugate_exponent(2.0) == doctest::Approx(2.0));
  CHECK(conjugate_exponent(1.5) == doctest::Approx(3.0));
  CHECK(conjugate_exponent(3.0) == doctest::Approx(1.5));
  // 1/p + 1/p' = 1 across the sampled range.
  for (double p : {1.1, 1.75, 2.25, 3.4})
    CHECK(1.0 / p + 1.0 / conjugate_exponent(p) == doctest::Approx(1.0));
}

TEST_CASE("stress closed form") {
  Mat2 a;
  a << 1.0, 2.0, 0.0, 1.0; // sym part [[1,1],[1,1]], norm 2
  const StressParams sp{2.0, 0.5};
  const Mat2 s = stress(sp, 3.0, a);
  // nu0 (delta + |A^sym|)^{p-2} A^sym = 2 * 2.5 * [[1,1],[1,1]]
  Mat2 expected;
  expected << 5.0, 5.0, 5.0, 5.0;
  CHECK((s - expected).norm() == doctest::Approx(0.0).epsilon(1e-14));

  // p = 2 is the linear Stokes stress regardless of delta.
  const Mat2 s2 = stress(StressParams{3.0, 0.25}, 2.0, a);
  CHECK((s2 - 3.0 * sym_part(a)).norm() == doctest::Approx(0.0).epsilon(1e-14));

  // Continuous extension at the degenerate point.
  const Mat2 zero = stress(StressParams{1.0, 0.0}, 1.5, Mat2::Zero());
  CHECK(zero.norm() == 0.0);
}

TEST_CASE("flux maps closed form") {
  Mat2 a = Mat2::Zero();
  a(0, 0) = 2.0; // |A^sym| = 2
  const Mat2 f = tensor_F(0.0, 4.0, a);
  CHECK((f - 2.0 * a).norm() == doctest::Approx(0.0).epsilon(1e-14));

  // F* with p = 3: p' = 1.5, (0 + |A|)^{-1/4} A... exponent (p'-2)/2 = -1/4.
  Mat2 b = Mat2::Zero();
  b(0, 0) = 16.0;
  const Mat2 fc = tensor_F_conj(0.0, 3.0, b);
  CHECK(fc(0, 0) == doctest::Approx(16.0 * std::pow(16.0, -0.25)).epsilon(1e-14));

  // p = 2 makes F* the identity map for any delta.
  const Mat2 id = tensor_F_conj(0.7, 2.0, b);
  CHECK((id - b).norm() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("flux kernel sees only the symmetric part") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 50; ++k) {
    const Mat2 a = random_matrix(rng, 4.0);
    const Mat2 as = sym_part(a);
    for (double p : {1.5, 2.0, 2.75}) {
      CHECK((tensor_F(1e-4, p, a) - tensor_F(1e-4, p, as)).norm() <= 1e-15);
      CHECK((stress(StressParams{1.0, 1e-4}, p, a) -
             stress(StressParams{1.0, 1e-4}, p, as))
                .norm() <= 1e-15);
    }
  }
}

TEST_CASE("degeneracy on antisymmetric inputs") {
  Mat2 rot;
  rot << 0.0, 1.0, -1.0, 0.0;
  for (double p : {1.5, 2.0, 3.5})
    for (double delta : {0.0, 1e-4, 1.0}) {
      CHECK(stress(StressParams{1.0, delta}, p, rot).norm() == 0.0);
      CHECK(tensor_F(delta, p, rot).norm() == 0.0);
      CHECK(tensor_F_conj(delta, p, rot).norm() == 0.0);
    }
}

TEST_CASE("phi closed form and derivative") {
  // delta = 0: phi(r) = r^p / p.
  CHECK(phi(0.0, 3.0, 2.0) == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
  // p = 2: phi(r) = r^2 / 2 for any delta.
  CHECK(phi(1.0, 2.0, 2.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(phi(0.0, 1.5, 0.0) == 0.0);

  // phi'(r) = (delta + r)^{p-2} r via central differences.
  for (double p : {1.5, 2.0, 2.5, 3.5})
    for (double delta : {0.0, 1e-4, 1.0})
      for (double r : {0.3, 1.0, 4.0}) {
        const double h = 1e-6;
        const double fd = (phi(delta, p, r + h) - phi(delta, p, r - h)) / (2 * h);
        const double exact = std::pow(delta + r, p - 2.0) * r;
        CHECK(fd == doctest::Approx(exact).epsilon(1e-7));
      }
}

TEST_CASE("shifted surrogates") {
  // Zero shift reduces to the plain surrogate (delta + r)^{p-2} r^2.
  for (double p : {1.5, 2.5, 3.5})
    for (double delta : {0.0, 1e-4, 1.0})
      for (double r : {0.1, 1.0, 7.0})
        CHECK(phi_shifted(delta, p, 0.0, r) ==
              doctest::Approx(std::pow(delta + r, p - 2.0) * r * r).epsilon(1e-14));

  // Conjugate surrogate at p = 2 is r^2 independent of shift and delta.
  CHECK(phi_shifted_conj(0.3, 2.0, 5.0, 3.0) == doctest::Approx(9.0).epsilon(1e-14));

  // Shift moves the transition point but keeps quadratic small-r behavior:
  // for r well below the shift the ratio to r^2 is nearly constant.
  const double lo = phi_shifted(1e-4, 3.0, 2.0, 1e-6) / 1e-12;
  const double lo2 = phi_shifted(1e-4, 3.0, 2.0, 2e-6) / 4e-12;
  CHECK(lo == doctest::Approx(lo2).epsilon(1e-4));
}

TEST_CASE("monotonicity and equivalence bracket") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> up(1.5, 3.5);
  constexpr double deltas[3] = {0.0, 1e-4, 1.0};
  double lo = 1e300, hi = 0.0;
  for (int k = 0; k < 2000; ++k) {
    const double p = up(rng);
    const double delta = deltas[k % 3];
    const Mat2 a = random_matrix(rng, 5.0);
    const Mat2 b = random_matrix(rng, 5.0);
    const Mat2 ds = stress(StressParams{1.0, delta}, p, a) -
                    stress(StressParams{1.0, delta}, p, b);
    const double product = ddot(ds, a - b);
    const double flux2 =
        (tensor_F(delta, p, a) - tensor_F(delta, p, b)).squaredNorm();
    if (flux2 < 1e-28) continue;
    CHECK(product > 0.0);
    const double ratio = product / flux2;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  CHECK(lo >= 1.0 / 64.0);
  CHECK(hi <= 64.0);
}

TEST_CASE("stress derivative is a symmetric bilinear form") {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 200; ++k) {
    const StressParams sp{1.0, k % 2 ? 1e-4 : 1.0};
    const double p = 1.5 + 0.01 * (k % 200);
    const Mat2 a = random_matrix(rng, 3.0);
    const Mat2 b1 = random_matrix(rng, 1.0);
    const Mat2 b2 = random_matrix(rng, 1.0);
    const StressDerivative d = stress_derivative(sp, p, a);
    const double left = ddot(b1, d.apply(b2));
    const double right = ddot(b2, d.apply(b1));
    CHECK(left == doctest::Approx(right).epsilon(1e-12));
  }
}

TEST_CASE("stress derivative matches finite differences") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> up(1.5, 3.5);
  for (int k = 0; k < 100; ++k) {
    const StressParams sp{1.0, k % 2 ? 1e-4 : 1.0};
    const double p = up(rng);
    const Mat2 a = random_matrix(rng, 3.0);
    if (sp.delta + sym_part(a).norm() < 0.05) continue;
    const Mat2 b = random_matrix(rng, 1.0);
    const double h = 1e-6 * (1.0 + a.norm());
    const Mat2 fd = (stress(sp, p, a + h * b) - stress(sp, p, a - h * b)) / (2 * h);
    const Mat2 an = stress_derivative(sp, p, a).apply(b);
    CHECK((fd - an).norm() <= 1e-5 * (1.0 + fd.norm() + an.norm()));
  }
}

} // namespace
} // namespace varpstokes
