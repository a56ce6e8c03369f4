#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "spikeslab/distributions.hpp"
#include "spikeslab/errors.hpp"
#include "spikeslab/mathutil.hpp"
#include "spikeslab/quadrature.hpp"
#include "spikeslab/rng.hpp"

using namespace spikeslab;

namespace {

// Cheap independent log(1 - Phi(t)) used where the full Simpson oracle would
// be too slow; good to ~1e-4 relative in the deep tail.
double cheap_log_phic(double t) {
  if (t <= 8.0) return std::log(0.5 * std::erfc(t * M_SQRT1_2));
  const double t2 = t * t;
  return -0.5 * t2 - std::log(t) - 0.9189385332046727 +
         std::log(1.0 - 1.0 / t2 + 3.0 / (t2 * t2));
}

}  // namespace

TEST_CASE("log_norm_cdf matches the shifted-integral oracle across the tail") {
  const double xs[] = {-37.0, -30.0, -20.0, -10.5, -9.5, -5.0, -1.0,
                       -0.1,  0.0,   0.5,   2.0,   5.0,  8.5,  12.0};
  for (double x : xs) {
    double expected;
    if (x < 0.0) {
      expected = oracle::log_gauss_integral(-oracle::kInf, x) -
                 0.5 * std::log(2.0 * M_PI);
    } else {
      const double tail = std::exp(oracle::log_gauss_integral(x, oracle::kInf) -
                                   0.5 * std::log(2.0 * M_PI));
      expected = std::log1p(-tail);
    }
    const double got = log_norm_cdf(x);
    CHECK(std::abs(got - expected) <=
          1e-11 * std::max(1.0, std::abs(expected)));
  }
}

TEST_CASE("log-domain helpers satisfy their algebraic identities") {
  CHECK(log_add_exp(std::log(2.0), std::log(3.0)) == doctest::Approx(std::log(5.0)).epsilon(1e-14));
  CHECK(log_diff_exp(std::log(5.0), std::log(3.0)) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(log1mexp(-1e-12) == doctest::Approx(std::log(1e-12)).epsilon(1e-9));
  CHECK(log_add_exp(kNegInf, -1.5) == -1.5);
  // Tiny interval far in the bulk: difference of near-equal CDF values.
  const double a = 0.5, b = 0.5 + 1e-9;
  const double expect = std::log(1e-9 * std::exp(-0.5 * 0.25) / std::sqrt(2.0 * M_PI));
  CHECK(log_norm_cdf_interval(a, b) == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("adaptive quadrature integrates smooth and heavy-tailed functions") {
  const double third = integrate_adaptive([](double x) { return x * x; }, 0.0, 1.0);
  CHECK(third == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  const double gauss = integrate_adaptive(
      [](double x) { return std::exp(-0.5 * x * x); }, -9.0, 9.0);
  CHECK(gauss == doctest::Approx(std::sqrt(2.0 * M_PI)).epsilon(1e-12));
  // Whole-line Gaussian through the expanding driver, off-center start.
  const double whole = integrate_expanding(
      [](double u) { return std::exp(-0.5 * (u - 3.0) * (u - 3.0)); }, 0.0);
  CHECK(whole == doctest::Approx(std::sqrt(2.0 * M_PI)).epsilon(1e-10));
  // Slow polynomial-times-exponential tail.
  const double heavy = integrate_expanding(
      [](double u) { return std::exp(-std::abs(u)) * (1.0 + u * u) / 3.0; }, 0.0);
  CHECK(heavy == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("region factories normalize the degenerate boundary cases") {
  CHECK(SupportRegion::outer(0.0).kind == SupportRegion::Kind::Full);
  CHECK(SupportRegion::inner(0.0).kind == SupportRegion::Kind::PointMass);
  CHECK(SupportRegion::inner(0.5).contains(0.5));
  CHECK(SupportRegion::inner(0.5).contains(-0.5));
  CHECK_FALSE(SupportRegion::inner(0.5).contains(0.500001));
  CHECK(SupportRegion::outer(0.5).contains(0.5));
  CHECK_FALSE(SupportRegion::outer(0.5).contains(0.49));
  CHECK(SupportRegion::point_mass().contains(0.0));
  CHECK_FALSE(SupportRegion::point_mass().contains(1e-300));
  CHECK_THROWS_AS(SupportRegion::inner(-0.1), std::invalid_argument);
}

TEST_CASE("truncated-normal log constants match quadrature") {
  // Whole line at unit variance: log sqrt(2 pi).
  CHECK(log_trunc_norm_const(SupportRegion::full(), 0.0, 1.0) ==
        doctest::Approx(0.9189385332046727).epsilon(1e-14));
  // Outer with delta 0 collapses to the whole line: log sqrt(8 pi).
  CHECK(log_trunc_norm_const(SupportRegion::outer(0.0), 0.0, 4.0) ==
        doctest::Approx(std::log(std::sqrt(8.0 * M_PI))).epsilon(1e-14));
  // [-1, 1] at unit variance against a direct Simpson oracle.
  const double inner_oracle = std::log(oracle::simpson(
      [](double x) { return std::exp(-0.5 * x * x); }, -1.0, 1.0, 40000));
  CHECK(log_trunc_norm_const(SupportRegion::inner(1.0), 0.0, 1.0) ==
        doctest::Approx(inner_oracle).epsilon(1e-12));
  CHECK(inner_oracle == doctest::Approx(0.5372).epsilon(2e-4));
  CHECK_THROWS_AS(log_trunc_norm_const(SupportRegion::inner(0.0), 0.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(log_trunc_norm_const(SupportRegion::full(), 0.0, 0.0),
                  std::invalid_argument);
}

TEST_CASE("truncated-normal log constants stay accurate tens of sd out") {
  for (double t : {1.0, 5.0, 10.0, 20.0, 30.0, 37.0}) {
    // Slab region with both boundaries t sd from the mean on one side:
    // mean 0, delta t, unit variance.
    const double got = log_trunc_norm_const(SupportRegion::outer(t), 0.0, 1.0);
    const double expected = oracle::log_add(
        oracle::log_gauss_integral(-oracle::kInf, -t),
        oracle::log_gauss_integral(t, oracle::kInf));
    CHECK(std::abs(got - expected) <= 1e-10 * std::max(1.0, std::abs(expected)));
    // Spike far from a shifted mean.
    const double got_inner =
        log_trunc_norm_const(SupportRegion::inner(1.0), t + 1.0, 1.0);
    const double expected_inner = oracle::log_gauss_integral(-t - 2.0, -t);
    CHECK(std::abs(got_inner - expected_inner) <=
          1e-10 * std::max(1.0, std::abs(expected_inner)));
  }
}

TEST_CASE("spike and slab constants add up to the whole-line constant") {
  for (double delta : {0.001, 0.05, 0.5, 0.8, 5.0}) {
    for (double mean : {0.0, -0.3, 3.0, -30.0}) {
      for (double var : {1e-4, 1.0, 1e4}) {
        const double full = log_trunc_norm_const(SupportRegion::full(), mean, var);
        const double inner =
            log_trunc_norm_const(SupportRegion::inner(delta), mean, var);
        const double outer =
            log_trunc_norm_const(SupportRegion::outer(delta), mean, var);
        CHECK(log_add_exp(inner, outer) ==
              doctest::Approx(full).epsilon(1e-12));
      }
    }
  }
}

namespace {

struct SampleCell {
  SupportRegion region;
  double mean, var;
};

void check_cell_ks(const SampleCell& cell, Rng& rng, std::size_t n = 20000) {
  std::vector<double> draws(n);
  for (auto& d : draws) {
    d = sample_trunc_norm(cell.region, cell.mean, cell.var, rng);
    REQUIRE(cell.region.contains(d));
    REQUIRE(std::isfinite(d));
  }
  const double sd = std::sqrt(cell.var);
  std::function<double(double)> cdf;
  switch (cell.region.kind) {
    case SupportRegion::Kind::Full:
      cdf = [&](double x) {
        return 0.5 * std::erfc(-(x - cell.mean) / sd * M_SQRT1_2);
      };
      break;
    case SupportRegion::Kind::Inner:
      cdf = [&](double x) {
        return oracle::trunc_norm_interval_cdf(
            (x - cell.mean) / sd, (-cell.region.delta - cell.mean) / sd,
            (cell.region.delta - cell.mean) / sd);
      };
      break;
    case SupportRegion::Kind::Outer:
      cdf = [&](double x) {
        return oracle::trunc_norm_outer_cdf(
            (x - cell.mean) / sd, (-cell.region.delta - cell.mean) / sd,
            (cell.region.delta - cell.mean) / sd);
      };
      break;
    default:
      FAIL("unexpected region");
  }
  const double d = oracle::ks_statistic(draws, cdf);
  CHECK(d < oracle::ks_threshold(n, 0.001));
}

}  // namespace

TEST_CASE("truncated-normal draws match quadrature CDFs across regimes") {
  Rng rng(20240817);
  const std::vector<SampleCell> cells = {
      {SupportRegion::full(), 2.0, 4.0},
      {SupportRegion::inner(3.0), 0.0, 1.0},          // wide central window
      {SupportRegion::inner(0.05), 0.0, 1.0},         // narrow central window
      {SupportRegion::inner(0.5), -3.0, 0.25},        // wide one-sided window
      {SupportRegion::inner(0.0004), -0.1, 1e-4},     // narrow deep-tail window
      {SupportRegion::inner(0.5), 3.0, 0.25},         // mirrored one-sided
      {SupportRegion::outer(0.5), 0.0, 1.0},          // both tails active
      {SupportRegion::outer(0.8), 0.0, 1e-2},         // exponential-tail regime
      {SupportRegion::outer(0.5), 0.4, 0.04},         // asymmetric tail weights
      {SupportRegion::outer(0.5), 30.0, 1.0},         // one tail numerically dead
      {SupportRegion::outer(0.001), 0.0, 1e4},        // near-degenerate hole
  };
  for (const auto& cell : cells) check_cell_ks(cell, rng);
}

TEST_CASE("draws restricted to [-1, 1] have the truncated-normal variance") {
  Rng rng(7);
  const std::size_t n = 100000;
  std::vector<double> draws(n);
  for (auto& d : draws)
    d = sample_trunc_norm(SupportRegion::inner(1.0), 0.0, 1.0, rng);
  const auto mv = oracle::mean_var(draws);
  CHECK(std::abs(mv.mean) < 0.01);
  CHECK(mv.var == doctest::Approx(0.2916).epsilon(0.035));
  // Exact value from moments of the truncated density.
  const double num = oracle::simpson(
      [](double x) { return x * x * std::exp(-0.5 * x * x); }, -1.0, 1.0, 40000);
  const double den = oracle::simpson(
      [](double x) { return std::exp(-0.5 * x * x); }, -1.0, 1.0, 40000);
  CHECK(mv.var == doctest::Approx(num / den).epsilon(0.02));
}

TEST_CASE("point-mass region always yields zero") {
  Rng rng(3);
  for (int i = 0; i < 10; ++i) {
    CHECK(sample_trunc_norm(SupportRegion::inner(0.0), 5.0, 2.0, rng) == 0.0);
  }
}

TEST_CASE("scaled inverse chi-square density and draws agree") {
  // Closed-form spot value: at s2 = 1, nu = 2, eta2 = 1 the density is e^-1.
  CHECK(scaled_inv_chi_sq_log_pdf(1.0, 2.0, 1.0) ==
        doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(scaled_inv_chi_sq_log_pdf(-0.5, 2.0, 1.0) == kNegInf);
  CHECK_THROWS_AS(scaled_inv_chi_sq_log_pdf(1.0, 0.0, 1.0), std::invalid_argument);

  // Density integrates to one (quadrature in log-variance).
  for (const auto& [nu, eta2] : std::vector<std::pair<double, double>>{
           {1.0, 1.0}, {1.0, 100.0}, {5.0, 3.0}}) {
    const double total = oracle::simpson(
        [&, nu_ = nu, eta2_ = eta2](double u) {
          return std::exp(scaled_inv_chi_sq_log_pdf(std::exp(u), nu_, eta2_) + u);
        },
        std::log(eta2) - 60.0, std::log(eta2) + 60.0, 60000);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
  }

  Rng rng(99);
  // Mean nu*eta2/(nu-2) for nu > 2: 11 * (31/11) / 9 = 31/9.
  {
    const std::size_t n = 200000;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      sum += sample_scaled_inv_chi_sq(11.0, 31.0 / 11.0, rng);
    CHECK(sum / n == doctest::Approx(31.0 / 9.0).epsilon(0.02));
  }
  // Median of the unit-scale one-degree case: 1 / median(chi2_1) ~ 2.198.
  {
    const std::size_t n = 200001;
    std::vector<double> draws(n);
    for (auto& d : draws) d = sample_scaled_inv_chi_sq(1.0, 1.0, rng);
    std::nth_element(draws.begin(), draws.begin() + n / 2, draws.end());
    CHECK(draws[n / 2] == doctest::Approx(2.198).epsilon(0.05));
  }
  // Mode nu*eta2/(nu+2): density is locally maximal there.
  {
    const double mode = scaled_inv_chi_sq_mode(3.0, 2.0);
    CHECK(mode == doctest::Approx(1.2).epsilon(1e-14));
    const double at_mode = scaled_inv_chi_sq_log_pdf(mode, 3.0, 2.0);
    CHECK(at_mode > scaled_inv_chi_sq_log_pdf(mode * 1.01, 3.0, 2.0));
    CHECK(at_mode > scaled_inv_chi_sq_log_pdf(mode * 0.99, 3.0, 2.0));
  }
  // Full-distribution check against the tabulated density CDF.
  {
    const std::size_t n = 20000;
    std::vector<double> draws(n);
    for (auto& d : draws) d = sample_scaled_inv_chi_sq(3.0, 2.0, rng);
    oracle::GridCdf cdf(
        [](double s2) { return scaled_inv_chi_sq_log_pdf(s2, 3.0, 2.0); },
        1e-4, 4000.0, 400001);
    CHECK(oracle::ks_statistic(draws, cdf) < oracle::ks_threshold(n, 0.001));
  }
}

TEST_CASE("slab marginal reduces to a Cauchy when the hole closes") {
  // With delta 0 and one degree of freedom the marginal is Cauchy with
  // scale sqrt(eta2).
  const double at0 = slab_marginal_density(0.0, 0.0, 1.0, 100.0);
  CHECK(at0 == doctest::Approx(1.0 / (10.0 * M_PI)).epsilon(1e-8));
  const double at5 = slab_marginal_density(5.0, 0.0, 1.0, 100.0);
  CHECK(at5 == doctest::Approx(1.0 / (10.0 * M_PI) / 1.25).epsilon(1e-8));
  CHECK(slab_marginal_density(-5.0, 0.0, 1.0, 100.0) ==
        doctest::Approx(at5).epsilon(1e-12));
}

TEST_CASE("slab marginal matches an independent Monte Carlo mixture") {
  const double delta = 0.5, nu1 = 1.0, eta1_sq = 100.0;
  for (double beta : {0.5, 0.7, 3.0}) {
    std::mt19937_64 eng(4242);
    std::chi_squared_distribution<double> chi2(nu1);
    const std::size_t n = 400000;
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double s2 = nu1 * eta1_sq / chi2(eng);
      const double sd = std::sqrt(s2);
      // log of the normalized truncated density at beta, all oracle-side.
      const double log_mass =
          oracle::log_add(cheap_log_phic(delta / sd), cheap_log_phic(delta / sd)) +
          0.5 * std::log(2.0 * M_PI * s2);
      const double v = std::exp(-beta * beta / (2.0 * s2) - log_mass);
      sum += v;
      sumsq += v * v;
    }
    const double mc = sum / n;
    const double se = std::sqrt((sumsq / n - mc * mc) / n);
    const double got = slab_marginal_density(beta, delta, nu1, eta1_sq);
    CHECK(std::abs(got - mc) < std::max(5.0 * se, 2e-4 * mc));
  }
  CHECK(slab_marginal_log_density(0.2, 0.5, 1.0, 100.0) == kNegInf);
}

TEST_CASE("spike variance calibration equates the boundary densities") {
  for (double delta : {0.8, 0.5, 0.05, 0.01, 0.001}) {
    const double s0 = calibrate_spike_variance(delta, 1.0, 100.0);
    REQUIRE(s0 > 0.0);
    const double spike = std::exp(spike_boundary_log_density(delta, s0));
    const double slab = slab_marginal_density(delta, delta, 1.0, 100.0);
    CHECK(std::abs(spike - slab) <= 1e-8 * slab);
    // The spike must stay below its flat-limit supremum.
    CHECK(spike < 1.0 / (2.0 * delta));
  }
}

TEST_CASE("calibration reports infeasibility when the slab is too peaked") {
  // A tight slab stacked against the boundary exceeds the spike supremum.
  CHECK_THROWS_AS(calibrate_spike_variance(2.0, 50.0, 0.01), calibration_error);
  CHECK_THROWS_AS(calibrate_spike_variance(0.0, 1.0, 100.0), std::invalid_argument);
}

TEST_CASE("gamma-based draw helpers are self-consistent") {
  Rng rng(555);
  const std::size_t n = 200000;
  double sum = 0.0, sumsq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double g = rng.gamma(0.5);
    sum += g;
    sumsq += g * g;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.02));
  CHECK(sumsq / n - sqr(sum / n) == doctest::Approx(0.5).epsilon(0.05));
  double c = 0.0;
  for (std::size_t i = 0; i < n; ++i) c += rng.chi_square(3.0);
  CHECK(c / n == doctest::Approx(3.0).epsilon(0.02));
}
