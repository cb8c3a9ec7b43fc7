#include "pf/generator.hpp"

#include <random>

namespace pf {

namespace {

double min_pair_distance(const std::vector<Point>& p) {
  double best = 1e300;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = 0; j < i; ++j) best = std::min(best, dist(p[i], p[j]));
  return best;
}

std::vector<Point> orbit(double radius, double phase, int m) {
  std::vector<Point> out;
  for (int k = 0; k < m; ++k) out.push_back(from_polar({0.0, 0.0}, radius, phase + kTwoPi * k / m));
  return out;
}

std::vector<Point> make_pattern(int n, int rho, std::mt19937_64& rng, bool stack) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const int orbits = n / rho;
  std::vector<Point> F = orbit(1.0, U(rng) * kTwoPi, rho);
  std::vector<Point> last;
  for (int k = 1; k < orbits; ++k) {
    if (stack && k >= 2 && !last.empty() && U(rng) < 0.3) {
      F.insert(F.end(), last.begin(), last.end());
      continue;
    }
    last = orbit(0.2 + 0.7 * U(rng), U(rng) * kTwoPi, rho);
    F.insert(F.end(), last.begin(), last.end());
  }
  return F;
}

std::vector<Point> make_robots(int n, int rho_f, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  double mode = U(rng);
  std::vector<int> divisors;
  for (int d = 2; d <= rho_f; ++d)
    if (rho_f % d == 0 && n % d == 0) divisors.push_back(d);
  std::vector<Point> R;
  if (mode < 0.2 && !divisors.empty()) {
    int d = divisors[std::uniform_int_distribution<size_t>(0, divisors.size() - 1)(rng)];
    R = orbit(1.0, U(rng) * kTwoPi, d);
    while (static_cast<int>(R.size()) < n) {
      auto o = orbit(0.15 + 0.8 * U(rng), U(rng) * kTwoPi, d);
      R.insert(R.end(), o.begin(), o.end());
    }
    return R;
  }
  if (mode < 0.3) R.push_back({0.0, 0.0});
  while (static_cast<int>(R.size()) < n) {
    double r = std::sqrt(U(rng));
    R.push_back(from_polar({0.0, 0.0}, r, U(rng) * kTwoPi));
  }
  return R;
}

}  // namespace

Scenario generate_scenario(int n, int rho_f, std::uint64_t seed, const GenOptions& opt) {
  if (n < 3) throw GenerationError("at least three robots are required");
  if (rho_f < 1) throw GenerationError("rho_F must be positive");
  if (rho_f == 1 && !opt.allow_delegated)
    throw GenerationError("rho_F = 1 needs an external gathering or leader-election solver; pass --allow-delegated");
  if (n % rho_f != 0)
    throw GenerationError("rho_F = " + std::to_string(rho_f) + " does not divide n = " + std::to_string(n));

  std::mt19937_64 rng(seed);
  const Tolerance tol;
  for (int attempt = 0; attempt < opt.max_attempts; ++attempt) {
    Scenario s;
    s.scheduler.seed = seed;
    s.pattern = make_pattern(n, rho_f, rng, opt.interior_multiplicity);
    Pattern F(s.pattern, tol);
    if (F.rho() != rho_f) continue;
    s.robots = make_robots(n, rho_f, rng);
    if (min_pair_distance(s.robots) < 0.04) continue;
    Configuration R(s.robots, tol);
    if (R.max_multiplicity() > 1 || ill_conditioned(R)) continue;
    if (rho_f % symmetricity(R) != 0) continue;
    TaskId t = classify(R, F);
    if (t == TaskId::T10 && !opt.allow_delegated) continue;
    return s;
  }
  throw GenerationError("no admissible scenario found for n = " + std::to_string(n) + ", rho_F = " +
                        std::to_string(rho_f));
}

}  // namespace pf
