#include "sldg/quadrature.hpp"

#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "sldg/error.hpp"

namespace sldg {
namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
void legendre_pair(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int m = 2; m <= n; ++m) {
    const double p2 = ((2 * m - 1) * x * p1 - (m - 1) * p0) / m;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

QuadratureRule build_legendre(int n) {
  QuadratureRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = -std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double p = 0, dp = 1;
    for (int it = 0; it < 100; ++it) {
      legendre_pair(n, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre_pair(n, x, p, dp);
    r.nodes[i] = x;
    r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  for (int i = 0; i < n / 2; ++i) {
    const double a = 0.5 * (r.nodes[n - 1 - i] - r.nodes[i]);
    const double w = 0.5 * (r.weights[i] + r.weights[n - 1 - i]);
    r.nodes[i] = -a;
    r.nodes[n - 1 - i] = a;
    r.weights[i] = r.weights[n - 1 - i] = w;
  }
  return r;
}

// Interior Lobatto nodes are the roots of P'_{n-1}.
QuadratureRule build_lobatto(int n) {
  QuadratureRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const int N = n - 1;
  r.nodes[0] = -1.0;
  r.nodes[N] = 1.0;
  for (int i = 1; i < N; ++i) {
    double x = -std::cos(std::numbers::pi * i / N);
    for (int it = 0; it < 100; ++it) {
      double p, dp;
      legendre_pair(N, x, p, dp);
      // P'' from the Legendre ODE: (1-x^2)P'' = 2xP' - N(N+1)P.
      const double d2p = (2 * x * dp - N * (N + 1) * p) / (1 - x * x);
      const double dx = dp / d2p;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.nodes[i] = x;
  }
  if (n % 2 == 1) r.nodes[N / 2] = 0.0;
  for (int i = 0; i < n / 2; ++i) {
    const double a = 0.5 * (r.nodes[N - i] - r.nodes[i]);
    r.nodes[i] = -a;
    r.nodes[N - i] = a;
  }
  for (int i = 0; i < n; ++i) {
    double p, dp;
    const double x = r.nodes[i];
    if (i == 0 || i == N) {
      p = (i == 0 && N % 2 == 1) ? -1.0 : 1.0;
    } else {
      legendre_pair(N, x, p, dp);
    }
    r.weights[i] = 2.0 / (N * (N + 1) * p * p);
  }
  return r;
}

template <class Builder>
const QuadratureRule& cached(std::map<int, std::unique_ptr<QuadratureRule>>& cache, std::mutex& mu, int n,
                             Builder build) {
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return *it->second;
  auto rule = std::make_unique<QuadratureRule>(build(n));
  return *cache.emplace(n, std::move(rule)).first->second;
}

constexpr int kSmall = 16;

template <class Builder>
std::array<QuadratureRule, kSmall> make_small(Builder build, int first) {
  std::array<QuadratureRule, kSmall> out{};
  for (int n = first; n < kSmall; ++n) out[n] = build(n);
  return out;
}

}  // namespace

const QuadratureRule& gauss_legendre(int n) {
  if (n < 1) throw ConfigError("Gauss-Legendre rule needs n >= 1, got " + std::to_string(n));
  static std::map<int, std::unique_ptr<QuadratureRule>> cache;
  static std::mutex mu;
  // Small rules are hit in inner loops; keep them out of the lock.
  static const auto small = make_small(build_legendre, 1);
  if (n < kSmall) return small[n];
  return cached(cache, mu, n, build_legendre);
}

const QuadratureRule& gauss_lobatto(int n) {
  if (n < 2) throw ConfigError("Gauss-Lobatto rule needs n >= 2, got " + std::to_string(n));
  static std::map<int, std::unique_ptr<QuadratureRule>> cache;
  static std::mutex mu;
  static const auto small = make_small(build_lobatto, 2);
  if (n < kSmall) return small[n];
  return cached(cache, mu, n, build_lobatto);
}

}  // namespace sldg
