#pragma once

#include <functional>
#include <memory>
#include <vector>

namespace sldg {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

using Field1D = std::function<double(double x, double t)>;
using Field2D = std::function<Vec2(double x, double y, double t)>;
using FrozenField2D = std::function<Vec2(double x, double y)>;

// Either an analytic a(x,y,t), or a list of DG snapshots reconstructed in time
// by Lagrange interpolation (1 snapshot: constant, 2: linear, 3: quadratic).
class VelocityField2D {
 public:
  enum class Kind { analytic, dg_snapshots };

  VelocityField2D() = default;
  static VelocityField2D analytic(Field2D f);
  static VelocityField2D snapshots(std::vector<double> times, std::vector<FrozenField2D> samples);

  Kind kind() const { return kind_; }
  Vec2 operator()(double x, double y, double t) const;

 private:
  Kind kind_ = Kind::analytic;
  Field2D analytic_;
  std::vector<double> times_;
  std::vector<FrozenField2D> samples_;
};

struct TracedPoint {
  double x_end = 0.0, y_end = 0.0;
  double x_foot = 0.0, y_foot = 0.0;  // unwrapped
};

// Classical RK4 run backward from t_end to t_start in `substeps` equal steps.
template <class F>
double rk4_back_1d(const F& a, double x, double t_end, double t_start, int substeps) {
  const double h = (t_start - t_end) / substeps;
  double t = t_end;
  for (int s = 0; s < substeps; ++s) {
    const double k1 = a(x, t);
    const double k2 = a(x + 0.5 * h * k1, t + 0.5 * h);
    const double k3 = a(x + 0.5 * h * k2, t + 0.5 * h);
    const double k4 = a(x + h * k3, t + h);
    x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t = t_end + (s + 1) * h;
  }
  return x;
}

template <class F>
Vec2 rk4_back_2d(const F& f, Vec2 p, double t_end, double t_start, int substeps) {
  const double h = (t_start - t_end) / substeps;
  double t = t_end;
  for (int s = 0; s < substeps; ++s) {
    const Vec2 k1 = f(p.x, p.y, t);
    const Vec2 k2 = f(p.x + 0.5 * h * k1.x, p.y + 0.5 * h * k1.y, t + 0.5 * h);
    const Vec2 k3 = f(p.x + 0.5 * h * k2.x, p.y + 0.5 * h * k2.y, t + 0.5 * h);
    const Vec2 k4 = f(p.x + h * k3.x, p.y + h * k3.y, t + h);
    p.x += h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
    p.y += h / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y);
    t = t_end + (s + 1) * h;
  }
  return p;
}

double trace_back_1d(const Field1D& a, double x_end, double t_end, double t_start, int substeps);
TracedPoint trace_back_2d(const VelocityField2D& field, double x_end, double y_end, double t_end, double t_start,
                          int substeps);

int default_substeps(double cfl);

}  // namespace sldg
