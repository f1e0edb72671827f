#include "sldg/trace.hpp"

#include <cmath>
#include <string>

#include "sldg/error.hpp"

namespace sldg {

VelocityField2D VelocityField2D::analytic(Field2D f) {
  VelocityField2D v;
  v.kind_ = Kind::analytic;
  v.analytic_ = std::move(f);
  return v;
}

VelocityField2D VelocityField2D::snapshots(std::vector<double> times, std::vector<FrozenField2D> samples) {
  if (samples.empty() || samples.size() > 3 || samples.size() != times.size())
    throw ConfigError("snapshot field needs 1 to 3 samples with matching times");
  VelocityField2D v;
  v.kind_ = Kind::dg_snapshots;
  v.times_ = std::move(times);
  v.samples_ = std::move(samples);
  return v;
}

Vec2 VelocityField2D::operator()(double x, double y, double t) const {
  if (kind_ == Kind::analytic) return analytic_(x, y, t);
  const size_t n = samples_.size();
  if (n == 1) return samples_[0](x, y);
  const double t0 = times_.front(), t1 = times_.back();
  const double tol = 1e-12 * std::max(1.0, std::abs(t1 - t0));
  if (t < t0 - tol || t > t1 + tol)
    throw NumericalError("field queried at t=" + std::to_string(t) + " outside its snapshot span");
  Vec2 out;
  for (size_t i = 0; i < n; ++i) {
    double w = 1.0;
    for (size_t j = 0; j < n; ++j)
      if (j != i) w *= (t - times_[j]) / (times_[i] - times_[j]);
    const Vec2 s = samples_[i](x, y);
    out.x += w * s.x;
    out.y += w * s.y;
  }
  return out;
}

double trace_back_1d(const Field1D& a, double x_end, double t_end, double t_start, int substeps) {
  if (substeps < 1) throw ConfigError("substeps must be >= 1");
  return rk4_back_1d(a, x_end, t_end, t_start, substeps);
}

TracedPoint trace_back_2d(const VelocityField2D& field, double x_end, double y_end, double t_end, double t_start,
                          int substeps) {
  if (substeps < 1) throw ConfigError("substeps must be >= 1");
  const Vec2 p = rk4_back_2d(field, Vec2{x_end, y_end}, t_end, t_start, substeps);
  return {x_end, y_end, p.x, p.y};
}

int default_substeps(double cfl) { return std::max(1, static_cast<int>(std::ceil(cfl - 1e-12))); }

}  // namespace sldg
