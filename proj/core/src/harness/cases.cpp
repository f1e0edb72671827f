#include "sldg/harness/cases.hpp"

#include <cmath>

#include "sldg/error.hpp"
#include "sldg/trace.hpp"

namespace sldg::harness {
namespace {

double sech2(double z) {
  const double c = std::cosh(z);
  return 1.0 / (c * c);
}

}  // namespace

const std::vector<CaseInfo>& case_registry() {
  static const std::vector<CaseInfo> reg = {
      {"linear-const", Model::linear, false, "u_t + u_x + u_y = 0, sin(x+y) on [-pi,pi]^2"},
      {"rigid-body", Model::linear, true, "u_t - (y u)_x + (x u)_y = 0, Gaussian on [-2pi,2pi]^2"},
      {"swirling", Model::linear, true, "swirling deformation of a cosine bell on [-pi,pi]^2"},
      {"landau", Model::vlasov_poisson, true, "strong Landau damping, 1D1V Vlasov-Poisson"},
      {"shear-layer", Model::euler, false, "double shear layer, incompressible Euler on [0,2pi]^2"},
      {"kelvin-helmholtz", Model::guiding_center, false, "Kelvin-Helmholtz, guiding center on [0,4pi]x[0,2pi]"},
      {"euler-stationary", Model::euler, false, "stationary Euler flow omega = -2 sin x sin y"},
  };
  return reg;
}

const CaseInfo& case_info(const std::string& id) {
  for (const auto& c : case_registry())
    if (c.id == id) return c;
  throw ConfigError("unknown case '" + id + "'");
}

double default_final_time(const CaseConfig& cfg) {
  const std::string& id = cfg.case_id;
  if (id == "linear-const") return M_PI;
  if (id == "rigid-body") return 20.0 * M_PI;
  if (id == "swirling") return cfg.swirl_period;
  if (id == "landau") return 2.0;
  if (id == "shear-layer") return 8.0;
  if (id == "kelvin-helmholtz") return 40.0;
  if (id == "euler-stationary") return 1.0;
  throw ConfigError("unknown case '" + id + "'");
}

CaseConfig resolved(const CaseConfig& in) {
  CaseConfig c = in;
  if (c.T <= 0.0) c.T = default_final_time(c);
  if (c.r <= 0) c.r = std::min(c.k + 1, 3);
  if (c.order <= 0) c.order = c.k >= 2 ? 3 : 2;
  if (c.error_points <= 0) c.error_points = c.k + 3;
  return c;
}

int tracing_substeps(double dt, double lipschitz) {
  return std::max(1, static_cast<int>(std::ceil(dt * lipschitz / 0.05 - 1e-12)));
}

CaseSetup make_case(const CaseConfig& cfg_in) {
  validate(cfg_in);
  const CaseConfig cfg = resolved(cfg_in);
  CaseSetup s;
  s.info = case_info(cfg.case_id);
  s.T = cfg.T;
  const std::string& id = cfg.case_id;

  if (id == "linear-const") {
    s.mesh = build_mesh_2d(-M_PI, M_PI, cfg.nx, -M_PI, M_PI, cfg.ny);
    s.initial = [](double x, double y) { return std::sin(x + y); };
    s.exact = [](double x, double y, double t) { return std::sin(x + y - 2.0 * t); };
    s.velocity = [](double, double, double) { return Vec2{1.0, 1.0}; };
    s.a_max = s.b_max = 1.0;
    s.constant_velocity = true;
  } else if (id == "rigid-body") {
    const double L = 2.0 * M_PI;
    s.mesh = build_mesh_2d(-L, L, cfg.nx, -L, L, cfg.ny);
    const double cy = cfg.gaussian == "elongated" ? 10.0 : 1.0;
    const Scalar u0 = [cy](double x, double y) { return std::exp(-x * x - cy * y * y); };
    s.initial = u0;
    s.exact = [u0](double x, double y, double t) {
      const double c = std::cos(t), sn = std::sin(t);
      return u0(c * x + sn * y, -sn * x + c * y);
    };
    s.velocity = [](double x, double y, double) { return Vec2{-y, x}; };
    s.a_max = s.b_max = L;
    s.lipschitz = 1.0;
  } else if (id == "swirling") {
    s.mesh = build_mesh_2d(-M_PI, M_PI, cfg.nx, -M_PI, M_PI, cfg.ny);
    const double x0 = cfg.bell_x0, y0 = cfg.bell_y0, r0 = cfg.bell_r0, Ts = cfg.swirl_period;
    const Scalar u0 = [=](double x, double y) {
      const double r = std::hypot(x - x0, y - y0);
      if (r >= r0) return 0.0;
      return r0 * std::pow(std::cos(M_PI * r / (2.0 * r0)), 6);
    };
    s.initial = u0;
    // The flow reverses and the bell returns at multiples of the period.
    s.exact = [u0, Ts](double x, double y, double t) {
      const double ph = t / Ts;
      if (std::abs(ph - std::round(ph)) > 1e-12) return std::nan("");
      return u0(x, y);
    };
    s.velocity = [Ts](double x, double y, double t) {
      const double g = M_PI * std::cos(M_PI * t / Ts);
      const double cx = std::cos(0.5 * x), cy = std::cos(0.5 * y);
      return Vec2{-cx * cx * std::sin(y) * g, std::sin(x) * cy * cy * g};
    };
    s.a_max = s.b_max = M_PI;
    s.lipschitz = M_PI;
  } else if (id == "landau") {
    s.mesh = build_mesh_2d(0.0, 2.0 * M_PI / cfg.k0, cfg.nx, -cfg.vmax, cfg.vmax, cfg.ny);
    const double alpha = cfg.alpha, k0 = cfg.k0;
    s.initial = [alpha, k0](double x, double v) {
      return (1.0 + alpha * std::cos(k0 * x)) * std::exp(-0.5 * v * v) / std::sqrt(2.0 * M_PI);
    };
    s.lipschitz = 1.0;
  } else if (id == "shear-layer") {
    s.mesh = build_mesh_2d(0.0, 2.0 * M_PI, cfg.nx, 0.0, 2.0 * M_PI, cfg.ny);
    const double d = cfg.delta, rho = cfg.shear_width;
    s.initial = [d, rho](double x, double y) {
      if (y <= M_PI) return d * std::cos(x) - sech2((y - 0.5 * M_PI) / rho) / rho;
      return d * std::cos(x) + sech2((1.5 * M_PI - y) / rho) / rho;
    };
  } else if (id == "kelvin-helmholtz") {
    s.mesh = build_mesh_2d(0.0, 4.0 * M_PI, cfg.nx, 0.0, 2.0 * M_PI, cfg.ny);
    const double k0 = cfg.k0;
    s.initial = [k0](double x, double y) { return std::sin(y) + 0.015 * std::cos(k0 * x); };
  } else if (id == "euler-stationary") {
    s.mesh = build_mesh_2d(0.0, 2.0 * M_PI, cfg.nx, 0.0, 2.0 * M_PI, cfg.ny);
    s.initial = [](double x, double y) { return -2.0 * std::sin(x) * std::sin(y); };
    s.exact = [](double x, double y, double) { return -2.0 * std::sin(x) * std::sin(y); };
  }
  return s;
}

}  // namespace sldg::harness
