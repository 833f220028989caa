#include "ctreg/phantom.hpp"

#include <cmath>
#include <numbers>
#include <type_traits>

#include "ctreg/error.hpp"
#include "ctreg/parallel.hpp"

namespace ctreg {

using std::numbers::pi;

namespace {

constexpr double kSupportSlack = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

double norm(Point2 p) { return std::hypot(p[0], p[1]); }

double component_density(const PhantomComponent& c, double x1, double x2) {
  return std::visit(
      Overloaded{
          [&](const Disk& d) {
            const double dx = x1 - d.center[0], dy = x2 - d.center[1];
            return dx * dx + dy * dy <= d.radius * d.radius ? d.density : 0.0;
          },
          [&](const Ellipse& e) {
            const double dx = x1 - e.center[0], dy = x2 - e.center[1];
            const double c = std::cos(e.rotation), s = std::sin(e.rotation);
            const double u = (c * dx + s * dy) / e.semi_a;
            const double v = (-s * dx + c * dy) / e.semi_b;
            return u * u + v * v <= 1.0 ? e.density : 0.0;
          },
          [&](const Gaussian& g) {
            const double dx = x1 - g.center[0], dy = x2 - g.center[1];
            return g.amplitude * std::exp(-(dx * dx + dy * dy) / (g.width * g.width));
          }},
      c);
}

double component_radon(const PhantomComponent& c, double angle, double offset) {
  const double ct = std::cos(angle), st = std::sin(angle);
  return std::visit(
      Overloaded{
          [&](const Disk& d) {
            const double k = offset - (d.center[0] * ct + d.center[1] * st);
            const double r2 = d.radius * d.radius - k * k;
            return r2 > 0.0 ? 2.0 * d.density * std::sqrt(r2) : 0.0;
          },
          [&](const Ellipse& e) {
            const double k = offset - (e.center[0] * ct + e.center[1] * st);
            const double rel = angle - e.rotation;
            const double ca = std::cos(rel), sa = std::sin(rel);
            const double w2 = e.semi_a * e.semi_a * ca * ca + e.semi_b * e.semi_b * sa * sa;
            const double r2 = w2 - k * k;
            return r2 > 0.0 ? 2.0 * e.density * e.semi_a * e.semi_b * std::sqrt(r2) / w2
                            : 0.0;
          },
          [&](const Gaussian& g) {
            const double k = offset - (g.center[0] * ct + g.center[1] * st);
            return g.amplitude * g.width * std::sqrt(pi) *
                   std::exp(-k * k / (g.width * g.width));
          }},
      c);
}

void validate_component(const PhantomComponent& c) {
  std::visit(
      Overloaded{
          [](const Disk& d) {
            if (!(d.radius > 0.0)) throw ValidationError("disk radius must be > 0");
            if (norm(d.center) + d.radius > 1.0 + kSupportSlack) {
              throw ValidationError("disk extends outside the unit ball");
            }
          },
          [](const Ellipse& e) {
            if (!(e.semi_a > 0.0 && e.semi_b > 0.0)) {
              throw ValidationError("ellipse semi-axes must be > 0");
            }
            if (norm(e.center) + std::max(e.semi_a, e.semi_b) > 1.0 + kSupportSlack) {
              throw ValidationError("ellipse extends outside the unit ball");
            }
          },
          [](const Gaussian& g) {
            if (!(g.width > 0.0)) throw ValidationError("gaussian width must be > 0");
            if (norm(g.center) + kGaussianSupportWidths * g.width > 1.0 + kSupportSlack) {
              throw ValidationError("gaussian extends outside the unit ball");
            }
          }},
      c);
}

}  // namespace

Image2D::Image2D(int half_count, double half_width)
    : half_count(half_count), half_width(half_width) {
  if (half_count < 1) throw ValidationError("image needs M >= 1");
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw ValidationError("image half-width tau must be finite and > 0");
  }
  values.assign(static_cast<std::size_t>(side()) * side(), 0.0);
}

double Image2D::sample(double x1, double x2) const {
  const double h = mesh();
  const double u = x1 / h + half_count;
  const double v = x2 / h + half_count;
  const double last = side() - 1;
  if (!(u >= 0.0 && v >= 0.0 && u <= last && v <= last)) return 0.0;
  int i = static_cast<int>(u), j = static_cast<int>(v);
  if (i == side() - 1) --i;
  if (j == side() - 1) --j;
  const double fu = u - i, fv = v - j;
  const double* row0 = values.data() + static_cast<std::size_t>(j) * side();
  const double* row1 = row0 + side();
  return (1 - fv) * ((1 - fu) * row0[i] + fu * row0[i + 1]) +
         fv * ((1 - fu) * row1[i] + fu * row1[i + 1]);
}

double Image2D::l2_norm() const {
  double acc = 0.0;
  for (double v : values) acc += v * v;
  return std::sqrt(acc) * mesh();
}

double Image2D::mass() const {
  double acc = 0.0;
  for (double v : values) acc += v;
  return acc * mesh() * mesh();
}

double PhantomSpec::density(double x1, double x2) const {
  double acc = 0.0;
  for (const auto& c : components) acc += component_density(c, x1, x2);
  return acc;
}

void PhantomSpec::validate() const {
  for (const auto& c : components) validate_component(c);
}

std::string PhantomSpec::kind() const {
  if (components.empty()) return "empty";
  if (components.size() == 1) {
    if (std::holds_alternative<Disk>(components[0])) return "disk";
    if (std::holds_alternative<Gaussian>(components[0])) return "gaussian";
  }
  return "ellipses";
}

PhantomSpec disk_phantom(double radius, double density) {
  return PhantomSpec{{Disk{{0, 0}, radius, density}}};
}

PhantomSpec gaussian_phantom(double width, Point2 center, double amplitude) {
  return PhantomSpec{{Gaussian{center, width, amplitude}}};
}

PhantomSpec shepp_logan_phantom() {
  // Modified Shepp-Logan (Toft), scaled by 0.95 to sit inside the unit ball.
  constexpr double s = 0.95;
  const auto deg = [](double d) { return d * pi / 180.0; };
  PhantomSpec spec;
  auto add = [&](double x, double y, double a, double b, double rot, double rho) {
    spec.components.push_back(Ellipse{{s * x, s * y}, s * a, s * b, deg(rot), rho});
  };
  add(0.0, 0.0, 0.69, 0.92, 90.0, 1.0);
  add(0.0, -0.0184, 0.6624, 0.874, 90.0, -0.8);
  add(0.22, 0.0, 0.11, 0.31, 72.0, -0.2);
  add(-0.22, 0.0, 0.16, 0.41, 108.0, -0.2);
  add(0.0, 0.35, 0.21, 0.25, 90.0, 0.1);
  add(0.0, 0.1, 0.046, 0.046, 0.0, 0.1);
  add(0.0, -0.1, 0.046, 0.046, 0.0, 0.1);
  add(-0.08, -0.605, 0.046, 0.023, 0.0, 0.1);
  add(0.0, -0.605, 0.023, 0.023, 0.0, 0.1);
  add(0.06, -0.605, 0.046, 0.023, 90.0, 0.1);
  return spec;
}

PhantomSpec cheese_phantom() {
  PhantomSpec spec;
  spec.components.push_back(Disk{{0.0, 0.0}, 0.85, 1.0});
  // carved holes
  spec.components.push_back(Ellipse{{-0.35, 0.25}, 0.18, 0.12, 0.4, -1.0});
  spec.components.push_back(Ellipse{{0.30, 0.35}, 0.10, 0.22, -0.3, -1.0});
  spec.components.push_back(Disk{{0.25, -0.35}, 0.14, -1.0});
  spec.components.push_back(Ellipse{{-0.25, -0.40}, 0.20, 0.07, 1.1, -1.0});
  // denser inclusions
  spec.components.push_back(Ellipse{{0.0, 0.0}, 0.16, 0.08, 0.0, 0.5});
  spec.components.push_back(Disk{{-0.55, -0.05}, 0.06, 0.5});
  return spec;
}

Image2D render(const PhantomSpec& spec, int half_count, double half_width) {
  spec.validate();
  Image2D image(half_count, half_width);
  const int side = image.side();
  parallel_for(static_cast<std::size_t>(side), [&](std::size_t r) {
    const int m2 = static_cast<int>(r) - half_count;
    for (int m1 = -half_count; m1 <= half_count; ++m1) {
      image.at(m1, m2) = spec.density(image.node(m1), image.node(m2));
    }
  });
  return image;
}

double analytic_radon(const PhantomSpec& spec, double angle, double offset) {
  double acc = 0.0;
  for (const auto& c : spec.components) acc += component_radon(c, angle, offset);
  return acc;
}

}  // namespace ctreg
