#include "dsa2/convex_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "dsa2/errors.hpp"
#include "dsa2/vec.hpp"

namespace dsa2 {

double primal_norm(NormPair np, std::span<const double> v) {
  return np == NormPair::l2_l2 ? l2_norm(v) : l1_norm(v);
}

double dual_norm(NormPair np, std::span<const double> v) {
  return np == NormPair::l2_l2 ? l2_norm(v) : linf_norm(v);
}

FeasibleSet FeasibleSet::nonneg_orthant(int m) {
  if (m < 1) throw ConfigError("feasible set: dimension must be >= 1");
  return {Kind::nonneg_orthant, m, {}, {}, 0.0};
}

FeasibleSet FeasibleSet::box(std::vector<double> lo, std::vector<double> hi) {
  if (lo.empty() || lo.size() != hi.size()) throw ConfigError("box: lo and hi must have equal nonzero length");
  for (size_t i = 0; i < lo.size(); ++i)
    if (!(lo[i] <= hi[i])) throw ConfigError("box: requires lo <= hi componentwise");
  FeasibleSet s{Kind::box, static_cast<int>(lo.size()), std::move(lo), std::move(hi), 0.0};
  return s;
}

FeasibleSet FeasibleSet::simplex(int m) {
  if (m < 1) throw ConfigError("feasible set: dimension must be >= 1");
  return {Kind::simplex, m, {}, {}, 0.0};
}

FeasibleSet FeasibleSet::l2_ball(double radius, int m) {
  if (m < 1) throw ConfigError("feasible set: dimension must be >= 1");
  if (!(radius > 0.0)) throw ConfigError("l2_ball: radius must be positive");
  return {Kind::l2_ball, m, {}, {}, radius};
}

bool FeasibleSet::contains(std::span<const double> x, double tol) const {
  if (static_cast<int>(x.size()) != dim) return false;
  switch (kind) {
    case Kind::nonneg_orthant:
      for (double v : x)
        if (v < -tol) return false;
      return true;
    case Kind::box:
      for (int i = 0; i < dim; ++i)
        if (x[i] < lo[i] - tol || x[i] > hi[i] + tol) return false;
      return true;
    case Kind::simplex: {
      double s = 0.0;
      for (double v : x) {
        if (v < -tol) return false;
        s += v;
      }
      return std::fabs(s - 1.0) <= tol;
    }
    case Kind::l2_ball:
      return l2_norm(x) <= radius + tol;
  }
  return false;
}

ProxSetup ProxSetup::quadratic(FeasibleSet set) {
  if (set.kind == FeasibleSet::Kind::simplex)
    throw ConfigError("prox setup: use the entropic prox on the simplex");
  if (set.kind == FeasibleSet::Kind::box)
    for (int i = 0; i < set.dim; ++i)
      if (set.lo[i] > 0.0 || set.hi[i] < 0.0)
        throw ConfigError("prox setup: quadratic prox needs a box containing the origin");
  std::vector<double> anchor(set.dim, 0.0);
  return {std::move(set), ProxFn::quadratic, NormPair::l2_l2, std::move(anchor)};
}

ProxSetup ProxSetup::entropic(int m) {
  std::vector<double> anchor(m, 1.0 / m);
  return {FeasibleSet::simplex(m), ProxFn::entropic, NormPair::l1_linf, std::move(anchor)};
}

double ProxSetup::d_value(std::span<const double> x) const {
  if (d == ProxFn::quadratic) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return 0.5 * s;
  }
  // sum x log x + log m: zero at the uniform point, >= 0 on the simplex.
  double s = std::log(static_cast<double>(set.dim));
  for (double v : x)
    if (v > 0.0) s += v * std::log(v);
  return s;
}

std::vector<double> ProxSetup::d_grad(std::span<const double> x) const {
  std::vector<double> g(x.size());
  if (d == ProxFn::quadratic) {
    for (size_t i = 0; i < x.size(); ++i) g[i] = x[i];
  } else {
    for (size_t i = 0; i < x.size(); ++i) {
      if (!(x[i] > 0.0)) throw NumericError("entropic gradient needs a strictly positive point");
      g[i] = std::log(x[i]) + 1.0;
    }
  }
  return g;
}

double ProxSetup::d_max_over_set() const {
  switch (set.kind) {
    case FeasibleSet::Kind::box: {
      double s = 0.0;
      for (int i = 0; i < set.dim; ++i) s += std::max(set.lo[i] * set.lo[i], set.hi[i] * set.hi[i]);
      return 0.5 * s;
    }
    case FeasibleSet::Kind::l2_ball:
      return 0.5 * set.radius * set.radius;
    case FeasibleSet::Kind::simplex:
      return std::log(static_cast<double>(set.dim));  // attained at the vertices
    case FeasibleSet::Kind::nonneg_orthant:
      throw NumericError("d_max_over_set: the nonnegative orthant is unbounded");
  }
  throw NumericError("d_max_over_set: unknown set");
}

std::vector<double> prox_map(std::span<const double> z, double gamma, const ProxSetup& setup) {
  if (!(gamma > 0.0)) throw ConfigError("prox_map: gamma must be positive");
  if (static_cast<int>(z.size()) != setup.set.dim) throw ConfigError("prox_map: dimension mismatch");
  const int m = setup.set.dim;
  std::vector<double> x(m);

  if (setup.d == ProxFn::quadratic) {
    switch (setup.set.kind) {
      case FeasibleSet::Kind::nonneg_orthant:
        for (int i = 0; i < m; ++i) x[i] = std::max(0.0, -z[i] / gamma);
        return x;
      case FeasibleSet::Kind::box:
        for (int i = 0; i < m; ++i) x[i] = std::clamp(-z[i] / gamma, setup.set.lo[i], setup.set.hi[i]);
        return x;
      case FeasibleSet::Kind::l2_ball: {
        for (int i = 0; i < m; ++i) x[i] = -z[i] / gamma;
        double nx = l2_norm(x);
        if (nx > setup.set.radius)
          for (int i = 0; i < m; ++i) x[i] *= setup.set.radius / nx;
        return x;
      }
      default:
        break;
    }
  } else if (setup.set.kind == FeasibleSet::Kind::simplex) {
    // softmax(-z/gamma); subtracting the max keeps every exponent <= 0.
    double mx = -z[0] / gamma;
    for (int i = 1; i < m; ++i) mx = std::max(mx, -z[i] / gamma);
    double sum = 0.0;
    for (int i = 0; i < m; ++i) {
      x[i] = std::exp(-z[i] / gamma - mx);
      sum += x[i];
    }
    for (int i = 0; i < m; ++i) x[i] /= sum;
    return x;
  }
  throw ConfigError("prox_map: unsupported prox/set pairing");
}

LocalObjective make_abs_linear_objective(std::vector<double> a, NormPair np) {
  if (a.empty()) throw ConfigError("abs linear objective: empty coefficient vector");
  double lip = dual_norm(np, a);
  auto coeff = std::make_shared<std::vector<double>>(std::move(a));
  LocalObjective f;
  f.lipschitz_bound = lip;
  f.value = [coeff](std::span<const double> x) { return std::fabs(dot(*coeff, x)); };
  f.subgrad = [coeff](std::span<const double> x) {
    double d = dot(*coeff, x);
    double s = d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
    std::vector<double> g(coeff->size());
    for (size_t i = 0; i < g.size(); ++i) g[i] = s * (*coeff)[i];
    return g;
  };
  return f;
}

}  // namespace dsa2
