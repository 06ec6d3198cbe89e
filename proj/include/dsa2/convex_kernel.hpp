#pragma once

#include <functional>
#include <span>
#include <vector>

namespace dsa2 {

// Norm pairing for Lipschitz assumptions and prox regularity: subgradients
// are measured in the dual norm, iterates in the primal norm.
enum class NormPair {
  l2_l2,    // primal l2, dual l2
  l1_linf,  // primal l1, dual linf (entropic setups)
};

double primal_norm(NormPair np, std::span<const double> v);
double dual_norm(NormPair np, std::span<const double> v);

struct FeasibleSet {
  enum class Kind { nonneg_orthant, box, simplex, l2_ball };
  Kind kind;
  int dim = 0;
  std::vector<double> lo, hi;  // box only
  double radius = 0.0;         // l2_ball only

  static FeasibleSet nonneg_orthant(int m);
  static FeasibleSet box(std::vector<double> lo, std::vector<double> hi);
  static FeasibleSet simplex(int m);
  static FeasibleSet l2_ball(double radius, int m);

  bool contains(std::span<const double> x, double tol) const;
};

enum class ProxFn { quadratic, entropic };

// Prox-function d paired with a feasible set. d is 1-strongly convex with
// respect to the primal norm, nonnegative on the set, and vanishes at
// `anchor` (the set's translated origin):
//   quadratic: d(x) = 0.5*||x||_2^2, anchor 0 (boxes must contain 0)
//   entropic:  d(x) = sum x_i log x_i + log m on the simplex, anchor uniform
struct ProxSetup {
  FeasibleSet set;
  ProxFn d;
  NormPair norm;
  std::vector<double> anchor;

  static ProxSetup quadratic(FeasibleSet set);
  static ProxSetup entropic(int m);

  double d_value(std::span<const double> x) const;
  std::vector<double> d_grad(std::span<const double> x) const;
  // max of d over the set (R^2 in bound evaluations). NumericError for the
  // orthant (unbounded).
  double d_max_over_set() const;
};

// argmin_{x in set} { <z, x> + gamma * d(x) }, gamma > 0. Closed forms:
//   quadratic + nonneg_orthant: max(0, -z/gamma)
//   quadratic + box:            clamp(-z/gamma, lo, hi)
//   quadratic + l2_ball:        -z/gamma pulled radially onto the ball
//   entropic + simplex:         softmax(-z/gamma), max-subtracted
// Any other pairing is a ConfigError. 1/gamma-Lipschitz: dual-norm distance
// in z bounds primal-norm distance of outputs.
std::vector<double> prox_map(std::span<const double> z, double gamma, const ProxSetup& setup);

// One agent's private objective. subgrad must return an element of the
// subdifferential with dual norm at most lipschitz_bound.
struct LocalObjective {
  std::function<double(std::span<const double>)> value;
  std::function<std::vector<double>(std::span<const double>)> subgrad;
  double lipschitz_bound = 0.0;
};

// f(x) = |<a, x>| with subgradient sign(<a, x>) * a (0 at the kink) and
// Lipschitz bound ||a|| in the pairing's dual norm.
LocalObjective make_abs_linear_objective(std::vector<double> a, NormPair np);

}  // namespace dsa2
