#include "quadrature.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace dytwist::detail {
namespace {

// QUADPACK qk15 abscissae and weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  Complex value;
  double error;
  double l1;
};

struct WorseFirst {
  bool operator()(const Panel& x, const Panel& y) const {
    return x.error < y.error;
  }
};

Panel gauss_kronrod(const std::function<Complex(double)>& f, double a,
                    double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const Complex fc = f(center);
  Complex kronrod = fc * kWgk[7];
  Complex gauss = fc * kWg[3];
  double l1 = std::abs(fc) * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const Complex f1 = f(center - dx);
    const Complex f2 = f(center + dx);
    kronrod += (f1 + f2) * kWgk[j];
    l1 += (std::abs(f1) + std::abs(f2)) * kWgk[j];
    if (j % 2 == 1) gauss += (f1 + f2) * kWg[j / 2];
  }
  Panel p{a, b, kronrod * half, 0.0, l1 * std::abs(half)};
  p.error = std::abs((kronrod - gauss) * half);
  return p;
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<Complex(double)>& f,
                                    double a, double b, double abs_tol,
                                    int max_panels) {
  QuadratureResult out;
  if (!(b > a)) return out;

  std::vector<Panel> initial;
  double left = a;
  while (left < b) {
    double right = left > 0.0 ? std::min(2.0 * left, b) : b;
    // Geometric growth would be too slow past a long flat stretch; cap the
    // panel width relative to the whole range.
    if (right - left > 0.125 * (b - a)) right = std::min(left + 0.125 * (b - a), b);
    initial.push_back(gauss_kronrod(f, left, right));
    left = right;
  }

  std::priority_queue<Panel, std::vector<Panel>, WorseFirst> queue(
      WorseFirst{}, std::move(initial));
  constexpr double kEps = std::numeric_limits<double>::epsilon();

  auto totals = [&](const auto& q) {
    // priority_queue hides its container; copy is cheap at these sizes.
    auto copy = q;
    QuadratureResult r;
    while (!copy.empty()) {
      r.value += copy.top().value;
      r.error += copy.top().error;
      r.l1 += copy.top().l1;
      copy.pop();
    }
    return r;
  };

  // Running sums avoid rescanning the queue every iteration.
  QuadratureResult sums = totals(queue);
  int panels = static_cast<int>(queue.size());
  while (true) {
    const double tol = std::max(abs_tol, 64.0 * kEps * sums.l1);
    if (sums.error <= tol) {
      sums.converged = true;
      break;
    }
    if (panels >= max_panels) break;
    Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Panel can no longer be split in double precision.
      queue.push(worst);
      break;
    }
    Panel lhs = gauss_kronrod(f, worst.a, mid);
    Panel rhs = gauss_kronrod(f, mid, worst.b);
    sums.value += lhs.value + rhs.value - worst.value;
    sums.error += lhs.error + rhs.error - worst.error;
    sums.l1 += lhs.l1 + rhs.l1 - worst.l1;
    queue.push(lhs);
    queue.push(rhs);
    ++panels;
  }
  // Re-sum to shed the drift of the running updates.
  QuadratureResult final_sums = totals(queue);
  final_sums.converged = sums.converged;
  final_sums.panels = panels;
  return final_sums;
}

}  // namespace dytwist::detail
