#include "gradflow/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gradflow/errors.hpp"
#include "gradflow/tridiagonal.hpp"

namespace gradflow {

namespace {

// Ascending coefficients c_0 .. c_n.
struct Poly {
  std::vector<double> c;

  double operator()(double x) const {
    double acc = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
  }

  // Σ |c_i x^i|, the rounding scale of an evaluation at x.
  double magnitude(double x) const {
    double acc = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * std::abs(x) + std::abs(c[i]);
    return acc;
  }

  Poly derivative() const {
    Poly d;
    for (std::size_t i = 1; i < c.size(); ++i) d.c.push_back(static_cast<double>(i) * c[i]);
    return d;
  }

  std::size_t degree() const { return c.empty() ? 0 : c.size() - 1; }
};

double bisect(const Poly& p, double lo, double hi) {
  double flo = p(lo);
  while (hi - lo > 1e-14 * std::max(1.0, std::abs(lo))) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = p(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double polish(const Poly& p, double r) {
  const Poly dp = p.derivative();
  for (int k = 0; k < 3; ++k) {
    const double d = dp(r);
    if (d == 0.0) break;
    const double next = r - p(r) / d;
    if (!(std::abs(p(next)) < std::abs(p(r)))) break;
    r = next;
  }
  return r;
}

// Roots in [lo, hi]: p is monotone between consecutive critical points.
std::vector<double> roots_in(const Poly& p, double lo, double hi) {
  std::vector<double> out;
  if (p.degree() == 0) return out;
  std::vector<double> pts{lo};
  for (double c : roots_in(p.derivative(), lo, hi)) {
    if (c > lo && c < hi) pts.push_back(c);
  }
  pts.push_back(hi);

  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double f = p(pts[i]);
    if (std::abs(f) <= 1e-12 * std::max(1.0, p.magnitude(pts[i]))) out.push_back(pts[i]);
  }
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double fa = p(pts[i]);
    const double fb = p(pts[i + 1]);
    if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0)) {
      out.push_back(polish(p, bisect(p, pts[i], pts[i + 1])));
    }
  }
  std::sort(out.begin(), out.end());
  std::vector<double> unique;
  for (double r : out) {
    if (unique.empty() || std::abs(r - unique.back()) > 1e-10 * std::max(1.0, std::abs(r))) {
      unique.push_back(r);
    }
  }
  return unique;
}

TridiagonalSystem jacobian(const SpatialGrid& grid, const Field& dp) {
  const std::size_t m = grid.size();
  const double inv_h2 = 1.0 / (grid.h() * grid.h());
  TridiagonalSystem a;
  a.lower.assign(m, inv_h2);
  a.upper.assign(m, inv_h2);
  a.diag.resize(m);
  for (std::size_t j = 0; j < m; ++j) a.diag[j] = -2.0 * inv_h2 + dp[j];
  switch (grid.boundary()) {
    case Boundary::periodic: a.cyclic = true; break;
    case Boundary::dirichlet0: break;
    case Boundary::neumann0:
      a.diag.front() += inv_h2;
      a.diag.back() += inv_h2;
      break;
  }
  return a;
}

// a_i at arbitrary x by linear interpolation of the sampled rows.
double reaction_at_x(const Nonlinearity& nl, double x, double u) {
  const SpatialGrid& g = *nl.grid_ptr();
  const CoefficientTable& a = nl.coefficients();
  const double s = std::clamp((x - g.x(0)) / g.h(), 0.0, static_cast<double>(g.size() - 1));
  const auto j = std::min(static_cast<std::size_t>(s), g.size() - 2);
  const double w = s - static_cast<double>(j);
  double acc = 0.0;
  for (int i = a.degree - 1; i >= 0; --i) {
    const double ai = (1.0 - w) * a.row(i)[j] + w * a.row(i)[j + 1];
    acc = acc * u + ai;
  }
  return kernels::detail::leading(u, a.degree, nl.leading_term()) + acc;
}

}  // namespace

std::string_view source_name(EquilibriumSource s) {
  switch (s) {
    case EquilibriumSource::constant: return "constant";
    case EquilibriumSource::newton: return "newton";
    case EquilibriumSource::shooting: return "shooting";
  }
  return "constant";
}

std::vector<double> scalar_real_roots(std::span<const double> coeffs, LeadingTerm lead) {
  const int n = static_cast<int>(coeffs.size());
  double bound = 1.0;
  for (double a : coeffs) bound = std::max(bound, 1.0 + std::abs(a));

  Poly p{std::vector<double>(coeffs.begin(), coeffs.end())};
  switch (lead) {
    case LeadingTerm::power:
      p.c.push_back(-1.0);
      return roots_in(p, -bound, bound);
    case LeadingTerm::none: {
      while (!p.c.empty() && p.c.back() == 0.0) p.c.pop_back();
      // Lower-degree bound: 1 + max|a_i / a_top|.
      if (p.c.empty()) return {};
      double b = 1.0;
      for (double a : p.c) b = std::max(b, 1.0 + std::abs(a / p.c.back()));
      return roots_in(p, -b, b);
    }
    case LeadingTerm::signed_power: {
      // -c|c|^{N-1} is (-1)^N c^N for c < 0 and -c^N for c >= 0.
      Poly neg = p;
      neg.c.push_back(n % 2 == 0 ? 1.0 : -1.0);
      p.c.push_back(-1.0);
      std::vector<double> out = roots_in(neg, -bound, 0.0);
      for (double r : roots_in(p, 0.0, bound)) {
        if (out.empty() || std::abs(r - out.back()) > 1e-10 * std::max(1.0, std::abs(r))) {
          out.push_back(r);
        }
      }
      return out;
    }
  }
  return {};
}

Equilibrium make_equilibrium(const Nonlinearity& nl, Field u, EquilibriumSource source) {
  Equilibrium eq{std::move(u), 0.0, 0.0, true, true, source, std::nullopt};
  eq.residual = sup_norm(flow_rhs(nl, eq.field));
  eq.action = action(nl, eq.field).value;
  return eq;
}

std::vector<Equilibrium> constant_equilibria(const Nonlinearity& nl,
                                             std::vector<std::string>* rejected) {
  if (!nl.constant_coefficients()) {
    throw ValidationError("constant equilibria need spatially constant coefficients");
  }
  std::vector<double> a(static_cast<std::size_t>(nl.degree()));
  for (int i = 0; i < nl.degree(); ++i) a[static_cast<std::size_t>(i)] = nl.coefficients().row(i)[0];

  std::vector<Equilibrium> out;
  for (double c : scalar_real_roots(a, nl.leading_term())) {
    std::ostringstream why;
    why.precision(17);
    try {
      Equilibrium eq = make_equilibrium(nl, Field::constant(nl.grid_ptr(), c), EquilibriumSource::constant);
      eq.constant_value = c;
      if (eq.residual <= kEquilibriumTolerance) {
        out.push_back(std::move(eq));
        continue;
      }
      why << "root " << c << ": constant field residual " << eq.residual
          << " exceeds tolerance under the boundary closure";
    } catch (const RangeError& e) {
      why << "root " << c << ": action not finite (" << e.what() << ")";
    }
    if (rejected) rejected->push_back(why.str());
  }
  return out;
}

Equilibrium newton_refine(const Nonlinearity& nl, const std::vector<double>& guess,
                          const NewtonOptions& opts, std::vector<double>* history) {
  for (double v : guess) {
    if (!std::isfinite(v)) throw ValidationError("newton_refine: guess has a non-finite entry");
  }
  return newton_refine(nl, Field(nl.grid_ptr(), guess), opts, history);
}

Equilibrium newton_refine(const Nonlinearity& nl, const Field& guess, const NewtonOptions& opts,
                          std::vector<double>* history) {
  Field u = guess;
  Field f = flow_rhs(nl, u);
  double r = sup_norm(f);
  if (history) history->push_back(r);
  for (int it = 0; r >= opts.tol; ++it) {
    if (it >= opts.max_iter) {
      throw NoConvergenceError("newton_refine: residual " + std::to_string(r) + " after " +
                               std::to_string(opts.max_iter) + " iterations");
    }
    const TridiagonalSystem j = jacobian(u.grid(), apply_dP(nl, u));
    std::vector<double> rhs(f.values().begin(), f.values().end());
    for (double& v : rhs) v = -v;
    const Field delta(u.grid_ptr(), solve_tridiagonal(j, rhs));

    double lambda = 1.0;
    std::optional<Field> best;
    double best_r = 0.0;
    for (int k = 0; k <= opts.max_halvings; ++k, lambda *= 0.5) {
      try {
        Field trial = u + delta * lambda;
        const double tr = sup_norm(flow_rhs(nl, trial));
        best = std::move(trial);
        best_r = tr;
        if (tr < r) break;
      } catch (const RangeError&) {
        continue;
      }
    }
    if (!best) throw NoConvergenceError("newton_refine: every damped step overflowed");
    u = std::move(*best);
    f = flow_rhs(nl, u);
    r = best_r;
    if (history) history->push_back(r);
  }
  return make_equilibrium(nl, std::move(u), EquilibriumSource::newton);
}

ShootResult shoot(const Nonlinearity& nl, double u_left, double slope_left, double x_begin,
                  double x_end, const ShootOptions& opts) {
  const double grid_h = nl.grid_ptr()->h();
  const double step = opts.step > 0.0 ? opts.step : grid_h / 4.0;
  if (step > grid_h / 4.0 * (1.0 + 1e-12)) throw ValidationError("shoot: RK4 step must be <= h/4");
  if (!(x_end > x_begin)) throw ValidationError("shoot: empty span");

  const bool constant = nl.constant_coefficients();
  auto hamiltonian = [&](double u, double v) { return 0.5 * v * v + nl.scalar_potential(u); };
  auto accel = [&](double x, double u) {
    return constant ? -nl.scalar(u) : -reaction_at_x(nl, x, u);
  };

  ShootResult res;
  const auto steps = static_cast<long>(std::ceil((x_end - x_begin) / step - 1e-9));
  const double hs = (x_end - x_begin) / static_cast<double>(steps);
  double u = u_left;
  double v = slope_left;
  const double h0 = hamiltonian(u, v);
  double drift = 0.0;
  res.path.reserve(static_cast<std::size_t>(steps) + 1);
  res.path.push_back({x_begin, u, v});

  for (long n = 0; n < steps; ++n) {
    const double x = x_begin + static_cast<double>(n) * hs;
    const double k1u = v;
    const double k1v = accel(x, u);
    const double k2u = v + 0.5 * hs * k1v;
    const double k2v = accel(x + 0.5 * hs, u + 0.5 * hs * k1u);
    const double k3u = v + 0.5 * hs * k2v;
    const double k3v = accel(x + 0.5 * hs, u + 0.5 * hs * k2u);
    const double k4u = v + hs * k3v;
    const double k4v = accel(x + hs, u + hs * k3u);
    const double un = u + hs / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
    const double vn = v + hs / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
    const double xn = x_begin + static_cast<double>(n + 1) * hs;

    if (!std::isfinite(un) || !std::isfinite(vn) || std::abs(un) > opts.escape_threshold) {
      res.escaped = true;
      res.escape_x = xn;
      res.escape_direction = std::isfinite(un) ? (un > 0 ? 1 : -1) : (u > 0 ? 1 : -1);
      break;
    }
    u = un;
    v = vn;
    res.path.push_back({xn, u, v});
    if (constant) drift = std::max(drift, std::abs(hamiltonian(u, v) - h0));
  }
  if (constant && !res.escaped) res.energy_drift = drift;
  return res;
}

Boundedness classify_boundedness(const Equilibrium& eq, double lower, double upper) {
  const auto v = eq.field.values();
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return {*lo >= lower, *hi <= upper};
}

bool escape_direction_admissible(int degree, LeadingTerm lead, int direction) {
  if (direction == 0) return true;
  if (lead == LeadingTerm::power && degree % 2 == 0) return direction > 0;
  return true;
}

UnstableDirection unstable_direction(const Nonlinearity& nl, const Equilibrium& eq, int max_iter) {
  const Field dp = apply_dP(nl, eq.field);
  const double h = eq.field.grid().h();
  const double min_dp = *std::min_element(dp.values().begin(), dp.values().end());
  const double sigma = 4.0 / (h * h) - min_dp;
  const std::size_t m = eq.field.size();

  auto apply_l = [&](const std::vector<double>& x) {
    Field xf(eq.field.grid_ptr(), x);
    Field lx = laplacian(xf);
    std::vector<double> out(lx.values().begin(), lx.values().end());
    for (std::size_t j = 0; j < m; ++j) out[j] += dp[j] * x[j];
    return out;
  };
  auto normalize = [](std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s = std::max(s, std::abs(v));
    for (double& v : x) v /= s;
  };

  std::vector<double> x(m, 1.0);
  for (int it = 1; it <= max_iter; ++it) {
    const std::vector<double> lx = apply_l(x);
    double xx = 0.0, xlx = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      xx += x[j] * x[j];
      xlx += x[j] * lx[j];
    }
    const double lambda = xlx / xx;
    double res = 0.0;
    for (std::size_t j = 0; j < m; ++j) res = std::max(res, std::abs(lx[j] - lambda * x[j]));
    if (res <= 1e-10 * (sigma + std::abs(lambda))) {
      std::size_t jmax = 0;
      for (std::size_t j = 1; j < m; ++j) {
        if (std::abs(x[j]) > std::abs(x[jmax])) jmax = j;
      }
      if (x[jmax] < 0) for (double& v : x) v = -v;
      normalize(x);
      UnstableDirection out{lambda, Field(eq.field.grid_ptr(), x)};
      out.degenerate = std::abs(lambda) < 1e-8;
      out.iterations = it;
      return out;
    }
    for (std::size_t j = 0; j < m; ++j) x[j] = lx[j] + sigma * x[j];
    normalize(x);
  }
  throw NoConvergenceError("unstable_direction: power iteration did not converge in " +
                           std::to_string(max_iter) + " iterations");
}

}  // namespace gradflow
