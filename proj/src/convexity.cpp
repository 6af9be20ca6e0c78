#include "cdt/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "cdt/error.hpp"

namespace cdt {

namespace {

constexpr double kRelTol = 1e-9;
constexpr double kMagnitudeCap = 1e150;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Interval intersect(const Interval& a, const Interval& b) { return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)}; }

bool usable(double v) { return std::isfinite(v) && std::abs(v) < kMagnitudeCap; }

double safe_eval(const FunctionModel& f, double x) {
  try {
    return f(x);
  } catch (const Error&) {
    return std::nan("");
  }
}

// Largest t between inside and outside (inside usable) with f(t) usable.
double shrink_end(const FunctionModel& f, double inside, double outside) {
  if (usable(safe_eval(f, outside))) return outside;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (inside + outside);
    if (mid == inside || mid == outside) break;
    if (usable(safe_eval(f, mid)))
      inside = mid;
    else
      outside = mid;
  }
  return inside;
}

FunctionModel compose(const FunctionModel& f, const Generator& rho, const Generator& tau) {
  const Interval dom = intersect(f.domain(), rho.domain());
  const Interval image{rho(dom.lo), rho(dom.hi)};
  auto eval = [f, rho, tau](double u) {
    const double x = rho.inverse(u);
    const double y = f(x);
    if (!tau.domain().contains(y))
      fail(ErrorKind::Domain, "F(" + num(x) + ") = " + num(y) + " leaves the domain " +
                                  tau.domain().to_string() + " of " + tau.id());
    return tau(y);
  };
  std::optional<ScalarFn> derivative;
  if (f.has_analytic_derivative() && rho.has_analytic_derivative() && tau.has_analytic_derivative()) {
    derivative = [f, rho, tau](double u) {
      const double x = rho.inverse(u);
      return tau.derivative(f(x)) * f.derivative(x) / rho.derivative(x);
    };
  }
  return FunctionModel(tau.id() + "o(" + f.id() + ")o" + rho.id() + "^-1", image, eval, derivative);
}

struct Grid {
  std::vector<double> x;
  std::vector<double> u;
  std::vector<double> g;
};

Grid build_grid(const FunctionModel& f, const Generator& rho, const Generator& tau, const Interval& range,
                std::size_t count, ExecutionPolicy policy) {
  Grid grid;
  grid.x = make_grid(range, count);
  grid.u.resize(grid.x.size());
  grid.g.resize(grid.x.size());
  parallel_for(
      grid.x.size(),
      [&](std::size_t i) {
        const double x = grid.x[i];
        const double y = f(x);
        if (!tau.domain().contains(y))
          fail(ErrorKind::Domain, "F(" + num(x) + ") = " + num(y) + " leaves the domain " +
                                      tau.domain().to_string() + " of " + tau.id());
        grid.u[i] = rho(x);
        grid.g[i] = tau(y);
        if (!std::isfinite(grid.u[i]) || !std::isfinite(grid.g[i]))
          fail(ErrorKind::Domain, "non-finite value of " + f.id() + " at " + num(x));
      },
      policy);
  return grid;
}

struct RowResult {
  bool violated = false;
  bool all_flat = true;
  double worst = 0.0;
  std::array<double, 3> witness{};
};

}  // namespace

std::string_view to_string(ConvexityKind kind) {
  switch (kind) {
    case ConvexityKind::Convex: return "convex";
    case ConvexityKind::Affine: return "affine";
    case ConvexityKind::NotConvex: return "not_convex";
  }
  return "?";
}

FunctionModel to_ordinary(const FunctionModel& f, const Generator& rho, const Generator& tau) {
  const Interval dom = intersect(f.domain(), rho.domain());
  if (!(dom.lo < dom.hi))
    fail(ErrorKind::Domain, "domains of " + f.id() + " and " + rho.id() + " do not overlap");
  const Interval range = default_check_range(f, rho);
  for (double x : make_grid(range, 64)) {
    const double y = f(x);
    if (!tau.domain().contains(y))
      fail(ErrorKind::Domain, "F(" + num(x) + ") = " + num(y) + " leaves the domain " +
                                  tau.domain().to_string() + " of " + tau.id());
  }
  return compose(f, rho, tau);
}

Interval default_check_range(const FunctionModel& f, const Generator& rho) {
  const Interval dom = intersect(f.domain(), rho.domain());
  if (!(dom.lo < dom.hi)) fail(ErrorKind::Domain, "empty domain for " + f.id());
  Interval r = sample_range(dom);
  const double center = r.lo > 0.0 ? std::sqrt(r.lo * r.hi) : 0.5 * (r.lo + r.hi);
  if (!usable(safe_eval(f, center)))
    fail(ErrorKind::Domain, f.id() + " is not finite at " + num(center));
  r.hi = shrink_end(f, center, r.hi);
  r.lo = shrink_end(f, center, r.lo);
  return r;
}

Interval default_check_range(const FunctionModel& f, const Generator& rho, const Generator& tau) {
  const FunctionModel outer(f.id(), f.domain(), [f, tau](double x) {
    const double y = f(x);
    return tau.domain().contains(y) ? tau(y) : y;
  });
  return default_check_range(outer, rho);
}

ConvexityVerdict is_mn_convex(const FunctionModel& f, const Generator& rho, const Generator& tau,
                              const ConvexityOptions& options) {
  if (options.grid < 3) fail(ErrorKind::Param, "convexity grid needs at least 3 points");
  const Interval dom = intersect(f.domain(), rho.domain());
  const Interval range = options.range ? *options.range : default_check_range(f, rho, tau);
  if (!(range.lo < range.hi) || !dom.contains(range.lo) || !dom.contains(range.hi))
    fail(ErrorKind::Domain, "check range " + range.to_string() + " is not inside " + dom.to_string());

  const Grid grid = build_grid(f, rho, tau, range, options.grid, options.policy);
  const std::size_t n = grid.x.size();

  ConvexityVerdict verdict{ConvexityKind::Convex, std::nullopt, 0.0};
  bool flat = true;

  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h1 = grid.u[i] - grid.u[i - 1];
    const double h2 = grid.u[i + 1] - grid.u[i];
    const double s1 = (grid.g[i] - grid.g[i - 1]) / h1;
    const double s2 = (grid.g[i + 1] - grid.g[i]) / h2;
    const double scale = std::abs(grid.g[i - 1]) + std::abs(grid.g[i]) + std::abs(grid.g[i + 1]);
    const double tol = kRelTol * scale / std::min(h1, h2) + 1e-300;
    const double d = s2 - s1;
    if (std::abs(d) > tol) flat = false;
    if (d < -tol) {
      const double ratio = -d / tol;
      if (!verdict.witness) verdict.witness = std::array<double, 3>{grid.x[i - 1], grid.x[i], grid.x[i + 1]};
      verdict.worst_ratio = std::max(verdict.worst_ratio, ratio);
    }
  }

  std::vector<RowResult> rows(n);
  parallel_for(
      n,
      [&](std::size_t i) {
        RowResult& row = rows[i];
        for (std::size_t j = i + 2; j < n; ++j) {
          const double mu = 0.5 * (grid.u[i] + grid.u[j]);
          const double xm = rho.inverse(mu);
          const double gm = tau(f(xm));
          const double chord = 0.5 * (grid.g[i] + grid.g[j]);
          const double tol = kRelTol * (std::abs(grid.g[i]) + std::abs(grid.g[j]) + std::abs(gm)) + 1e-300;
          const double excess = gm - chord;
          if (std::abs(excess) > tol) row.all_flat = false;
          if (excess > tol) {
            if (!row.violated) row.witness = {grid.x[i], xm, grid.x[j]};
            row.violated = true;
            row.worst = std::max(row.worst, excess / tol);
          }
        }
      },
      options.policy);

  for (const RowResult& row : rows) {
    if (!row.all_flat) flat = false;
    if (row.violated) {
      if (!verdict.witness) verdict.witness = row.witness;
      verdict.worst_ratio = std::max(verdict.worst_ratio, row.worst);
    }
  }

  if (verdict.witness)
    verdict.kind = ConvexityKind::NotConvex;
  else if (flat)
    verdict.kind = ConvexityKind::Affine;
  return verdict;
}

double relative_convexity_det(const FunctionModel& f, const FunctionModel& g, double x, double y, double z) {
  const double fx = f(x);
  const double fy = f(y);
  const double fz = f(z);
  if (!(fx <= fy && fy <= fz))
    fail(ErrorKind::Order, "relative convexity needs f(x) <= f(y) <= f(z), got " + num(fx) + ", " + num(fy) +
                               ", " + num(fz));
  const double gx = g(x);
  return (fy - fx) * (g(z) - gx) - (fz - fx) * (g(y) - gx);
}

bool is_relatively_convex(const FunctionModel& f, const FunctionModel& g, const Interval& range,
                          std::size_t grid, std::size_t random_triples, std::uint64_t seed) {
  const std::vector<double> xs = make_grid(range, grid);
  std::vector<double> fx(xs.size());
  std::vector<double> gx(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    fx[i] = f(xs[i]);
    gx[i] = g(xs[i]);
  }
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });

  auto violates = [&](std::size_t a, std::size_t b, std::size_t c) {
    const double df1 = fx[b] - fx[a];
    const double df2 = fx[c] - fx[a];
    const double dg1 = gx[b] - gx[a];
    const double dg2 = gx[c] - gx[a];
    const double det = df1 * dg2 - df2 * dg1;
    const double tol = kRelTol * (std::abs(df1) + std::abs(df2)) * (std::abs(dg1) + std::abs(dg2)) +
                       1e-12 * std::abs(df1 * dg2);
    return det < -tol;
  };

  for (std::size_t i = 0; i + 2 < order.size(); ++i)
    if (violates(order[i], order[i + 1], order[i + 2])) return false;

  Sampler sampler(seed);
  for (std::size_t t = 0; t < random_triples; ++t) {
    std::array<std::size_t, 3> pick{sampler.index(order.size()), sampler.index(order.size()),
                                    sampler.index(order.size())};
    std::sort(pick.begin(), pick.end());
    if (pick[0] == pick[1] || pick[1] == pick[2]) continue;
    if (violates(order[pick[0]], order[pick[1]], order[pick[2]])) return false;
  }
  return true;
}

FunctionModel power_convexity_transform(const FunctionModel& f, double delta1, double delta2) {
  const Interval dom = f.domain();
  if (dom.lo < 0.0) fail(ErrorKind::Domain, "power convexity transform needs a domain inside (0, inf)");

  Interval image;
  if (delta1 == 0.0)
    image = {std::log(dom.lo), std::log(dom.hi)};
  else if (delta1 > 0.0)
    image = {std::pow(dom.lo, delta1), std::pow(dom.hi, delta1)};
  else
    image = {std::pow(dom.hi, delta1), std::pow(dom.lo, delta1)};

  auto inner = [delta1](double t) { return delta1 == 0.0 ? std::exp(t) : std::pow(t, 1.0 / delta1); };
  auto inner_prime = [delta1](double t) {
    return delta1 == 0.0 ? std::exp(t) : std::pow(t, 1.0 / delta1 - 1.0) / delta1;
  };
  auto positive = [f](double x) {
    const double y = f(x);
    if (!(y > 0.0)) fail(ErrorKind::Domain, "f(" + num(x) + ") = " + num(y) + " is not positive");
    return y;
  };
  auto eval = [=](double t) {
    const double y = positive(inner(t));
    if (delta2 == 0.0) return std::log(y);
    return (delta2 > 0.0 ? 1.0 : -1.0) * std::pow(y, delta2);
  };
  auto derivative = [=](double t) {
    const double x = inner(t);
    const double y = positive(x);
    const double outer_prime = delta2 == 0.0 ? 1.0 / y : std::abs(delta2) * std::pow(y, delta2 - 1.0);
    return outer_prime * f.derivative(x) * inner_prime(t);
  };
  return FunctionModel(f.id() + "_{" + num(delta1) + "," + num(delta2) + "}", image, eval, derivative);
}

MidpointCertificate certify_mn_convex(const FunctionModel& f, const MeanSpec& m, const MeanSpec& n,
                                      const Interval& range, std::size_t samples, std::uint64_t seed) {
  Sampler sampler(seed);
  MidpointCertificate cert{true, samples, std::nullopt};
  for (std::size_t i = 0; i < samples; ++i) {
    const double p = sampler.uniform(range.lo, range.hi);
    const double q = sampler.uniform(range.lo, range.hi);
    const double lhs = f(mean(m, p, q));
    const double rhs = mean(n, f(p), f(q));
    if (lhs > rhs + 1e-12 * std::max(std::abs(lhs), std::abs(rhs))) {
      cert.holds = false;
      cert.witness = std::array<double, 2>{p, q};
      break;
    }
  }
  return cert;
}

}  // namespace cdt
