#include "casimir/cubature.hpp"

#include <boost/random/sobol.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <random>
#include <vector>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

constexpr double roundoff_floor = 50.0 * std::numeric_limits<double>::epsilon();

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double tolerance(const QuadratureConfig& cfg, double value) {
  return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
}

double to_unit(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

// Genz-Malik rule on an axis-aligned box given by centre and half widths.
class GenzMalik {
 public:
  explicit GenzMalik(std::size_t dim) : dim_(dim), point_(dim) {
    const double n = static_cast<double>(dim);
    w1_ = (12824.0 - 9120.0 * n + 400.0 * n * n) / 19683.0;
    w3_ = (1820.0 - 400.0 * n) / 19683.0;
    w5_ = 6859.0 / 19683.0 / std::ldexp(1.0, static_cast<int>(dim));
    e1_ = (729.0 - 950.0 * n + 50.0 * n * n) / 729.0;
    e3_ = (265.0 - 100.0 * n) / 1458.0;
  }

  struct Estimate {
    double value;
    double error;
    std::size_t split_dim;
  };

  Estimate apply(const Integrand& f, std::span<const double> c, std::span<const double> h) {
    static constexpr double l2 = 0.35856858280031809199;  // sqrt(9/70)
    static constexpr double l4 = 0.94868329805051379960;  // sqrt(9/10)
    static constexpr double l5 = 0.68824720161168529772;  // sqrt(9/19)
    static constexpr double w2 = 980.0 / 6561.0;
    static constexpr double w4 = 200.0 / 19683.0;
    static constexpr double e2 = 245.0 / 486.0;
    static constexpr double e4 = 25.0 / 729.0;
    static constexpr double ratio = (l2 * l2) / (l4 * l4);

    std::copy(c.begin(), c.end(), point_.begin());
    const double f0 = f(point_);

    double sum2 = 0.0;
    double sum3 = 0.0;
    double max_diff = -1.0;
    std::size_t split = 0;
    for (std::size_t i = 0; i < dim_; ++i) {
      point_[i] = c[i] - l2 * h[i];
      const double a1 = f(point_);
      point_[i] = c[i] + l2 * h[i];
      const double a2 = f(point_);
      point_[i] = c[i] - l4 * h[i];
      const double b1 = f(point_);
      point_[i] = c[i] + l4 * h[i];
      const double b2 = f(point_);
      point_[i] = c[i];
      sum2 += a1 + a2;
      sum3 += b1 + b2;
      const double diff = std::abs(a1 + a2 - 2.0 * f0 - ratio * (b1 + b2 - 2.0 * f0));
      // Near-ties go to the wider side so flat integrands still refine evenly.
      if (diff > max_diff * (1.0 + 1e-10) ||
          (diff >= max_diff * (1.0 - 1e-10) && h[i] > h[split])) {
        max_diff = std::max(diff, max_diff);
        split = i;
      }
    }

    double sum4 = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t j = i + 1; j < dim_; ++j) {
        for (const double si : {-1.0, 1.0}) {
          for (const double sj : {-1.0, 1.0}) {
            point_[i] = c[i] + si * l4 * h[i];
            point_[j] = c[j] + sj * l4 * h[j];
            sum4 += f(point_);
          }
        }
        point_[i] = c[i];
        point_[j] = c[j];
      }
    }

    double sum5 = 0.0;
    const std::size_t corners = std::size_t{1} << dim_;
    for (std::size_t mask = 0; mask < corners; ++mask) {
      for (std::size_t i = 0; i < dim_; ++i) {
        point_[i] = c[i] + (((mask >> i) & 1U) ? l5 : -l5) * h[i];
      }
      sum5 += f(point_);
    }

    double volume = 1.0;
    for (std::size_t i = 0; i < dim_; ++i) volume *= 2.0 * h[i];
    const double seventh = volume * (w1_ * f0 + w2 * sum2 + w3_ * sum3 + w4 * sum4 + w5_ * sum5);
    const double fifth = volume * (e1_ * f0 + e2 * sum2 + e3_ * sum3 + e4 * sum4);
    return {seventh, std::abs(seventh - fifth), split};
  }

 private:
  std::size_t dim_;
  std::vector<double> point_;
  double w1_, w3_, w5_, e1_, e3_;
};

struct Region {
  std::vector<double> centre;
  std::vector<double> half;
  double value;
  double error;
  std::size_t split_dim;
  std::size_t id;
};

struct LargerError {
  bool operator()(const Region& lhs, const Region& rhs) const {
    if (lhs.error != rhs.error) return lhs.error < rhs.error;
    return lhs.id > rhs.id;
  }
};

}  // namespace

std::string_view method_name(Method m) {
  switch (m) {
    case Method::adaptive: return "adaptive";
    case Method::quasi_random: return "quasi-random";
    case Method::monte_carlo: return "monte-carlo";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view name) {
  if (name == "adaptive" || name == "adaptive-subdivision") return Method::adaptive;
  if (name == "quasi-random" || name == "qmc") return Method::quasi_random;
  if (name == "monte-carlo" || name == "mc" || name == "plain-monte-carlo") {
    return Method::monte_carlo;
  }
  return std::nullopt;
}

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0) && !(abs_tol > 0.0)) {
    throw DomainError("quadrature: rel_tol or abs_tol must be positive");
  }
  if (rel_tol < 0.0 || abs_tol < 0.0) throw DomainError("quadrature: tolerances must be >= 0");
  if (max_evaluations < 1000) throw DomainError("quadrature: max_evaluations must be >= 1000");
}

std::size_t genz_malik_points(std::size_t dim) {
  return 1 + 4 * dim + 2 * dim * (dim - 1) + (std::size_t{1} << dim);
}

CubatureResult integrate_adaptive(const Integrand& f, std::size_t dim, const QuadratureConfig& cfg) {
  cfg.validate();
  if (dim < 2 || dim > 12) throw DomainError("adaptive cubature supports 2 <= dim <= 12");

  GenzMalik rule(dim);
  const std::size_t per_region = genz_malik_points(dim);
  std::priority_queue<Region, std::vector<Region>, LargerError> heap;
  std::size_t next_id = 0;

  Region root{std::vector<double>(dim, 0.5), std::vector<double>(dim, 0.5), 0.0, 0.0, 0, next_id++};
  const auto est = rule.apply(f, root.centre, root.half);
  root.value = est.value;
  root.error = est.error;
  root.split_dim = est.split_dim;

  CompensatedSum total_value;
  CompensatedSum total_error;
  CompensatedSum total_abs;
  total_value.add(root.value);
  total_error.add(root.error);
  total_abs.add(std::abs(root.value));
  heap.push(std::move(root));
  std::size_t evaluations = per_region;

  auto reported_error = [&] {
    return std::max(total_error.value(), roundoff_floor * total_abs.value());
  };

  CubatureResult best{total_value.value(), reported_error(), evaluations, false, Method::adaptive};
  while (reported_error() > tolerance(cfg, total_value.value()) &&
         evaluations + 2 * per_region <= cfg.max_evaluations) {
    Region parent = heap.top();
    heap.pop();
    total_value.add(-parent.value);
    total_error.add(-parent.error);
    total_abs.add(-std::abs(parent.value));

    const std::size_t d = parent.split_dim;
    parent.half[d] *= 0.5;
    for (const double side : {-1.0, 1.0}) {
      Region child{parent.centre, parent.half, 0.0, 0.0, 0, next_id++};
      child.centre[d] += side * parent.half[d];
      const auto e = rule.apply(f, child.centre, child.half);
      child.value = e.value;
      child.error = e.error;
      child.split_dim = e.split_dim;
      total_value.add(child.value);
      total_error.add(child.error);
      total_abs.add(std::abs(child.value));
      heap.push(std::move(child));
    }
    evaluations += 2 * per_region;

    const double err = reported_error();
    if (err <= best.error) best = {total_value.value(), err, evaluations, false, Method::adaptive};
  }
  best.evaluations = evaluations;
  best.converged = best.error <= tolerance(cfg, best.value);
  if (!std::isfinite(best.value)) best.converged = false;
  return best;
}

CubatureResult integrate_quasi_random(const Integrand& f, std::size_t dim,
                                      const QuadratureConfig& cfg) {
  cfg.validate();
  if (dim < 1) throw DomainError("quasi-random cubature needs dim >= 1");
  constexpr std::size_t replicas = 16;

  std::mt19937_64 rng(cfg.seed);
  std::vector<double> shifts(replicas * dim);
  for (double& s : shifts) s = to_unit(rng());

  boost::random::sobol sobol(dim);
  std::vector<double> raw(dim);
  std::vector<double> point(dim);
  std::vector<CompensatedSum> sums(replicas);
  std::size_t points = 0;
  std::size_t target = 64;

  CubatureResult out{0.0, std::numeric_limits<double>::infinity(), 0, false, Method::quasi_random};
  while (target * replicas <= cfg.max_evaluations) {
    for (; points < target; ++points) {
      for (std::size_t i = 0; i < dim; ++i) raw[i] = to_unit(sobol());
      for (std::size_t r = 0; r < replicas; ++r) {
        for (std::size_t i = 0; i < dim; ++i) {
          const double x = raw[i] + shifts[r * dim + i];
          point[i] = x >= 1.0 ? x - 1.0 : x;
        }
        sums[r].add(f(point));
      }
    }
    double mean = 0.0;
    std::vector<double> means(replicas);
    for (std::size_t r = 0; r < replicas; ++r) {
      means[r] = sums[r].value() / static_cast<double>(points);
      mean += means[r];
    }
    mean /= static_cast<double>(replicas);
    double var = 0.0;
    for (const double m : means) var += (m - mean) * (m - mean);
    var /= static_cast<double>(replicas - 1);
    out.value = mean;
    out.error = std::max(std::sqrt(var / static_cast<double>(replicas)), roundoff_floor * std::abs(mean));
    out.evaluations = points * replicas;
    if (out.error <= tolerance(cfg, out.value)) {
      out.converged = std::isfinite(out.value);
      break;
    }
    target *= 2;
  }
  return out;
}

CubatureResult integrate_monte_carlo(const Integrand& f, std::size_t dim,
                                     const QuadratureConfig& cfg) {
  cfg.validate();
  if (dim < 1) throw DomainError("Monte Carlo integration needs dim >= 1");
  std::mt19937_64 rng(cfg.seed);
  std::vector<double> point(dim);

  // Welford running moments.
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t count = 0;
  std::size_t checkpoint = 1024;
  CubatureResult out{0.0, std::numeric_limits<double>::infinity(), 0, false, Method::monte_carlo};
  while (count < cfg.max_evaluations) {
    for (double& x : point) x = to_unit(rng());
    const double y = f(point);
    ++count;
    const double delta = y - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (y - mean);
    if (count == checkpoint || count == cfg.max_evaluations) {
      const double n = static_cast<double>(count);
      out.value = mean;
      out.error = std::max(std::sqrt(m2 / (n - 1.0) / n), roundoff_floor * std::abs(mean));
      out.evaluations = count;
      if (out.error <= tolerance(cfg, mean)) {
        out.converged = std::isfinite(mean);
        break;
      }
      checkpoint *= 2;
    }
  }
  return out;
}

CubatureResult integrate_unit_cube(const Integrand& f, std::size_t dim, const QuadratureConfig& cfg) {
  switch (cfg.method) {
    case Method::quasi_random: return integrate_quasi_random(f, dim, cfg);
    case Method::monte_carlo: return integrate_monte_carlo(f, dim, cfg);
    case Method::adaptive: break;
  }
  CubatureResult result = integrate_adaptive(f, dim, cfg);
  if (!result.converged && dim >= 6) {
    CubatureResult fallback = integrate_quasi_random(f, dim, cfg);
    const std::size_t spent = result.evaluations + fallback.evaluations;
    if (fallback.error < result.error) result = fallback;
    result.evaluations = spent;
  }
  return result;
}

}  // namespace casimir
