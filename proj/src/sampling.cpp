#include "tropnet/sampling.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include "tropnet/lp.hpp"
#include "tropnet/parallel.hpp"
#include "tropnet/rng.hpp"

namespace tropnet {

namespace {

std::uint64_t factorial(std::size_t n) {
  if (n > 20) throw std::overflow_error("factorial: n > 20 does not fit in 64 bits");
  std::uint64_t f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= k;
  return f;
}

bool same_value(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

struct Clustering {
  std::size_t clusters = 0;
  std::vector<JacobianSignature> signatures;
};

Clustering cluster(const Network& net, const std::vector<std::vector<double>>& pts) {
  std::vector<JacobianSignature> sigs(pts.size());
  std::vector<double> values(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    sigs[i] = jacobian(net, pts[i]);
    values[i] = forward_double(net, pts[i]).front();
  });

  std::map<JacobianSignature, std::vector<std::size_t>> reps;
  Clustering out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto& list = reps[sigs[i]];
    bool joined = false;
    for (std::size_t r : list) {
      std::vector<double> mid(pts[i].size());
      for (std::size_t k = 0; k < mid.size(); ++k) mid[k] = 0.5 * (pts[i][k] + pts[r][k]);
      if (same_value(forward_double(net, mid).front(), 0.5 * (values[i] + values[r]))) {
        joined = true;
        break;
      }
    }
    if (!joined) {
      list.push_back(i);
      ++out.clusters;
    }
  }
  for (const auto& [sig, list] : reps) out.signatures.push_back(sig);
  return out;
}

void require_scalar(const Network& net, const char* where) {
  if (net.output_dim() != 1) {
    throw std::invalid_argument(std::string(where) + ": network must have a scalar output");
  }
}

void check_config(const SampleConfig& cfg) {
  if (!(cfg.R > 0)) throw std::invalid_argument("sampling: R must be positive");
  if (cfg.N == 0) throw std::invalid_argument("sampling: N must be >= 1");
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::string to_string(SampleScheme s) { return s == SampleScheme::kGrid ? "grid" : "uniform"; }

std::vector<std::vector<double>> sample_points(std::size_t n, const SampleConfig& cfg) {
  check_config(cfg);
  std::vector<std::vector<double>> pts;
  if (cfg.scheme == SampleScheme::kUniform) {
    Rng rng(cfg.seed);
    pts.resize(cfg.N, std::vector<double>(n));
    for (auto& p : pts) {
      for (auto& v : p) v = uniform(rng, -cfg.R, cfg.R);
    }
  } else {
    const auto k = static_cast<std::size_t>(
        std::max(1.0, std::round(std::pow(static_cast<double>(cfg.N), 1.0 / static_cast<double>(n)))));
    std::vector<double> axis(k, 0.0);
    for (std::size_t i = 0; i < k && k > 1; ++i) {
      axis[i] = -cfg.R + 2 * cfg.R * static_cast<double>(i) / static_cast<double>(k - 1);
    }
    std::vector<std::size_t> idx(n, 0);
    for (;;) {
      std::vector<double> p(n);
      for (std::size_t d = 0; d < n; ++d) p[d] = axis[idx[d]];
      pts.push_back(std::move(p));
      std::size_t d = 0;
      while (d < n && ++idx[d] == k) idx[d++] = 0;
      if (d == n) break;
    }
  }
  if (cfg.restrict_to_fundamental) {
    for (auto& p : pts) std::sort(p.begin(), p.end(), std::greater<>());
  }
  return pts;
}

RegionEstimate estimate_regions(const Network& net, const SampleConfig& cfg) {
  require_scalar(net, "estimate_regions");
  const auto t0 = std::chrono::steady_clock::now();
  const auto pts = sample_points(net.input_dim(), cfg);
  Clustering c = cluster(net, pts);
  RegionEstimate est;
  est.count = static_cast<double>(c.clusters);
  est.signatures = std::move(c.signatures);
  est.points = pts.size();
  est.elapsed = seconds_since(t0);
  return est;
}

std::uint64_t multiplicity(const JacobianSignature& sig, std::size_t n) {
  if (sig.entries.size() != n) {
    throw std::invalid_argument("multiplicity: signature has " + std::to_string(sig.entries.size()) +
                                " entries, expected " + std::to_string(n));
  }
  std::map<double, std::size_t> counts;
  for (double v : sig.entries) ++counts[round10(v)];
  std::uint64_t m = factorial(n);
  for (const auto& [v, c] : counts) m /= factorial(c);
  return m;
}

RegionEstimate estimate_regions_fundamental(const Network& net, const SampleConfig& cfg) {
  require_scalar(net, "estimate_regions_fundamental");
  check_config(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = net.input_dim();
  const std::uint64_t g = factorial(n);
  SampleConfig sub = cfg;
  sub.N = static_cast<std::size_t>((cfg.N + g - 1) / g);
  sub.restrict_to_fundamental = true;
  const auto pts = sample_points(n, sub);
  Clustering c = cluster(net, pts);
  RegionEstimate est;
  for (const auto& sig : c.signatures) est.count += static_cast<double>(multiplicity(sig, n));
  est.signatures = std::move(c.signatures);
  est.points = pts.size();
  est.elapsed = seconds_since(t0);
  return est;
}

std::pair<std::uint64_t, std::uint64_t> fundamental_bounds(const std::vector<LinearRegion>& regions,
                                                           std::size_t n) {
  const std::uint64_t g = factorial(n);
  // The cone: x_{i+1} - x_i <= 0.
  ExactMatrix D(n > 0 ? n - 1 : 0, n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    D(i, i) = -1;
    D(i, i + 1) = 1;
  }
  const Polyhedron cone(D, RationalVector(D.rows()));

  auto inside = [&](const Polyhedron& P) {
    for (std::size_t i = 0; i < D.rows(); ++i) {
      lp::Problem prob;
      prob.objective.assign(D.row(i).begin(), D.row(i).end());
      prob.constraints = P.A();
      prob.rhs = P.b();
      const lp::Outcome out = lp::solve(prob);
      if (out.status != lp::Status::kOptimal || sgn(out.value) > 0) return false;
    }
    return true;
  };

  std::vector<int> kind(regions.size(), 0);  // 0 = disjoint, 1 = meets, 2 = inside
  parallel_for(regions.size(), [&](std::size_t r) {
    bool all_inside = true;
    bool meets = false;
    for (const auto& P : regions[r].pieces) {
      if (all_inside && !inside(P)) all_inside = false;
      if (!meets && intersects(P, cone)) meets = true;
    }
    kind[r] = all_inside ? 2 : (meets ? 1 : 0);
  });

  std::uint64_t lower = 0;
  std::uint64_t extra = 0;
  for (std::size_t r = 0; r < regions.size(); ++r) {
    if (kind[r] == 2) {
      lower += g;
    } else if (kind[r] == 1) {
      JacobianSignature sig{to_double(regions[r].map.gradient)};
      extra += multiplicity(sig, n);
    }
  }
  return {lower, lower + extra};
}

}  // namespace tropnet
