#include "cogrowth/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace cogrowth {

namespace {

// Relative slack applied to every certified value to absorb rounding in the
// row sums and ratios (which carry errors of a few ulps times the degree).
constexpr double kRoundingMargin = 1e-12;

class Operator {
 public:
  Operator(const TruncatedGraph& g, int period, std::size_t n, Backend backend)
      : adj_(g.adjacency), period_(period), n_(n), backend_(backend), tmp_(period == 2 ? n : 0) {}

  // y = B x with B = A^2 + I (period 2) or A + I (period 1). The shift
  // keeps the iteration from cycling on blocks of any higher period that
  // small prefixes can have.
  void apply(std::span<const double> x, std::span<double> y) {
    if (period_ == 2) {
      spmv(backend_, adj_, n_, x, tmp_);
      spmv(backend_, adj_, n_, tmp_, y);
    } else {
      spmv(backend_, adj_, n_, x, y);
    }
    for (std::size_t i = 0; i < n_; ++i) y[i] += x[i];
  }

  // Eigenvalue of A from one of B.
  double to_a(double mu) const {
    const double shifted = std::max(mu - 1.0, 0.0);
    return period_ == 2 ? std::sqrt(shifted) : shifted;
  }

 private:
  const SparseAdjacency& adj_;
  int period_;
  std::size_t n_;
  Backend backend_;
  std::vector<double> tmp_;
};

// Collatz-Wielandt: for nonnegative A and x >= 0, the spectral radius of A
// is at least min over supp(x) of (A_S x)_i / x_i with S = supp(x). The
// converged vector is accurate only where it is not tiny, so vertices whose
// ratio misses the estimate by more than a relative `slack` are dropped from
// S until every survivor passes; each intermediate ratio is a valid bound.
double collatz_wielandt(const SparseAdjacency& adj, std::size_t n, std::vector<double> x, double estimate,
                        double slack, Backend backend) {
  std::vector<double> w(n);
  const double cut = estimate * (1.0 - slack);
  double best = 0.0;
  for (int round = 0; round < 10'000; ++round) {
    spmv(backend, adj, n, x, w);
    const double m = min_ratio(backend, w, x);
    if (!std::isfinite(m)) break;  // nothing left
    best = std::max(best, m);
    std::size_t peeled = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] > 0.0 && w[i] < cut * x[i]) {
        x[i] = 0.0;
        ++peeled;
      }
    }
    if (peeled == 0) break;
  }
  return best;
}

// A is nilpotent exactly when the prefix graph has no cycle (Kahn's sort).
bool is_acyclic(const SparseAdjacency& adj, std::size_t n) {
  std::vector<std::uint32_t> indegree(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (auto e = adj.row_start[i]; e < adj.row_start[i + 1] && adj.column[e] < n; ++e) ++indegree[adj.column[e]];
  std::vector<std::uint32_t> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (indegree[i] == 0) ready.push_back(static_cast<std::uint32_t>(i));
  std::size_t removed = 0;
  while (!ready.empty()) {
    const auto i = ready.back();
    ready.pop_back();
    ++removed;
    for (auto e = adj.row_start[i]; e < adj.row_start[i + 1] && adj.column[e] < n; ++e)
      if (--indegree[adj.column[e]] == 0) ready.push_back(adj.column[e]);
  }
  return removed == n;
}

double certify(const TruncatedGraph& graph, std::size_t n, int period, std::span<const double> v, double lambda,
               Backend backend) {
  std::vector<double> x(v.begin(), v.end());
  if (period == 2 && lambda > 0.0) {
    // v mixes the +lambda and -lambda eigenvectors of A; v + Av/lambda
    // keeps only the Perron part.
    std::vector<double> av(n);
    spmv(backend, graph.adjacency, n, x, av);
    for (std::size_t i = 0; i < n; ++i) x[i] += av[i] / lambda;
  }
  double best = 0.0;
  for (double slack : {1e-10, 1e-8, 1e-6, 1e-4}) {
    best = std::max(best, collatz_wielandt(graph.adjacency, n, x, lambda, slack, backend));
    if (best >= lambda * (1.0 - 1e-9)) break;
  }
  return best;
}

}  // namespace

EigenResult dominant_eigenvalue(const TruncatedGraph& graph, int period, const PowerOptions& opts, std::size_t n,
                                std::vector<double> start) {
  if (period != 1 && period != 2) throw std::invalid_argument("dominant_eigenvalue: period must be 1 or 2");
  if (!(opts.tol > 0.0)) throw std::invalid_argument("dominant_eigenvalue: tolerance must be positive");
  if (n == 0) n = graph.size();
  if (n > graph.size()) throw std::invalid_argument("dominant_eigenvalue: prefix larger than the graph");

  EigenResult r;
  std::vector<double> v = start.empty() ? std::vector<double>(n, 1.0) : std::move(start);
  if (v.size() != n) throw std::invalid_argument("dominant_eigenvalue: start vector has the wrong length");
  const double scale = max_abs(opts.backend, v);
  if (!(scale > 0.0)) throw std::invalid_argument("dominant_eigenvalue: start vector is zero");
  for (double& x : v) x = std::abs(x) / scale;

  if (is_acyclic(graph.adjacency, n)) {  // nilpotent: no closed walks at all
    r.converged = true;
    r.vector.assign(n, 0.0);
    return r;
  }

  Operator op(graph, period, n, opts.backend);
  std::vector<double> w(n);
  double mu = 0.0;
  for (r.iterations = 1; r.iterations <= opts.max_iterations; ++r.iterations) {
    op.apply(v, w);
    const double top = max_abs(opts.backend, w);
    mu = dot(opts.backend, v, w) / dot(opts.backend, v, v);
    r.residual = residual(opts.backend, w, v, mu);  // ||v||_inf = 1
    if (r.residual <= opts.tol) {
      r.converged = true;
      break;
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / top;
  }
  r.iterations = std::min(r.iterations, opts.max_iterations);
  r.value = op.to_a(mu);
  const double bound = certify(graph, n, period, v, r.value, opts.backend);
  r.certified = std::min(bound * (1.0 - kRoundingMargin), r.value);
  r.vector = std::move(v);
  return r;
}

std::vector<std::size_t> geometric_checkpoints(std::size_t lo, std::size_t hi, int per_decade) {
  if (lo == 0 || hi < lo || per_decade < 1) throw std::invalid_argument("checkpoints: need 1 <= lo <= hi");
  std::vector<std::size_t> out;
  for (int k = 0;; ++k) {
    const double x = static_cast<double>(lo) * std::pow(10.0, static_cast<double>(k) / per_decade);
    const auto n = static_cast<std::size_t>(std::llround(x));
    if (n >= hi) break;
    if (out.empty() || n > out.back()) out.push_back(n);
  }
  if (out.empty() || out.back() != hi) out.push_back(hi);
  return out;
}

Ladder eigen_ladder(const TruncatedGraph& graph, const std::vector<std::size_t>& checkpoints, int period,
                    const PowerOptions& opts) {
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end()))
    throw std::invalid_argument("eigen_ladder: checkpoints must be ascending");
  Ladder ladder;
  std::vector<double> warm;
  double best = 0.0;
  for (std::size_t n : checkpoints) {
    if (n == 0 || n > graph.size()) throw std::invalid_argument("eigen_ladder: checkpoint outside the graph");
    std::vector<double> start;
    if (!warm.empty()) {
      double pad = std::numeric_limits<double>::infinity();
      for (double x : warm)
        if (x > 0.0) pad = std::min(pad, x);
      if (!std::isfinite(pad)) pad = 1.0;
      start = std::move(warm);
      start.resize(n, pad);
    }
    auto r = dominant_eigenvalue(graph, period, opts, n, std::move(start));
    best = std::max(best, r.certified);
    ladder.push_back({n, best, r.value, r.residual, r.iterations, r.converged});
    warm = std::move(r.vector);
    // A nilpotent prefix leaves nothing useful to warm-start from.
    if (max_abs(opts.backend, warm) == 0.0) warm.clear();
  }
  return ladder;
}

double certified_alpha_bound(const Group& g, std::size_t n, const PowerOptions& opts) {
  const auto graph = build_H(g, n);
  return dominant_eigenvalue(graph, classify_period(g.id()), opts).certified;
}

void write_ladder_csv(const Ladder& ladder, std::ostream& out) {
  out << "N,inv_log_N,alpha_N_certified,alpha_N_rayleigh,residual,iterations\n";
  out << std::setprecision(12);
  for (const auto& p : ladder) {
    out << p.n << ',';
    if (p.n >= 2)
      out << 1.0 / std::log(static_cast<double>(p.n));
    else
      out << "nan";
    out << ',' << p.certified << ',' << p.rayleigh << ',' << p.residual << ',' << p.iterations << '\n';
  }
}

}  // namespace cogrowth
