#include "cogrowth/flatperm.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <random>
#include <stdexcept>

namespace cogrowth {

namespace {

template <class T>
std::vector<std::vector<T>> triangle(int max_len) {
  std::vector<std::vector<T>> t(static_cast<std::size_t>(max_len) + 1);
  for (int n = 0; n <= max_len; ++n) t[n].assign(static_cast<std::size_t>(n) + 1, T{});
  return t;
}

// Streams of later runs start past any worker index in use.
constexpr std::uint64_t kRunStride = std::uint64_t{1} << 32;

template <class G>
void require_metric(const G&) {
  if constexpr (!HasMetric<G>) throw MetricUnavailable("no word metric for this group");
}

template <HasMetric G>
void run_worker(const G& g, const FlatPermOptions& opts, std::uint64_t tours, std::mt19937_64 rng,
                HistogramEstimate& h) {
  using Element = typename G::Element;
  struct Node {
    Element x;
    int n;
    double w;
  };
  const int letters = g.alphabet().size();
  const int len = opts.max_len;
  std::uniform_int_distribution<int> letter(0, letters - 1);
  std::bernoulli_distribution coin(0.5);

  // This tour's weight per bin, flushed into weight_sq_sum when it ends.
  std::vector<double> tour_weight(static_cast<std::size_t>(len + 1) * (len + 1), 0.0);
  std::vector<std::size_t> touched;
  auto record = [&](int n, int l, double w) {
    h.weight_sum[n][l] += w;
    ++h.visit_count[n][l];
    const std::size_t bin = static_cast<std::size_t>(n) * (len + 1) + l;
    if (tour_weight[bin] == 0.0) touched.push_back(bin);
    tour_weight[bin] += w;
  };

  std::vector<Node> stack;
  for (std::uint64_t t = 0; t < tours; ++t) {
    ++h.tours;
    record(0, 0, 1.0);
    stack.push_back({g.identity(), 0, 1.0});
    while (!stack.empty()) {
      Node node = std::move(stack.back());
      stack.pop_back();
      if (node.n == len) continue;
      g.apply(node.x, static_cast<Symbol>(letter(rng)));
      ++node.n;
      const auto l = static_cast<int>(g.geodesic_length(node.x));
      if (l > node.n) throw std::logic_error("flatperm: geodesic length exceeds word length");
      record(node.n, l, node.w);
      const double ratio = node.w * static_cast<double>(h.tours) / h.weight_sum[node.n][l];
      if (ratio > opts.enrich_above) {
        node.w /= opts.copies;
        for (int c = 1; c < opts.copies; ++c) stack.push_back(node);
        stack.push_back(std::move(node));
      } else if (ratio < opts.prune_below) {
        if (coin(rng)) continue;
        node.w *= 2.0;
        stack.push_back(std::move(node));
      } else {
        stack.push_back(std::move(node));
      }
    }
    for (auto bin : touched) {
      const auto n = bin / (len + 1), l = bin % (len + 1);
      h.weight_sq_sum[n][l] += tour_weight[bin] * tour_weight[bin];
      tour_weight[bin] = 0.0;
    }
    touched.clear();
  }
}

}  // namespace

HistogramEstimate::HistogramEstimate(int max_len_, int alphabet_size_)
    : max_len(max_len_),
      alphabet_size(alphabet_size_),
      weight_sum(triangle<double>(max_len_)),
      weight_sq_sum(triangle<double>(max_len_)),
      visit_count(triangle<std::uint64_t>(max_len_)) {}

double HistogramEstimate::fraction(int n, int l) const {
  if (tours == 0 || n > max_len || l > n) return 0.0;
  return weight_sum[n][l] / static_cast<double>(tours);
}

double HistogramEstimate::c_hat(int n, int l) const { return std::pow(alphabet_size, n) * fraction(n, l); }

double HistogramEstimate::std_error(int n, int l) const {
  if (tours < 2 || n > max_len || l > n) return 0.0;
  const double t = static_cast<double>(tours);
  const double mean = weight_sum[n][l] / t;
  const double var = std::max(weight_sq_sum[n][l] / t - mean * mean, 0.0) * t / (t - 1.0);
  return std::pow(alphabet_size, n) * std::sqrt(var / t);
}

void HistogramEstimate::merge(const HistogramEstimate& other) {
  if (other.max_len != max_len || other.alphabet_size != alphabet_size)
    throw std::invalid_argument("histogram: shapes differ");
  tours += other.tours;
  runs += other.runs;
  for (int n = 0; n <= max_len; ++n)
    for (int l = 0; l <= n; ++l) {
      weight_sum[n][l] += other.weight_sum[n][l];
      weight_sq_sum[n][l] += other.weight_sq_sum[n][l];
      visit_count[n][l] += other.visit_count[n][l];
    }
}

HistogramEstimate run_flatperm(const Group& g, const FlatPermOptions& opts, const HistogramEstimate* resume) {
  if (opts.max_len < 1) throw std::invalid_argument("flatperm: max_len must be at least 1");
  if (opts.workers < 1) throw std::invalid_argument("flatperm: need at least one worker");
  if (opts.copies < 2 || !(opts.prune_below > 0.0) || !(opts.enrich_above > opts.prune_below))
    throw std::invalid_argument("flatperm: need copies >= 2 and 0 < prune_below < enrich_above");
  g.visit([](const auto& family) { require_metric(family); });

  const int letters = g.alphabet().size();
  const std::uint64_t run = resume ? resume->runs : 0;
  std::vector<HistogramEstimate> parts(static_cast<std::size_t>(opts.workers), HistogramEstimate(opts.max_len, letters));
  std::vector<std::exception_ptr> errors(parts.size());
#pragma omp parallel for schedule(static, 1) num_threads(opts.workers)
  for (int w = 0; w < opts.workers; ++w) {
    const std::uint64_t share = opts.tours / opts.workers + (static_cast<std::uint64_t>(w) < opts.tours % opts.workers);
    try {
      g.visit([&](const auto& family) {
        if constexpr (HasMetric<std::decay_t<decltype(family)>>)
          run_worker(family, opts, share, make_stream(opts.seed, run * kRunStride + w), parts[w]);
      });
    } catch (...) {
      errors[w] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  HistogramEstimate out(opts.max_len, letters);
  if (resume) out.merge(*resume);
  for (const auto& p : parts) out.merge(p);
  out.runs = run + 1;
  return out;
}

std::vector<EscapePoint> run_simple_sampling(const Group& g, std::size_t num_words, std::size_t max_len,
                                             std::uint64_t seed, std::vector<std::size_t> record_at) {
  if (num_words < 2 || max_len < 1) throw std::invalid_argument("sampling: need >= 2 words of length >= 1");
  g.visit([](const auto& family) { require_metric(family); });
  if (record_at.empty()) {
    for (std::size_t n = 1; n < max_len; n *= 2) record_at.push_back(n);
    record_at.push_back(max_len);
  }
  std::sort(record_at.begin(), record_at.end());
  record_at.erase(std::unique(record_at.begin(), record_at.end()), record_at.end());
  if (record_at.front() == 0 || record_at.back() > max_len)
    throw std::invalid_argument("sampling: record lengths must lie in [1, max_len]");

  const std::size_t cols = record_at.size();
  std::vector<double> lengths(num_words * cols);
  std::vector<std::exception_ptr> errors(num_words);
  const auto words = static_cast<std::ptrdiff_t>(num_words);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < words; ++i) {
    try {
      g.visit([&](const auto& family) {
        if constexpr (HasMetric<std::decay_t<decltype(family)>>) {
          auto rng = make_stream(seed, static_cast<std::uint64_t>(i));
          std::uniform_int_distribution<int> letter(0, family.alphabet().size() - 1);
          auto x = family.identity();
          std::size_t next = 0;
          for (std::size_t n = 1; n <= max_len; ++n) {
            family.apply(x, static_cast<Symbol>(letter(rng)));
            if (n == record_at[next])
              lengths[static_cast<std::size_t>(i) * cols + next++] = static_cast<double>(family.geodesic_length(x));
          }
        }
      });
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<EscapePoint> out;
  const double m = static_cast<double>(num_words);
  for (std::size_t c = 0; c < cols; ++c) {
    double sum = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < num_words; ++i) sum += lengths[i * cols + c];
    const double mean = sum / m;
    for (std::size_t i = 0; i < num_words; ++i) sq += (lengths[i * cols + c] - mean) * (lengths[i * cols + c] - mean);
    out.push_back({record_at[c], mean, std::sqrt(sq / (m - 1.0) / m)});
  }
  return out;
}

std::vector<NormalizedRow> normalize_distribution(const HistogramEstimate& h) {
  std::vector<NormalizedRow> out;
  if (h.tours == 0) return out;
  for (int n = 0; n <= h.max_len; ++n)
    for (int l = 0; l <= n; ++l)
      if (h.visit_count[n][l] > 0) out.push_back({n, l, h.fraction(n, l) * std::sqrt(static_cast<double>(n))});
  return out;
}

void write_histogram_csv(const HistogramEstimate& h, std::ostream& out) {
  out << "n,l,weight_sum,visits,c_hat,std_error,normalized\n";
  out.precision(12);
  for (int n = 0; n <= h.max_len; ++n)
    for (int l = 0; l <= n; ++l) {
      if (h.visit_count[n][l] == 0) continue;
      out << n << ',' << l << ',' << h.weight_sum[n][l] << ',' << h.visit_count[n][l] << ',' << h.c_hat(n, l) << ','
          << h.std_error(n, l) << ',' << h.fraction(n, l) * std::sqrt(static_cast<double>(n)) << '\n';
    }
}

void write_escape_csv(const std::vector<EscapePoint>& points, std::ostream& out) {
  out << "n,mean_l,std_error,ratio\n";
  out.precision(12);
  for (const auto& p : points)
    out << p.n << ',' << p.mean << ',' << p.std_error << ',' << p.mean / static_cast<double>(p.n) << '\n';
}

void save_histogram(const HistogramEstimate& h, std::ostream& out) {
  nlohmann::json j;
  j["max_len"] = h.max_len;
  j["alphabet_size"] = h.alphabet_size;
  j["tours"] = h.tours;
  j["runs"] = h.runs;
  j["weight_sum"] = h.weight_sum;
  j["weight_sq_sum"] = h.weight_sq_sum;
  j["visit_count"] = h.visit_count;
  out << j.dump() << '\n';
}

HistogramEstimate load_histogram(std::istream& in) {
  const auto j = nlohmann::json::parse(in);
  HistogramEstimate h(j.at("max_len").get<int>(), j.at("alphabet_size").get<int>());
  h.tours = j.at("tours").get<std::uint64_t>();
  h.runs = j.at("runs").get<std::uint64_t>();
  h.weight_sum = j.at("weight_sum").get<std::vector<std::vector<double>>>();
  h.weight_sq_sum = j.at("weight_sq_sum").get<std::vector<std::vector<double>>>();
  h.visit_count = j.at("visit_count").get<std::vector<std::vector<std::uint64_t>>>();
  if (h.weight_sum.size() != static_cast<std::size_t>(h.max_len) + 1)
    throw std::invalid_argument("histogram file: inconsistent shape");
  return h;
}

}  // namespace cogrowth
