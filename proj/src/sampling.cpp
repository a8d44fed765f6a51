#include "momentbody/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

namespace momentbody {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philox_round(std::uint32_t ctr[4], const std::uint32_t key[2]) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  const std::uint32_t out0 = hi1 ^ ctr[1] ^ key[0];
  const std::uint32_t out2 = hi0 ^ ctr[3] ^ key[1];
  ctr[0] = out0;
  ctr[1] = lo1;
  ctr[2] = out2;
  ctr[3] = lo0;
}

}  // namespace

RandomStream::RandomStream(const SeededStream& id) {
  key_[0] = static_cast<std::uint32_t>(id.seed);
  key_[1] = static_cast<std::uint32_t>(id.seed >> 32);
  stream_[0] = static_cast<std::uint32_t>(id.stream);
  stream_[1] = static_cast<std::uint32_t>(id.stream >> 32);
}

void RandomStream::refill() {
  std::uint32_t ctr[4] = {static_cast<std::uint32_t>(block_),
                          static_cast<std::uint32_t>(block_ >> 32), stream_[0], stream_[1]};
  std::uint32_t key[2] = {key_[0], key_[1]};
  for (int round = 0; round < 10; ++round) {
    philox_round(ctr, key);
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
  }
  buf_[0] = ctr[0];
  buf_[1] = ctr[1];
  buf_[2] = ctr[2];
  buf_[3] = ctr[3];
  buf_used_ = 0;
  ++block_;
}

std::uint64_t RandomStream::next_u64() {
  if (buf_used_ > 2) refill();
  const std::uint64_t lo = buf_[buf_used_];
  const std::uint64_t hi = buf_[buf_used_ + 1];
  buf_used_ += 2;
  return (hi << 32) | lo;
}

double RandomStream::next_double() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::next_normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  const double u1 = next_double();
  const double u2 = next_double();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  cached_normal_ = r * std::sin(angle);
  has_cached_normal_ = true;
  return r * std::cos(angle);
}

double RandomStream::next_gamma(double shape) {
  if (!(shape > 0.0)) throw InvalidArgument("gamma shape must be positive");
  if (shape < 1.0) {
    const double boost = std::pow(next_double(), 1.0 / shape);
    return next_gamma(shape + 1.0) * boost;
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / (3.0 * std::sqrt(d));
  for (;;) {
    double x, v;
    do {
      x = next_normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = next_double();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double RandomStream::next_beta(double a, double b) {
  const double ga = next_gamma(a);
  const double gb = next_gamma(b);
  double r = ga / (ga + gb);
  // Keep the draw strictly inside (0,1): downstream code takes logs and
  // forms 1 - p.
  if (r <= 0.0) r = 1e-300;
  if (r >= 1.0) r = 1.0 - 1e-16;
  return r;
}

double beta_sample(double a, double b, const SeededStream& stream) {
  RandomStream rng(stream);
  return rng.next_beta(a, b);
}

UniformMomentSample sample_uniform_moment_body(std::size_t n, const SeededStream& stream) {
  if (n == 0) throw InvalidArgument("dimension must be positive");
  RandomStream rng(stream);
  UniformMomentSample out;
  out.n = n;
  out.canonical.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const double shape = static_cast<double>(n - i + 1);
    out.canonical.push_back(rng.next_beta(shape, shape));
  }
  out.moments = detail::moments_from_canonical(out.canonical, n);
  return out;
}

void parallel_trials(std::size_t count, unsigned workers,
                     const std::function<void(std::size_t)>& fn) {
  if (workers <= 1 || count < 2) {
    for (std::size_t t = 0; t < count; ++t) fn(t);
    return;
  }
  const unsigned nthreads = static_cast<unsigned>(
      std::min<std::size_t>(workers, count));
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (unsigned w = 0; w < nthreads; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t t = w; t < count; t += nthreads) fn(t);
    });
  }
  for (auto& th : pool) th.join();
}

std::vector<std::vector<double>> sample_canonical_batch(const BatchOptions& opts) {
  if (opts.count == 0) throw InvalidArgument("batch count must be positive");
  if (opts.prefix_k == 0 || opts.prefix_k > opts.n) {
    throw InvalidArgument("prefix length must satisfy 1 <= k <= n");
  }
  std::vector<std::vector<double>> rows(opts.count);
  parallel_trials(opts.count, opts.workers, [&](std::size_t trial) {
    RandomStream rng(SeededStream{opts.seed, trial});
    std::vector<double> p;
    p.reserve(opts.prefix_k);
    for (std::size_t i = 1; i <= opts.prefix_k; ++i) {
      const double shape = static_cast<double>(opts.n - i + 1);
      p.push_back(rng.next_beta(shape, shape));
    }
    rows[trial] = std::move(p);
  });
  return rows;
}

std::vector<std::vector<double>> sample_moment_batch(const BatchOptions& opts) {
  std::vector<std::vector<double>> rows = sample_canonical_batch(opts);
  parallel_trials(rows.size(), opts.workers, [&](std::size_t trial) {
    rows[trial] = detail::moments_from_canonical(rows[trial], rows[trial].size());
  });
  return rows;
}

}  // namespace momentbody
