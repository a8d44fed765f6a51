#pragma once

#include <cstdint>
#include <cstddef>
#include <functional>
#include <vector>

#include "momentbody/moment_core.hpp"

namespace momentbody {

// Identifies one reproducible random stream: output is a pure function of
// (seed, stream index), independent of worker count and scheduling. One
// stream per trial.
struct SeededStream {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

// Counter-based generator (Philox 4x32-10) keyed by the seed, with the
// stream index in the high counter words. Value type, cheap to construct.
class RandomStream {
 public:
  explicit RandomStream(const SeededStream& id);
  RandomStream(std::uint64_t seed, std::uint64_t stream) : RandomStream(SeededStream{seed, stream}) {}

  std::uint64_t next_u64();
  double next_double();  // uniform, strictly inside (0,1)
  double next_normal();
  double next_gamma(double shape);  // Marsaglia-Tsang, any shape > 0
  double next_beta(double a, double b);

 private:
  void refill();

  std::uint32_t key_[2];
  std::uint32_t stream_[2];
  std::uint64_t block_ = 0;
  std::uint32_t buf_[4] = {0, 0, 0, 0};
  int buf_used_ = 4;  // words consumed from buf_
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

// One draw from Beta(a, b), realized as G_a / (G_a + G_b) with independent
// gamma draws.
double beta_sample(double a, double b, const SeededStream& stream);

// A uniform draw from the n-dimensional moment body: independent canonical
// coordinates p_i ~ Beta(n-i+1, n-i+1) mapped to power moments.
struct UniformMomentSample {
  std::size_t n = 0;
  std::vector<double> canonical;
  std::vector<double> moments;
};

UniformMomentSample sample_uniform_moment_body(std::size_t n, const SeededStream& stream);

struct BatchOptions {
  std::size_t n = 1;
  std::size_t count = 1;
  std::size_t prefix_k = 1;  // how many leading coordinates to keep (<= n)
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

// count independent k-prefixes of canonical coordinates of uniform draws
// from the n-dimensional body; row index == trial index == stream index.
std::vector<std::vector<double>> sample_canonical_batch(const BatchOptions& opts);

// Same trials, mapped to moment prefixes (c_1..c_k).
std::vector<std::vector<double>> sample_moment_batch(const BatchOptions& opts);

// Shared chunked parallel loop: calls fn(trial) for trial = 0..count-1,
// deterministic output placement is the caller's business.
void parallel_trials(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn);

}  // namespace momentbody
