#pragma once

#include <cstdint>

namespace pbitsa {

enum class SignalKind { uniform, poisson };

inline constexpr double kDefaultPoissonLambda = 10.0;

// Counter-based random numbers: every draw is a pure function of the master
// seed, a stream tag and up to two coordinates, so synchronous sweeps give
// the same values whatever order (or thread) evaluates them.
class SignalSource {
 public:
  SignalSource() : SignalSource(SignalKind::uniform, 0) {}
  SignalSource(SignalKind kind, std::uint64_t master_seed,
               double lambda = kDefaultPoissonLambda);

  SignalKind kind() const noexcept { return kind_; }
  double lambda() const noexcept { return lambda_; }
  std::uint64_t master_seed() const noexcept { return seed_; }

  // p-bit random signal r_i(t). Uniform on [-1, 1], or X/lambda - 1 with
  // X ~ Poisson(lambda).
  double signal(std::uint64_t spin, std::uint64_t cycle) const;

  // Uniform [0, 1) for Metropolis acceptance tests.
  double acceptance_uniform(std::uint64_t cycle, std::uint64_t attempt) const;

  // Uniform [0, 1) stall decisions; disjoint from the signal stream.
  double stall_uniform(std::uint64_t spin, std::uint64_t cycle) const;

  // Uniform [0, 1) for the initial spin configuration.
  double init_uniform(std::uint64_t spin) const;

  // Raw 64-bit word for the node-order shuffle of classic SA.
  std::uint64_t shuffle_word(std::uint64_t cycle, std::uint64_t k) const;

 private:
  SignalKind kind_ = SignalKind::uniform;
  std::uint64_t seed_ = 0;
  double lambda_ = kDefaultPoissonLambda;
  double exp_neg_lambda_ = 0.0;
};

enum class Stream : std::uint64_t {
  signal = 1,
  stall = 2,
  acceptance = 3,
  init = 4,
  shuffle = 5,
  trial = 6,
};

// Bijective 64-bit finalizer (splitmix64).
std::uint64_t mix64(std::uint64_t x) noexcept;

std::uint64_t stream_word(std::uint64_t seed, Stream stream, std::uint64_t a,
                          std::uint64_t b) noexcept;

// 53-bit uniform in [0, 1).
inline double to_unit(std::uint64_t word) noexcept {
  return static_cast<double>(word >> 11) * 0x1.0p-53;
}

// Seed for trial `index` of a benchmark with the given master seed.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) noexcept;

// Smallest k with P(X <= k) > u for X ~ Poisson(lambda); exp_neg_lambda is
// e^-lambda.
unsigned poisson_inverse(double u, double lambda, double exp_neg_lambda) noexcept;

}  // namespace pbitsa
