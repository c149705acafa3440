#include "pbitsa/rng.hpp"

#include <cmath>

#include "pbitsa/error.hpp"

namespace pbitsa {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t stream_word(std::uint64_t seed, Stream stream, std::uint64_t a,
                          std::uint64_t b) noexcept {
  std::uint64_t x = mix64(seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(stream) + 1));
  x = mix64(x ^ (a + 0xD1B54A32D192ED03ULL));
  x = mix64(x ^ (b * 0x94D049BB133111EBULL + 0x2545F4914F6CDD1DULL));
  return x;
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) noexcept {
  return stream_word(master_seed, Stream::trial, index, 0);
}

unsigned poisson_inverse(double u, double lambda, double exp_neg_lambda) noexcept {
  double p = exp_neg_lambda;
  double cdf = p;
  unsigned k = 0;
  // Past ~lambda + 40 sqrt(lambda) terms the pmf underflows relative to the
  // cdf; the guard only matters for u within rounding of 1.
  while (u >= cdf && p > 0.0) {
    ++k;
    p *= lambda / static_cast<double>(k);
    cdf += p;
  }
  return k;
}

SignalSource::SignalSource(SignalKind kind, std::uint64_t master_seed, double lambda)
    : kind_(kind), seed_(master_seed), lambda_(lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    fail(ErrorKind::config, "Poisson lambda must be positive");
  }
  exp_neg_lambda_ = std::exp(-lambda_);
}

double SignalSource::signal(std::uint64_t spin, std::uint64_t cycle) const {
  const double u = to_unit(stream_word(seed_, Stream::signal, spin, cycle));
  if (kind_ == SignalKind::uniform) return 2.0 * u - 1.0;
  const unsigned x = poisson_inverse(u, lambda_, exp_neg_lambda_);
  return static_cast<double>(x) / lambda_ - 1.0;
}

double SignalSource::acceptance_uniform(std::uint64_t cycle, std::uint64_t attempt) const {
  return to_unit(stream_word(seed_, Stream::acceptance, cycle, attempt));
}

double SignalSource::stall_uniform(std::uint64_t spin, std::uint64_t cycle) const {
  return to_unit(stream_word(seed_, Stream::stall, spin, cycle));
}

double SignalSource::init_uniform(std::uint64_t spin) const {
  return to_unit(stream_word(seed_, Stream::init, spin, 0));
}

std::uint64_t SignalSource::shuffle_word(std::uint64_t cycle, std::uint64_t k) const {
  return stream_word(seed_, Stream::shuffle, cycle, k);
}

}  // namespace pbitsa
