#include "dspa/noise.hpp"

#include <cmath>

namespace dspa {

namespace {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

struct Philox4x32 {
  std::uint32_t k0, k1;

  std::array<std::uint32_t, 4> operator()(std::array<std::uint32_t, 4> ctr) {
    std::uint32_t c[4] = {ctr[0], ctr[1], ctr[2], ctr[3]};
    std::uint32_t key0 = k0, key1 = k1;
    for (int r = 0; r < 10; ++r) {
      const std::uint64_t p0 = 0xD2511F53ull * c[0];
      const std::uint64_t p1 = 0xCD9E8D57ull * c[2];
      const std::uint32_t n0 = static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ key0;
      const std::uint32_t n1 = static_cast<std::uint32_t>(p1);
      const std::uint32_t n2 = static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ key1;
      const std::uint32_t n3 = static_cast<std::uint32_t>(p0);
      c[0] = n0;
      c[1] = n1;
      c[2] = n2;
      c[3] = n3;
      key0 += 0x9E3779B9u;
      key1 += 0xBB67AE85u;
    }
    return {c[0], c[1], c[2], c[3]};
  }
};

inline double to_unit_open_closed(std::uint64_t x) {
  // (0, 1]: 53 significant bits, shifted away from zero so log() is safe.
  return (static_cast<double>(x >> 11) + 1.0) * 0x1p-53;
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

std::array<std::uint32_t, 4> NoiseSource::block(Tag tag, std::uint32_t op,
                                                std::uint64_t c01,
                                                std::uint64_t c2,
                                                std::uint32_t c3) const {
  const std::uint64_t stream =
      splitmix64((static_cast<std::uint64_t>(tag) << 32) | op);
  const std::uint64_t key = splitmix64(seed_ ^ stream);
  Philox4x32 prng{static_cast<std::uint32_t>(key),
                  static_cast<std::uint32_t>(key >> 32)};
  return prng({static_cast<std::uint32_t>(c01),
               static_cast<std::uint32_t>(c01 >> 32),
               static_cast<std::uint32_t>(c2), c3});
}

double NoiseSource::normal(Tag tag, std::uint32_t op, std::uint64_t element,
                           std::uint64_t iteration) const {
  const std::uint64_t pair = element >> 1;
  const auto b = block(tag, op, pair, iteration, 0);
  const std::uint64_t a =
      (static_cast<std::uint64_t>(b[0]) << 32) | b[1];
  const std::uint64_t c =
      (static_cast<std::uint64_t>(b[2]) << 32) | b[3];
  const double u1 = to_unit_open_closed(a);
  const double u2 = to_unit_open_closed(c);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = kTwoPi * u2;
  return (element & 1) ? r * std::sin(theta) : r * std::cos(theta);
}

double NoiseSource::uniform(Tag tag, std::uint32_t op, std::uint64_t element,
                            std::uint64_t iteration,
                            std::uint32_t attempt) const {
  const auto b = block(tag, op, element, iteration, attempt);
  const std::uint64_t a =
      (static_cast<std::uint64_t>(b[0]) << 32) | b[1];
  return to_unit_open_closed(a);
}

std::uint64_t NoiseSource::poisson(double mean, Tag tag, std::uint32_t op,
                                   std::uint64_t element,
                                   std::uint64_t iteration) const {
  if (mean <= 0.0) return 0;
  if (mean < 10.0) {
    // Inversion by sequential search on a single uniform.
    const double u = uniform(tag, op, element, iteration, 0);
    double p = std::exp(-mean);
    double cdf = p;
    std::uint64_t k = 0;
    const std::uint64_t k_max =
        static_cast<std::uint64_t>(mean + 100.0 * std::sqrt(mean) + 100.0);
    while (u > cdf && k < k_max) {
      ++k;
      p *= mean / static_cast<double>(k);
      cdf += p;
    }
    return k;
  }
  // Transformed rejection (PTRS), same construction as Hormann's sampler.
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mean = std::log(mean);
  for (std::uint32_t attempt = 0; attempt < 1000; ++attempt) {
    const double u = uniform(tag, op, element, iteration, 2 * attempt) - 0.5;
    const double v = uniform(tag, op, element, iteration, 2 * attempt + 1);
    const double us = 0.5 - std::fabs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    const double log_accept =
        std::log(v * inv_alpha / (a / (us * us) + b));
    if (log_accept <= kf * log_mean - mean - std::lgamma(kf + 1.0)) {
      return static_cast<std::uint64_t>(kf);
    }
  }
  // Unreachable in practice; the acceptance rate of PTRS is ~0.9.
  return static_cast<std::uint64_t>(mean);
}

}  // namespace dspa
