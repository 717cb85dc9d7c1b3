#pragma once

#include <array>
#include <cstdint>

namespace dspa {

// Counter-based noise source (Philox4x32-10). Every deviate is a pure function
// of (seed, tag, operator index, global element index, iteration), so the
// stream a given chain variable sees does not depend on worker count, thread
// schedule, or call order. Restarted chains resume the exact same streams.
class NoiseSource {
 public:
  enum class Tag : std::uint32_t {
    x_update = 1,
    z_update = 2,
    u_update = 3,
    observation = 4,
    misc = 5,
  };

  explicit NoiseSource(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  // Standard normal deviate for one global component. Consecutive components
  // share a Philox block through the two Box-Muller branches.
  double normal(Tag tag, std::uint32_t op, std::uint64_t element,
                std::uint64_t iteration) const;

  // Uniform in (0, 1]; `attempt` separates draws inside rejection loops.
  double uniform(Tag tag, std::uint32_t op, std::uint64_t element,
                 std::uint64_t iteration, std::uint32_t attempt) const;

  // Poisson deviate. Inversion below mean 10, transformed rejection above.
  std::uint64_t poisson(double mean, Tag tag, std::uint32_t op,
                        std::uint64_t element, std::uint64_t iteration) const;

 private:
  std::array<std::uint32_t, 4> block(Tag tag, std::uint32_t op,
                                     std::uint64_t c01, std::uint64_t c2,
                                     std::uint32_t c3) const;
  std::uint64_t seed_;
};

}  // namespace dspa
