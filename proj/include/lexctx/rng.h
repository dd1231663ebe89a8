#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace lexctx {

// Seeded generator with platform-independent sampling helpers. The standard
// distributions are implementation-defined, so everything that must be
// reproducible across toolchains goes through these methods instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  // Uniform real in [0, 1).
  double uniform();

  // Standard normal via Box-Muller.
  double normal();

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  // k distinct indices from [0, n), uniformly without replacement, in
  // ascending order.
  std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Mixes a base seed with a stream tag so that derived generators are
// decorrelated.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

// 64-bit FNV-1a.
std::uint64_t fnv1a(std::span<const char> bytes);
inline std::uint64_t fnv1a(const std::string& s) { return fnv1a(std::span<const char>(s.data(), s.size())); }

}  // namespace lexctx
