#include "diolab/rng.hpp"

namespace diolab::rng {

namespace {

// splitmix64 finalizer.
std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t word(std::uint64_t seed, std::uint64_t stream, std::uint64_t index,
                   std::uint64_t slot) {
  // Chained finalizers decorrelate the key components.
  std::uint64_t h = mix(seed);
  h = mix(h ^ stream);
  h = mix(h ^ index);
  h = mix(h ^ slot);
  return mix(h);
}

Rat unit_dyadic(std::uint64_t seed, std::uint64_t stream, std::uint64_t index,
                std::uint64_t slot) {
  std::uint64_t hi = word(seed, stream, index, 2 * slot);
  std::uint64_t lo = word(seed, stream, index, 2 * slot + 1);
  Int num = Int(hi);
  num <<= 64;
  num += lo;
  Int den = Int(1);
  den <<= 128;
  return Rat(num, den);
}

std::uint64_t below(std::uint64_t seed, std::uint64_t stream, std::uint64_t index,
                    std::uint64_t slot, std::uint64_t bound) {
  if (bound == 0) throw std::domain_error("rng::below: bound = 0");
  unsigned __int128 w = word(seed, stream, index, slot);
  return static_cast<std::uint64_t>((w * bound) >> 64);
}

}  // namespace diolab::rng
