#include "seaoco/random.hpp"

namespace seaoco {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Stream::Stream(std::uint64_t seed, std::uint64_t episode, Role role)
    : key_(splitmix64(splitmix64(splitmix64(seed) ^ episode) ^ static_cast<std::uint64_t>(role))) {}

Stream::result_type Stream::operator()() {
  // Two rounds so that neighbouring counters decorrelate fully.
  return splitmix64(splitmix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_) ^ key_);
}

double Stream::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

std::uint64_t Stream::below(std::uint64_t n) {
  // Rejection to remove modulo bias.
  const std::uint64_t limit = max() - max() % n;
  std::uint64_t r = (*this)();
  while (r >= limit) r = (*this)();
  return r % n;
}

double Stream::rademacher() { return ((*this)() >> 63) ? 1.0 : -1.0; }

}  // namespace seaoco
