#include "logitmeta/rng.hpp"

namespace logitmeta {

namespace {
__extension__ using Wide = unsigned __int128;
}  // namespace

std::uint64_t CounterRng::mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t CounterRng::below(std::uint64_t bound) {
  auto wide = static_cast<Wide>((*this)()) * bound;
  auto low = static_cast<std::uint64_t>(wide);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      wide = static_cast<Wide>((*this)()) * bound;
      low = static_cast<std::uint64_t>(wide);
    }
  }
  return static_cast<std::uint64_t>(wide >> 64);
}

std::uint64_t stream_key(std::uint64_t seed, std::uint64_t replica) {
  return CounterRng::mix(CounterRng::mix(seed) ^ (replica * 0xd1b54a32d192ed03ULL + 0x632be59bd9b4e019ULL));
}

}  // namespace logitmeta
