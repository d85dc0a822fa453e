#include "rgr/rng.hpp"

#include <cmath>

namespace rgr {

double Rng::next_normal() {
    // Box-Muller, cosine branch only; u1 in (0,1].
    const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

Rng derived_rng(std::uint64_t seed, std::uint64_t stream) {
    Rng mixer(seed ^ (0x6a09e667f3bcc909ULL + stream * 0x9e3779b97f4a7c15ULL));
    mixer.next_u64();
    return Rng(mixer.next_u64());
}

}  // namespace rgr
