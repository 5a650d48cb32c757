#include "secswipt/rng.hpp"

#include <cmath>

namespace secswipt {
namespace {

// SplitMix64-style finalizer over the (key, counter) pair. Statistical quality
// is plenty for Monte-Carlo channel draws and the construction is portable:
// no std::*_distribution, so sequences are identical across standard libraries.
std::uint64_t mix(std::uint64_t key, std::uint64_t counter)
{
    std::uint64_t z = key + 0x9E3779B97F4A7C15ULL * (counter + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z = (z ^ (z >> 31)) * 0xD6E8FEB86659FD93ULL;
    return z ^ (z >> 32);
}

std::uint64_t fnv1a(std::string_view s)
{
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

constexpr std::uint64_t kSplitSalt = 0xA02B0D9FFD5E1C37ULL;

} // namespace

RngStream RngStream::split(std::uint64_t label) const
{
    return RngStream(mix(key_ ^ kSplitSalt, label));
}

RngStream RngStream::split(std::string_view label) const
{
    return split(fnv1a(label));
}

std::uint64_t RngStream::next_u64()
{
    return mix(key_, counter_++);
}

double RngStream::next_double()
{
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_double_open()
{
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RngStream::next_gaussian()
{
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = next_double_open();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

} // namespace secswipt
