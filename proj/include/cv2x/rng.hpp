#pragma once

#include <cstdint>
#include <random>

namespace cv2x {

using Rng = std::mt19937_64;

// SplitMix64 finalizer; used only to decorrelate seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index, std::uint64_t stream) noexcept {
    return mix64(mix64(master ^ mix64(index)) + stream);
}

// Independent engines for one Monte Carlo trial, a pure function of (master seed, trial index).
// `association` drives the MBS layer and the typical-line SBSs (everything the association
// rule looks at); `environment` drives the other lines, vehicles and all fading, so a trial
// can be classified without paying for its interference field.
struct TrialStreams {
    Rng association;
    Rng environment;

    static TrialStreams for_trial(std::uint64_t master_seed, std::uint64_t index) {
        return TrialStreams{Rng(derive_seed(master_seed, index, 1)), Rng(derive_seed(master_seed, index, 2))};
    }
};

}  // namespace cv2x
