#pragma once
// Generated by tools/gen_smoothness_constants.py; do not edit.

#include <array>
#include <cstdint>

namespace gpseq::smoothness {

inline constexpr unsigned kMaxDegree = 8;

inline constexpr std::array<std::uint64_t, 9> kC1 = {0, 1, 3, 11, 50, 274, 1764, 13132, 118124};
inline constexpr std::array<std::uint64_t, 9> kC2 = {0, 1, 4, 48, 1008, 31680, 1382400, 94348800, 8360755200};
inline constexpr std::array<std::uint64_t, 9> kCAP = {0, 1, 4, 11, 26, 57, 120, 247, 502};

} // namespace gpseq::smoothness
