#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include <json.hpp>

#include "rvcsim/memsys.hpp"

namespace rvcsim {

enum class GenKind { FetchMiss, BimodalKiller, LoadUse, Rand };

std::string_view gen_kind_name(GenKind kind);
std::optional<GenKind> parse_gen_kind(std::string_view name);

/// Base addresses the generated programs use for data.
inline constexpr Addr kGenDataA = 0x8000;  // held in x2
inline constexpr Addr kGenDataB = 0x8100;  // held in x8

/// Hard ceiling on committed instructions for `rand` programs.
inline constexpr std::uint32_t kRandMaxCommits = 10'000;

struct GeneratedProgram {
  MemoryImage image;
  /// kind, seed, size, max_commits and an "expect" object describing the
  /// behaviour the program was built to exhibit.
  nlohmann::json manifest;
};

/// fetchmiss:      `size` loop iterations, each landing on a 32-bit
///                 instruction at pc = 2 mod 4 through a redirect.
/// bimodal-killer: `size` iterations of two alternating branches plus
///                 the loop branch.
/// loaduse:        `size` iterations with two dependent load/use pairs.
/// rand:           random terminating program of at most `size` commits
///                 (clamped to kRandMaxCommits).
GeneratedProgram generate_program(GenKind kind, std::uint64_t seed, std::uint32_t size);

}  // namespace rvcsim
