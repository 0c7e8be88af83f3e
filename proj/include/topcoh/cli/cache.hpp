#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "topcoh/formulas/formulas.hpp"

namespace topcoh::cli {

/// Identifies the code that produced a cached table; bump when the formulas change.
std::string code_version();

/// Default cache directory: $TOPCOH_CACHE_DIR, else $XDG_CACHE_HOME/topcoh, else ~/.cache/topcoh.
std::filesystem::path default_cache_dir();

/// 64-bit FNV-1a over the decimal values, one per line.
std::uint64_t checksum(const formulas::RankSequence& s);

/// On-disk store of t-sequences keyed by (p, N, code version). Entries carry a
/// checksum; a corrupt or mismatched entry is treated as missing.
class SequenceCache {
 public:
  explicit SequenceCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::filesystem::path path_for(std::uint32_t p, std::size_t max_n) const;
  std::optional<formulas::RankSequence> load(std::uint32_t p, std::size_t max_n) const;
  void store(const formulas::RankSequence& s) const;

  /// Loads if present and valid, otherwise computes and stores. `hit` reports which.
  formulas::RankSequence t_sequence(std::uint32_t p, std::size_t max_n, bool* hit = nullptr) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace topcoh::cli
