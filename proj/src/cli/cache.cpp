#include "topcoh/cli/cache.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "topcoh/cli/io.hpp"
#include "topcoh/errors.hpp"

#ifndef TOPCOH_VERSION
#define TOPCOH_VERSION "dev"
#endif

namespace topcoh::cli {

namespace {

// Revision of the recursion kernels; part of every cache key.
constexpr const char* kFormulaRevision = "t-rec-2";

std::uint64_t fnv1a(std::uint64_t h, const std::string& bytes) {
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;

}  // namespace

std::string code_version() {
  std::ostringstream ss;
  ss << std::hex << (fnv1a(kFnvOffset, std::string(TOPCOH_VERSION) + "/" + kFormulaRevision) & 0xffffffffULL);
  return std::string(TOPCOH_VERSION) + "-" + ss.str();
}

std::filesystem::path default_cache_dir() {
  if (const char* dir = std::getenv("TOPCOH_CACHE_DIR"); dir && *dir) return dir;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::filesystem::path(xdg) / "topcoh";
  if (const char* home = std::getenv("HOME"); home && *home) return std::filesystem::path(home) / ".cache" / "topcoh";
  return std::filesystem::temp_directory_path() / "topcoh-cache";
}

std::uint64_t checksum(const formulas::RankSequence& s) {
  std::uint64_t h = kFnvOffset;
  for (const auto& v : s.values) h = fnv1a(h, v.get_str() + "\n");
  return h;
}

std::filesystem::path SequenceCache::path_for(std::uint32_t p, std::size_t max_n) const {
  return dir_ / ("t_p" + std::to_string(p) + "_n" + std::to_string(max_n) + "_" + code_version() + ".json");
}

std::optional<formulas::RankSequence> SequenceCache::load(std::uint32_t p, std::size_t max_n) const {
  std::ifstream in(path_for(p, max_n));
  if (!in) return std::nullopt;
  try {
    const auto doc = nlohmann::json::parse(in);
    if (doc.at("version").get<std::string>() != code_version()) return std::nullopt;
    auto s = sequence_from_json(doc.at("sequence"));
    if (s.p != p || s.kind != formulas::SequenceKind::T || s.values.size() != max_n + 1) return std::nullopt;
    if (doc.at("checksum").get<std::string>() != std::to_string(checksum(s))) return std::nullopt;
    return s;
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  } catch (const ParseError&) {
    return std::nullopt;
  }
}

void SequenceCache::store(const formulas::RankSequence& s) const {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) return;  // caching is best effort
  const auto target = path_for(s.p, s.max_n());
  const auto tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return;
    nlohmann::json doc = {{"version", code_version()}, {"checksum", std::to_string(checksum(s))}, {"sequence", sequence_json(s)}};
    out << doc.dump() << '\n';
  }
  std::filesystem::rename(tmp, target, ec);
}

formulas::RankSequence SequenceCache::t_sequence(std::uint32_t p, std::size_t max_n, bool* hit) const {
  if (auto cached = load(p, max_n)) {
    if (hit) *hit = true;
    return *cached;
  }
  if (hit) *hit = false;
  auto s = formulas::t_sequence(p, max_n);
  store(s);
  return s;
}

}  // namespace topcoh::cli
