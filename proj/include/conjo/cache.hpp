#pragma once

// On-disk cache of enumerated quotients. One JSON file per space holding
// the reduced words of W^P in basis order (1-based letters). Loaded words
// go through ParabolicQuotient::from_words, which re-checks them.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "conjo/weyl.hpp"

namespace conjo {

class QuotientCache {
 public:
  explicit QuotientCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::filesystem::path file_for(const std::string& descriptor, const std::vector<int>& levi) const;

  // nullopt when missing or unreadable; a stale or corrupt file is not fatal.
  std::optional<std::vector<std::vector<int>>> load(const std::string& descriptor, const std::vector<int>& levi) const;
  void store(const std::string& descriptor, const std::vector<int>& levi, const ParabolicQuotient& q) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace conjo
