#include "conjo/cache.hpp"

#include <fstream>

#include "json.hpp"

#include "conjo/exports.hpp"

namespace conjo {

namespace {
constexpr const char* kCacheSchema = "conjo-quotient/1";
}

std::filesystem::path QuotientCache::file_for(const std::string& descriptor, const std::vector<int>& levi) const {
  std::string name = descriptor + "_P";
  for (std::size_t k = 0; k < levi.size(); ++k) name += (k ? "-" : "") + std::to_string(levi[k] + 1);
  return dir_ / (name + ".quotient.json");
}

std::optional<std::vector<std::vector<int>>> QuotientCache::load(const std::string& descriptor,
                                                                 const std::vector<int>& levi) const {
  std::ifstream f(file_for(descriptor, levi));
  if (!f) return std::nullopt;
  nlohmann::json j = nlohmann::json::parse(f, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  if (j.value("schema", "") != kCacheSchema || j.value("type", "") != descriptor) return std::nullopt;
  std::vector<int> stored_levi;
  std::vector<std::vector<int>> words;
  try {
    for (int v : j.at("levi")) stored_levi.push_back(v - 1);
    for (const auto& w : j.at("words")) {
      std::vector<int> word;
      for (int letter : w) word.push_back(letter - 1);
      words.push_back(std::move(word));
    }
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  }
  if (stored_levi != levi) return std::nullopt;
  return words;
}

void QuotientCache::store(const std::string& descriptor, const std::vector<int>& levi,
                          const ParabolicQuotient& q) const {
  nlohmann::json j;
  j["schema"] = kCacheSchema;
  j["type"] = descriptor;
  nlohmann::json l = nlohmann::json::array();
  for (int v : levi) l.push_back(v + 1);
  j["levi"] = l;
  nlohmann::json words = nlohmann::json::array();
  for (std::size_t k = 0; k < q.size(); ++k) {
    nlohmann::json w = nlohmann::json::array();
    for (int letter : q.element(k).word()) w.push_back(letter + 1);
    words.push_back(w);
  }
  j["words"] = words;
  write_file_atomic(file_for(descriptor, levi), j.dump() + "\n");
}

}  // namespace conjo
