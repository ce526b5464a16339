#include "fintop/fixtures.hpp"

#include <set>

#include "fintop/errors.hpp"

namespace fintop {

std::vector<std::string> bundled_fixture_names() {
  std::set<std::string> names;
  for (const auto& entry : bundled_fixture_files()) {
    auto slash = entry.first.find('/');
    if (slash != std::string::npos) names.insert(entry.first.substr(0, slash));
  }
  return {names.begin(), names.end()};
}

Fixture load_bundled_fixture(const std::string& name, std::size_t cap) {
  const auto& files = bundled_fixture_files();
  if (!files.count(name + "/fixture.json"))
    throw ParseError("no bundled fixture named \"" + name + "\"");
  return load_fixture(Json("fixture.json"), memory_fetch(files), name, cap);
}

}  // namespace fintop
