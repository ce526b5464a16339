#pragma once

#include <map>
#include <string>
#include <vector>

#include "fintop/serialize.hpp"

namespace fintop {

// The shipped fixture corpus, embedded so the binaries work from any
// directory. Keys are paths relative to the fixtures/ root.
const std::map<std::string, std::string>& bundled_fixture_files();

std::vector<std::string> bundled_fixture_names();

Fixture load_bundled_fixture(const std::string& name,
                             std::size_t cap = kDefaultSubCap);

}  // namespace fintop
