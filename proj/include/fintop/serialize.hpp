#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "fintop/fincat.hpp"
#include "fintop/presheaf.hpp"
#include "fintop/sheaves.hpp"

namespace fintop {

using Json = nlohmann::json;

// Document formats. Every reference field ("category", "source", ...)
// holds either an inline object or a string location that is resolved
// relative to the referring document.
//
//   category  {"objects": [id], "morphisms": [{"id","dom","cod"}],
//              "compose": [{"g","f","gf"}]}
//             Identities are implicit ("id_<object>"); compose entries
//             are listed only for pairs of non-identity arrows.
//   presheaf  {"category": ref, "sets": {obj: [elem]},
//              "action": {morId: {elem: elem}}}
//             Action tables map elements at cod(morId) to elements at
//             dom(morId); identity tables are implicit.
//   natural   {"source": ref, "target": ref,
//              "components": {obj: {elem: elem}}}
//   topology  {"category": ref, "covers": {obj: [[morId]]},
//              "saturate": bool}
//             Each inner list generates a sieve; with "saturate": true
//             the generated covers are closed under the topology axioms.
//   fixture   {"name": str, "category": ref, "topology": ref?,
//              "presheaves": {name: ref}, "arrows": {name: ref},
//              "expected": [{"query","value","provenance"}]}

// Resolves a string reference against the directory of the referring
// document. Returns the new base directory (for nested references) and
// the raw text. Throws ParseError when the location cannot be read.
using Fetch = std::function<std::pair<std::string, std::string>(
    const std::string& base, const std::string& ref)>;

Fetch file_fetch();
Fetch memory_fetch(const std::map<std::string, std::string>& files);

// Accepts clean atoms and balanced composites: no whitespace, no '|',
// brackets ( ) { } [ ] balanced, and , ; : only inside brackets.
bool id_valid(const std::string& id);

Json parse_json(const std::string& text, const std::string& where);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
std::string canonical_dump(const Json& doc);

enum class DocKind { category, presheaf, nat_trans, topology, fixture };
DocKind classify_document(const Json& doc);
std::string doc_kind_name(DocKind kind);

FinCategory load_category(const Json& doc, const Fetch& fetch,
                          const std::string& base, const std::string& name);
Presheaf load_presheaf(const Json& doc, const Fetch& fetch,
                       const std::string& base, const std::string& name);
NatTrans load_nat_trans(const Json& doc, const Fetch& fetch,
                        const std::string& base);
GrothTopology load_topology(const Json& doc, const Fetch& fetch,
                            const std::string& base, const std::string& name,
                            std::size_t cap = kDefaultSubCap);

struct ExpectedValue {
  std::string query;
  std::int64_t value = 0;
  std::string provenance;
};

struct Fixture {
  std::string name;
  FinCategory category;
  bool has_topology = false;
  GrothTopology topology;
  std::map<std::string, Presheaf> presheaves;
  std::map<std::string, NatTrans> arrows;
  std::vector<ExpectedValue> expected;
};

// Loads the bundle and validates every part (category laws, presheaf
// functoriality, naturality, topology axioms). Violations surface as
// ParseError: a fixture is input, so a broken one is an input error.
Fixture load_fixture(const Json& doc, const Fetch& fetch,
                     const std::string& base,
                     std::size_t cap = kDefaultSubCap);

Json store_category(const FinCategory& c);
Json store_presheaf(const Presheaf& p);
Json store_nat_trans(const NatTrans& t);
Json store_topology(const GrothTopology& t);

}  // namespace fintop
