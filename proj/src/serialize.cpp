#include "fintop/serialize.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "fintop/errors.hpp"

namespace fintop {

namespace {

namespace fs = std::filesystem;

std::string join_paths(const std::string& base, const std::string& ref) {
  fs::path r(ref);
  if (r.is_absolute() || base.empty()) return r.lexically_normal().generic_string();
  return (fs::path(base) / r).lexically_normal().generic_string();
}

std::string stem_of(const std::string& ref) {
  std::string s = fs::path(ref).stem().generic_string();
  return s.empty() ? ref : s;
}

void require_object(const Json& doc, const std::string& where) {
  if (!doc.is_object())
    throw ParseError(where + ": expected a JSON object");
}

void check_keys(const Json& doc, const std::vector<std::string>& required,
                const std::vector<std::string>& optional,
                const std::string& where) {
  require_object(doc, where);
  for (const auto& key : required)
    if (!doc.contains(key))
      throw ParseError(where + ": missing key \"" + key + "\"");
  for (const auto& item : doc.items()) {
    const std::string& key = item.key();
    bool known = std::count(required.begin(), required.end(), key) > 0 ||
                 std::count(optional.begin(), optional.end(), key) > 0;
    if (!known) throw ParseError(where + ": unknown key \"" + key + "\"");
  }
}

std::string get_string(const Json& doc, const std::string& where) {
  if (!doc.is_string()) throw ParseError(where + ": expected a string");
  return doc.get<std::string>();
}

std::string get_id(const Json& doc, const std::string& where) {
  std::string s = get_string(doc, where);
  if (!id_valid(s))
    throw ParseError(where + ": invalid id \"" + s + "\"");
  return s;
}

// Fetches `doc` if it is a string reference; otherwise returns it as-is.
// On a fetch, `base` moves to the referenced file's directory and `name`
// (when non-null) becomes the file stem.
Json deref(const Json& doc, const Fetch& fetch, std::string& base,
           std::string* name) {
  if (!doc.is_string()) return doc;
  std::string ref = doc.get<std::string>();
  auto fetched = fetch(base, ref);
  base = fetched.first;
  if (name) *name = stem_of(ref);
  return parse_json(fetched.second, ref);
}

}  // namespace

Fetch file_fetch() {
  return [](const std::string& base, const std::string& ref) {
    std::string full = join_paths(base, ref);
    std::string next = fs::path(full).parent_path().generic_string();
    return std::make_pair(next, read_text_file(full));
  };
}

Fetch memory_fetch(const std::map<std::string, std::string>& files) {
  const auto* table = &files;
  return [table](const std::string& base, const std::string& ref) {
    std::string full = join_paths(base, ref);
    auto it = table->find(full);
    if (it == table->end())
      throw ParseError("no bundled file \"" + full + "\"");
    std::string next = fs::path(full).parent_path().generic_string();
    return std::make_pair(next, it->second);
  };
}

bool id_valid(const std::string& id) {
  if (id.empty()) return false;
  std::vector<char> open;
  for (char ch : id) {
    unsigned char u = static_cast<unsigned char>(ch);
    if (std::isspace(u) || std::iscntrl(u) || ch == '|') return false;
    if (ch == '(' || ch == '{' || ch == '[') {
      open.push_back(ch);
      continue;
    }
    if (ch == ')' || ch == '}' || ch == ']') {
      char want = ch == ')' ? '(' : (ch == '}' ? '{' : '[');
      if (open.empty() || open.back() != want) return false;
      open.pop_back();
      continue;
    }
    if ((ch == ',' || ch == ';' || ch == ':') && open.empty()) return false;
  }
  return open.empty();
}

Json parse_json(const std::string& text, const std::string& where) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(where + ": " + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read \"" + path + "\"");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write \"" + path + "\"");
  out << text;
  if (!out) throw ParseError("cannot write \"" + path + "\"");
}

std::string canonical_dump(const Json& doc) { return doc.dump(2) + "\n"; }

DocKind classify_document(const Json& doc) {
  if (!doc.is_object()) throw ParseError("document: expected a JSON object");
  if (doc.contains("presheaves") || doc.contains("arrows") ||
      doc.contains("expected"))
    return DocKind::fixture;
  if (doc.contains("covers")) return DocKind::topology;
  if (doc.contains("sets")) return DocKind::presheaf;
  if (doc.contains("components")) return DocKind::nat_trans;
  if (doc.contains("objects")) return DocKind::category;
  throw ParseError("document: unrecognized shape (no classifying key)");
}

std::string doc_kind_name(DocKind kind) {
  switch (kind) {
    case DocKind::category: return "category";
    case DocKind::presheaf: return "presheaf";
    case DocKind::nat_trans: return "natural transformation";
    case DocKind::topology: return "topology";
    case DocKind::fixture: return "fixture";
  }
  return "?";
}

FinCategory load_category(const Json& doc, const Fetch& fetch,
                          const std::string& base, const std::string& name) {
  std::string here = base;
  std::string cname = name;
  Json body = deref(doc, fetch, here, &cname);
  const std::string where = "category \"" + cname + "\"";
  check_keys(body, {"objects", "morphisms"}, {"compose"}, where);

  if (!body["objects"].is_array())
    throw ParseError(where + ": \"objects\" must be an array");
  std::vector<std::string> objects;
  std::set<std::string> seen;
  for (const auto& item : body["objects"]) {
    std::string id = get_id(item, where + " objects");
    if (!seen.insert(id).second)
      throw ParseError(where + ": duplicate object \"" + id + "\"");
    objects.push_back(id);
  }

  if (!body["morphisms"].is_array())
    throw ParseError(where + ": \"morphisms\" must be an array");
  std::vector<MorphismDecl> decls;
  std::set<std::string> mor_ids;
  for (const auto& item : body["morphisms"]) {
    check_keys(item, {"id", "dom", "cod"}, {}, where + " morphism");
    MorphismDecl d;
    d.id = get_id(item["id"], where + " morphism id");
    d.dom = get_string(item["dom"], where + " morphism dom");
    d.cod = get_string(item["cod"], where + " morphism cod");
    if (!seen.count(d.dom) || !seen.count(d.cod))
      throw ParseError(where + ": morphism \"" + d.id +
                       "\" refers to an undeclared object");
    for (const auto& x : objects)
      if (d.id == "id_" + x)
        throw ParseError(where + ": morphism id \"" + d.id +
                         "\" is reserved for an identity");
    if (!mor_ids.insert(d.id).second)
      throw ParseError(where + ": duplicate morphism \"" + d.id + "\"");
    decls.push_back(d);
  }

  std::map<std::pair<std::string, std::string>, std::string> composites;
  if (body.contains("compose")) {
    if (!body["compose"].is_array())
      throw ParseError(where + ": \"compose\" must be an array");
    for (const auto& item : body["compose"]) {
      check_keys(item, {"g", "f", "gf"}, {}, where + " compose entry");
      std::string g = get_string(item["g"], where + " compose g");
      std::string f = get_string(item["f"], where + " compose f");
      std::string gf = get_string(item["gf"], where + " compose gf");
      if (!mor_ids.count(g) || !mor_ids.count(f))
        throw ParseError(where + ": compose entry (" + g + ", " + f +
                         ") must pair declared non-identity morphisms");
      bool gf_known = mor_ids.count(gf) > 0;
      for (const auto& x : objects)
        if (gf == "id_" + x) gf_known = true;
      if (!gf_known)
        throw ParseError(where + ": compose value \"" + gf +
                         "\" is not a morphism");
      auto key = std::make_pair(g, f);
      if (composites.count(key))
        throw ParseError(where + ": duplicate compose entry (" + g + ", " +
                         f + ")");
      composites.emplace(key, gf);
    }
  }

  try {
    return make_category(cname, objects, decls, composites);
  } catch (const std::exception& e) {
    throw ParseError(where + ": " + e.what());
  }
}

Presheaf load_presheaf(const Json& doc, const Fetch& fetch,
                       const std::string& base, const std::string& name) {
  std::string here = base;
  std::string pname = name;
  Json body = deref(doc, fetch, here, &pname);
  const std::string where = "presheaf \"" + pname + "\"";
  check_keys(body, {"category", "sets"}, {"action"}, where);

  FinCategory cat = load_category(body["category"], fetch, here, pname + ".base");

  require_object(body["sets"], where + " sets");
  std::map<std::string, std::vector<std::string>> sets;
  for (const auto& item : body["sets"].items()) {
    const std::string& obj = item.key();
    if (!cat.has_object(obj))
      throw ParseError(where + ": sets entry for unknown object \"" + obj + "\"");
    if (!item.value().is_array())
      throw ParseError(where + ": sets[\"" + obj + "\"] must be an array");
    std::set<std::string> seen;
    for (const auto& elem : item.value()) {
      std::string e = get_id(elem, where + " element");
      if (!seen.insert(e).second)
        throw ParseError(where + ": duplicate element \"" + e + "\" at \"" +
                         obj + "\"");
      sets[obj].push_back(e);
    }
  }

  std::map<std::string, std::map<std::string, std::string>> action;
  if (body.contains("action")) {
    require_object(body["action"], where + " action");
    for (const auto& item : body["action"].items()) {
      const std::string& u = item.key();
      if (!cat.has_morphism(u))
        throw ParseError(where + ": action entry for unknown morphism \"" + u +
                         "\"");
      if (cat.is_identity(u))
        throw ParseError(where + ": identity action \"" + u +
                         "\" must stay implicit");
      require_object(item.value(), where + " action[\"" + u + "\"]");
      for (const auto& cell : item.value().items()) {
        action[u][cell.key()] =
            get_string(cell.value(), where + " action value");
      }
    }
  }

  try {
    return make_presheaf(cat, pname, sets, action);
  } catch (const std::exception& e) {
    throw ParseError(where + ": " + e.what());
  }
}

NatTrans load_nat_trans(const Json& doc, const Fetch& fetch,
                        const std::string& base) {
  std::string here = base;
  std::string tname = "map";
  Json body = deref(doc, fetch, here, &tname);
  const std::string where = "natural transformation \"" + tname + "\"";
  check_keys(body, {"source", "target", "components"}, {}, where);

  NatTrans t;
  t.source = load_presheaf(body["source"], fetch, here, tname + ".source");
  t.target = load_presheaf(body["target"], fetch, here, tname + ".target");

  require_object(body["components"], where + " components");
  for (const auto& item : body["components"].items()) {
    const std::string& obj = item.key();
    if (!t.source.base.has_object(obj))
      throw ParseError(where + ": components entry for unknown object \"" +
                       obj + "\"");
    require_object(item.value(), where + " components[\"" + obj + "\"]");
    for (const auto& cell : item.value().items()) {
      t.components[obj][cell.key()] =
          get_string(cell.value(), where + " component value");
    }
  }
  for (const auto& obj : t.source.base.objects)
    t.components.try_emplace(obj);
  return t;
}

GrothTopology load_topology(const Json& doc, const Fetch& fetch,
                            const std::string& base, const std::string& name,
                            std::size_t cap) {
  std::string here = base;
  std::string tname = name;
  Json body = deref(doc, fetch, here, &tname);
  const std::string where = "topology \"" + tname + "\"";
  check_keys(body, {"category", "covers"}, {"saturate"}, where);

  FinCategory cat = load_category(body["category"], fetch, here, tname + ".base");

  bool saturate = false;
  if (body.contains("saturate")) {
    if (!body["saturate"].is_boolean())
      throw ParseError(where + ": \"saturate\" must be a boolean");
    saturate = body["saturate"].get<bool>();
  }

  require_object(body["covers"], where + " covers");
  std::map<std::string, std::vector<Sieve>> covers;
  for (const auto& item : body["covers"].items()) {
    const std::string& obj = item.key();
    if (!cat.has_object(obj))
      throw ParseError(where + ": covers entry for unknown object \"" + obj +
                       "\"");
    if (!item.value().is_array())
      throw ParseError(where + ": covers[\"" + obj + "\"] must be an array");
    for (const auto& gens : item.value()) {
      if (!gens.is_array())
        throw ParseError(where + ": each cover of \"" + obj +
                         "\" must be an array of morphism ids");
      std::vector<std::string> generators;
      for (const auto& g : gens) {
        std::string id = get_string(g, where + " cover generator");
        if (!cat.has_morphism(id))
          throw ParseError(where + ": unknown morphism \"" + id +
                           "\" in a cover of \"" + obj + "\"");
        if (cat.mor(id).cod != obj)
          throw ParseError(where + ": generator \"" + id +
                           "\" does not land in \"" + obj + "\"");
        generators.push_back(id);
      }
      try {
        covers[obj].push_back(sieve_generated_by(cat, obj, generators));
      } catch (const std::exception& e) {
        throw ParseError(where + ": " + e.what());
      }
    }
  }

  if (saturate) return saturate_topology(cat, tname, covers, cap);

  GrothTopology t;
  t.base = cat;
  t.name = tname;
  t.covers = std::move(covers);
  for (const auto& obj : cat.objects) t.covers.try_emplace(obj);
  return t;
}

namespace {

void must_pass(const ValidationReport& report, const std::string& what) {
  if (!report.ok())
    throw ParseError(what + " failed validation: " + report.summary());
}

}  // namespace

Fixture load_fixture(const Json& doc, const Fetch& fetch,
                     const std::string& base, std::size_t cap) {
  std::string here = base;
  Json body = deref(doc, fetch, here, nullptr);
  const std::string where = "fixture";
  check_keys(body, {"name", "category"},
             {"topology", "presheaves", "arrows", "expected"}, where);

  Fixture fx;
  fx.name = get_string(body["name"], where + " name");
  fx.category = load_category(body["category"], fetch, here, fx.name + ".base");
  must_pass(validate_category(fx.category),
            "fixture \"" + fx.name + "\": category");

  if (body.contains("topology")) {
    fx.topology = load_topology(body["topology"], fetch, here,
                                fx.name + ".topology", cap);
    fx.has_topology = true;
    if (!same_category(fx.topology.base, fx.category))
      throw ParseError("fixture \"" + fx.name +
                       "\": topology lives on a different category");
    must_pass(validate_topology(fx.topology, cap),
              "fixture \"" + fx.name + "\": topology");
  }

  if (body.contains("presheaves")) {
    require_object(body["presheaves"], where + " presheaves");
    for (const auto& item : body["presheaves"].items()) {
      const std::string& key = item.key();
      if (!id_valid(key))
        throw ParseError("fixture \"" + fx.name + "\": invalid presheaf name \"" +
                         key + "\"");
      Presheaf p = load_presheaf(item.value(), fetch, here, key);
      if (!same_category(p.base, fx.category))
        throw ParseError("fixture \"" + fx.name + "\": presheaf \"" + key +
                         "\" lives on a different category");
      must_pass(validate_presheaf(p),
                "fixture \"" + fx.name + "\": presheaf \"" + key + "\"");
      fx.presheaves.emplace(key, std::move(p));
    }
  }

  if (body.contains("arrows")) {
    require_object(body["arrows"], where + " arrows");
    for (const auto& item : body["arrows"].items()) {
      const std::string& key = item.key();
      if (!id_valid(key))
        throw ParseError("fixture \"" + fx.name + "\": invalid arrow name \"" +
                         key + "\"");
      NatTrans t = load_nat_trans(item.value(), fetch, here);
      if (!same_category(t.source.base, fx.category))
        throw ParseError("fixture \"" + fx.name + "\": arrow \"" + key +
                         "\" lives on a different category");
      must_pass(validate_nat_trans(t),
                "fixture \"" + fx.name + "\": arrow \"" + key + "\"");
      fx.arrows.emplace(key, std::move(t));
    }
  }

  if (body.contains("expected")) {
    if (!body["expected"].is_array())
      throw ParseError("fixture \"" + fx.name + "\": \"expected\" must be an array");
    for (const auto& item : body["expected"]) {
      check_keys(item, {"query", "value", "provenance"}, {},
                 where + " expected entry");
      ExpectedValue ev;
      ev.query = get_string(item["query"], where + " expected query");
      if (!item["value"].is_number_integer())
        throw ParseError("fixture \"" + fx.name +
                         "\": expected value for \"" + ev.query +
                         "\" must be an integer");
      ev.value = item["value"].get<std::int64_t>();
      ev.provenance = get_string(item["provenance"], where + " expected provenance");
      fx.expected.push_back(std::move(ev));
    }
  }

  return fx;
}

Json store_category(const FinCategory& c) {
  Json doc;
  doc["objects"] = c.objects;
  Json mors = Json::array();
  for (const auto& m : c.morphisms) {
    if (c.is_identity(m.id)) continue;
    mors.push_back({{"id", m.id}, {"dom", m.dom}, {"cod", m.cod}});
  }
  doc["morphisms"] = std::move(mors);
  Json comp = Json::array();
  for (const auto& entry : c.compose_table) {
    const auto& [g, f] = entry.first;
    if (c.is_identity(g) || c.is_identity(f)) continue;
    comp.push_back({{"g", g}, {"f", f}, {"gf", entry.second}});
  }
  doc["compose"] = std::move(comp);
  return doc;
}

Json store_presheaf(const Presheaf& p) {
  Json doc;
  doc["category"] = store_category(p.base);
  Json sets = Json::object();
  for (const auto& obj : p.base.objects) sets[obj] = p.at(obj);
  doc["sets"] = std::move(sets);
  Json action = Json::object();
  for (const auto& m : p.base.morphisms) {
    if (p.base.is_identity(m.id)) continue;
    auto it = p.action.find(m.id);
    if (it == p.action.end() || it->second.empty()) continue;
    Json cells = Json::object();
    for (const auto& cell : it->second) cells[cell.first] = cell.second;
    action[m.id] = std::move(cells);
  }
  doc["action"] = std::move(action);
  return doc;
}

Json store_nat_trans(const NatTrans& t) {
  Json doc;
  doc["source"] = store_presheaf(t.source);
  doc["target"] = store_presheaf(t.target);
  Json comps = Json::object();
  for (const auto& entry : t.components) {
    Json cells = Json::object();
    for (const auto& cell : entry.second) cells[cell.first] = cell.second;
    comps[entry.first] = std::move(cells);
  }
  doc["components"] = std::move(comps);
  return doc;
}

Json store_topology(const GrothTopology& t) {
  Json doc;
  doc["category"] = store_category(t.base);
  Json covers = Json::object();
  for (const auto& obj : t.base.objects) {
    Json list = Json::array();
    auto it = t.covers.find(obj);
    if (it != t.covers.end()) {
      for (const auto& s : it->second) {
        std::vector<std::string> arrows(s.arrows.begin(), s.arrows.end());
        list.push_back(arrows);
      }
    }
    covers[obj] = std::move(list);
  }
  doc["covers"] = std::move(covers);
  doc["saturate"] = false;
  return doc;
}

}  // namespace fintop
