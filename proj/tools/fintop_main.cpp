#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fintop/errors.hpp"
#include "fintop/fixtures.hpp"
#include "fintop/harness.hpp"

using namespace fintop;

namespace {

constexpr int kPass = 0;
constexpr int kMathFailure = 1;
constexpr int kInputError = 2;
constexpr int kResourceCap = 3;

void print_violations(const ValidationReport& report) {
  for (const auto& v : report.violations) {
    std::cout << "violation " << v.law << ":";
    for (const auto& w : v.witness) std::cout << " " << w;
    std::cout << "\n";
  }
}

std::string sizes_line(const Presheaf& p) {
  std::string out;
  for (const auto& obj : p.base.objects)
    out += " " + obj + "=" + std::to_string(p.at(obj).size());
  return out;
}

int validate_file(const std::string& path, std::size_t cap) {
  Json doc = parse_json(read_text_file(path), path);
  DocKind kind = classify_document(doc);
  std::string base;  // refs inside `doc` resolve relative to its directory
  auto fetch = file_fetch();
  auto dir_and_self = fetch("", path);

  std::vector<ValidationReport> reports;
  std::string summary;
  switch (kind) {
    case DocKind::category: {
      FinCategory c = load_category(doc, fetch, dir_and_self.first, "input");
      reports.push_back(validate_category(c));
      summary = "category: objects=" + std::to_string(c.objects.size()) +
                " morphisms=" + std::to_string(c.morphisms.size());
      break;
    }
    case DocKind::presheaf: {
      Presheaf p = load_presheaf(doc, fetch, dir_and_self.first, "input");
      reports.push_back(validate_category(p.base));
      reports.push_back(validate_presheaf(p));
      summary = "presheaf: elements=" + std::to_string(p.total_size());
      break;
    }
    case DocKind::nat_trans: {
      NatTrans t = load_nat_trans(doc, fetch, dir_and_self.first);
      reports.push_back(validate_category(t.source.base));
      reports.push_back(validate_presheaf(t.source));
      reports.push_back(validate_presheaf(t.target));
      reports.push_back(validate_nat_trans(t));
      summary = "natural transformation: components over " +
                std::to_string(t.source.base.objects.size()) + " objects";
      break;
    }
    case DocKind::topology: {
      GrothTopology t =
          load_topology(doc, fetch, dir_and_self.first, "input", cap);
      reports.push_back(validate_category(t.base));
      reports.push_back(validate_topology(t, cap));
      std::size_t covers = 0;
      for (const auto& entry : t.covers) covers += entry.second.size();
      summary = "topology: covers=" + std::to_string(covers);
      break;
    }
    case DocKind::fixture: {
      Fixture fx = load_fixture(doc, fetch, dir_and_self.first, cap);
      summary = "fixture \"" + fx.name +
                "\": presheaves=" + std::to_string(fx.presheaves.size()) +
                " arrows=" + std::to_string(fx.arrows.size()) +
                " expected=" + std::to_string(fx.expected.size());
      break;
    }
  }

  bool ok = true;
  for (const auto& r : reports) {
    print_violations(r);
    if (!r.ok()) ok = false;
  }
  std::cout << summary << (ok ? " pass" : " FAIL") << "\n";
  return ok ? kPass : kMathFailure;
}

NatTrans load_arrow_file(const std::string& path, std::size_t cap) {
  Json doc = parse_json(read_text_file(path), path);
  if (classify_document(doc) != DocKind::nat_trans)
    throw ParseError(path + ": expected a natural-transformation document");
  auto fetch = file_fetch();
  auto dir_and_self = fetch("", path);
  NatTrans t = load_nat_trans(doc, fetch, dir_and_self.first);
  ValidationReport r = validate_nat_trans(t);
  if (!r.ok())
    throw ParseError(path + ": not a natural transformation: " + r.summary());
  (void)cap;
  return t;
}

int compute_dp(const std::string& fpath, const std::string& hpath,
               const std::string& method, const std::string& topo_path,
               const std::string& out_path, std::size_t cap) {
  NatTrans f = load_arrow_file(fpath, cap);
  NatTrans h = load_arrow_file(hpath, cap);
  if (!same_category(f.source.base, h.source.base))
    throw ParseError("the two arrows live on different base categories");
  if (!presheaf_equal(h.target, f.source))
    throw ParseError("h must land in the source of f");

  SliceObject product;
  if (method == "elementary") {
    ElementaryDP ed = dependent_product_elementary(f, h, cap);
    product = {ed.carrier, ed.structural};
  } else if (method == "kan") {
    KanDP kd = dependent_product_kan(f, h);
    product = {kd.total, kd.structural};
  } else {  // sheaf
    if (topo_path.empty())
      throw ParseError("--method sheaf needs --topology");
    Json doc = parse_json(read_text_file(topo_path), topo_path);
    auto fetch = file_fetch();
    auto dir_and_self = fetch("", topo_path);
    GrothTopology j =
        load_topology(doc, fetch, dir_and_self.first, "topology", cap);
    if (!same_category(j.base, f.source.base))
      throw ParseError("the topology lives on a different base category");
    ValidationReport jr = validate_topology(j, cap);
    if (!jr.ok())
      throw ParseError(topo_path + ": not a topology: " + jr.summary());
    SheafDP sd = dependent_product_sheaf(f, h, j, SheafDpBackend::kan, cap);
    product = sd.total;
  }

  std::cout << "method=" << method << "\n";
  std::cout << "carrier" << sizes_line(product.total) << "\n";
  std::cout << "over" << sizes_line(product.structural.target) << "\n";
  if (!out_path.empty()) {
    write_text_file(out_path, canonical_dump(store_nat_trans(product.structural)));
    std::cout << "wrote " << out_path << "\n";
  }
  return kPass;
}

Fixture fixture_by_ref(const std::string& ref, std::size_t cap) {
  for (const auto& name : bundled_fixture_names())
    if (name == ref) return load_bundled_fixture(ref, cap);
  Json doc = parse_json(read_text_file(ref), ref);
  if (classify_document(doc) != DocKind::fixture)
    throw ParseError(ref + ": expected a fixture document");
  auto fetch = file_fetch();
  auto dir_and_self = fetch("", ref);
  return load_fixture(doc, fetch, dir_and_self.first, cap);
}

int run_verify(const std::string& which, const std::string& fixture_ref,
               bool all_methods, std::size_t cap) {
  std::vector<Fixture> targets;
  if (fixture_ref.empty()) {
    for (const auto& name : bundled_fixture_names())
      targets.push_back(load_bundled_fixture(name, cap));
  } else {
    targets.push_back(fixture_by_ref(fixture_ref, cap));
  }

  bool all_ok = true;
  for (const Fixture& fx : targets) {
    CheckRun run;
    if (which == "adjunction")
      run = run_adjunction_checks(fx, cap);
    else if (which == "equivalence")
      run = run_equivalence_checks(fx, all_methods, cap);
    else if (which == "lemma1")
      run = run_factorization_checks(fx, cap);
    else if (which == "forall")
      run = run_forall_checks(fx, cap);
    else
      run = run_sheaf_checks(fx, cap);
    for (const auto& line : run.lines) std::cout << line.text << "\n";
    if (!run.pass()) all_ok = false;
  }
  std::cout << (all_ok ? "verify: pass" : "verify: FAIL") << "\n";
  return all_ok ? kPass : kMathFailure;
}

int list_fixtures(std::size_t cap) {
  for (const auto& name : bundled_fixture_names()) {
    Fixture fx = load_bundled_fixture(name, cap);
    std::cout << name << ": objects=" << fx.category.objects.size()
              << " presheaves=" << fx.presheaves.size()
              << " arrows=" << fx.arrows.size()
              << " expected=" << fx.expected.size()
              << " topology=" << (fx.has_topology ? "yes" : "no") << "\n";
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dependent products of presheaves on finite categories"};
  app.require_subcommand(1);

  std::size_t cap = kDefaultSubCap;
  unsigned long long seed = 0;
  app.add_option("--cap", cap,
                 "Enumeration guard: abort when a subobject or sieve scan "
                 "would exceed this many entries")
      ->capture_default_str();
  app.add_option("--seed", seed,
                 "Reserved for sampled modes; every default check is "
                 "exhaustive, so this has no effect")
      ->capture_default_str();

  std::string validate_path;
  auto* validate_cmd =
      app.add_subcommand("validate", "Check one document against its laws");
  validate_cmd->add_option("file", validate_path, "JSON document")->required();

  auto* compute_cmd = app.add_subcommand("compute", "Build an object");
  compute_cmd->require_subcommand(1);
  std::string fpath, hpath, method = "kan", topo_path, out_path;
  auto* dp_cmd = compute_cmd->add_subcommand(
      "dp", "Dependent product of h along f, as a map into f's target");
  dp_cmd->set_help_flag("--help", "Print this help message and exit");
  dp_cmd->add_option("--f", fpath, "arrow f : P -> Q")->required();
  dp_cmd->add_option("--h", hpath, "arrow h : H -> P")->required();
  dp_cmd->add_option("--method", method, "elementary | kan | sheaf")
      ->check(CLI::IsMember({"elementary", "kan", "sheaf"}))
      ->capture_default_str();
  dp_cmd->add_option("--topology", topo_path,
                     "coverage document (required for --method sheaf)");
  dp_cmd->add_option("--out", out_path,
                     "write the product's structural map as canonical JSON");

  std::string which, fixture_ref;
  bool all_methods = false;
  auto* verify_cmd =
      app.add_subcommand("verify", "Run an oracle family over fixtures");
  verify_cmd
      ->add_option("which", which,
                   "adjunction | equivalence | lemma1 | forall | sheaf-remark")
      ->required()
      ->check(CLI::IsMember(
          {"adjunction", "equivalence", "lemma1", "forall", "sheaf-remark"}));
  verify_cmd->add_option("--fixture", fixture_ref,
                         "bundled fixture name or path to a fixture document "
                         "(default: every bundled fixture)");
  verify_cmd->add_flag("--all-methods", all_methods,
                       "equivalence: include the coverage-aware method");

  auto* fixtures_cmd = app.add_subcommand("fixtures", "Bundled fixtures");
  fixtures_cmd->require_subcommand(1);
  auto* list_cmd = fixtures_cmd->add_subcommand("list", "List the bundle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kInputError;
  }

  try {
    if (validate_cmd->parsed()) return validate_file(validate_path, cap);
    if (dp_cmd->parsed())
      return compute_dp(fpath, hpath, method, topo_path, out_path, cap);
    if (verify_cmd->parsed())
      return run_verify(which, fixture_ref, all_methods, cap);
    if (list_cmd->parsed()) return list_fixtures(cap);
    return kInputError;
  } catch (const ResourceCapError& e) {
    std::cerr << "resource cap exceeded: " << e.what() << "\n";
    return kResourceCap;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const ShapeError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const PreconditionError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::logic_error& e) {
    std::cerr << "internal check failed: " << e.what() << "\n";
    return kMathFailure;
  }
}
