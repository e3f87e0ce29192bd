// mathkg: command-line entry point.
//
// Exit codes: 0 success, 1 domain error (diagnostics, not found, failed
// records), 2 usage error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mathkg/chem.hpp"
#include "mathkg/formula_index.hpp"
#include "mathkg/importer.hpp"
#include "mathkg/macros.hpp"
#include "mathkg/mathml.hpp"
#include "mathkg/query.hpp"
#include "mathkg/registry.hpp"
#include "mathkg/store.hpp"
#include "mathkg/texvc.hpp"

namespace fs = std::filesystem;
using namespace mathkg;

namespace {

constexpr const char* kIndexFile = "formula_index.jsonl";

struct Config {
  std::string store = "mathkg-store";
  std::string format = "tsv";
  std::string macros_path;
  std::string registry_path;
};

// Domain failure with a message for standard error.
struct Failure {
  std::string message;
};

class Context {
 public:
  explicit Context(const Config& cfg) : cfg_(cfg) {
    if (!cfg.registry_path.empty()) registry_.emplace(CommandRegistry::load(cfg.registry_path));
    if (!cfg.macros_path.empty()) macros_.emplace(MacroTable::load(cfg.macros_path, registry()));
  }

  bool json() const { return cfg_.format == "json"; }
  const CommandRegistry& registry() const { return registry_ ? *registry_ : default_registry(); }
  const MacroTable& macros() const { return macros_ ? *macros_ : default_macro_table(); }
  ParseOptions parse_options() const { return {&registry(), &macros()}; }

  fs::path store_dir() const { return cfg_.store; }
  bool store_exists() const { return fs::exists(store_dir() / "entities.jsonl"); }

  KnowledgeStore& store() {
    if (!store_) {
      store_ = std::make_unique<KnowledgeStore>();
      if (store_exists()) import_store(*store_, store_dir());
    }
    return *store_;
  }

  FormulaIndex index() {
    fs::path f = store_dir() / kIndexFile;
    if (fs::exists(f)) return FormulaIndex::load(f);
    return FormulaIndex::rebuild(store());
  }

  void save() {
    export_store(store(), store_dir());
    FormulaIndex::rebuild(store()).save(store_dir() / kIndexFile);
  }

 private:
  Config cfg_;
  std::optional<CommandRegistry> registry_;
  std::optional<MacroTable> macros_;
  std::unique_ptr<KnowledgeStore> store_;
};

std::string score_text(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", s);
  return buf;
}

[[noreturn]] void fail_with(const std::vector<Diagnostic>& diags) {
  throw Failure{to_json(diags)};
}

MathNode parse_or_fail(Context& ctx, const std::string& texvc) {
  ParseResult r = parse_texvc(texvc, ctx.parse_options());
  if (!r.ok()) {
    std::vector<Diagnostic> all{r.error()};
    all.insert(all.end(), r.warnings().begin(), r.warnings().end());
    fail_with(all);
  }
  for (const auto& w : r.warnings()) std::cerr << to_json(w) << "\n";
  return r.tree();
}

int cmd_render(Context& ctx, const std::string& texvc, const std::string& display, bool links) {
  MathNode tree = parse_or_fail(ctx, texvc);
  EmitOptions opts;
  opts.display = display == "block" ? Display::block : Display::inline_;
  opts.macros = &ctx.macros();
  opts.registry = &ctx.registry();
  opts.tex_source = texvc;
  opts.resolve_links = links;
  if (links && ctx.store_exists()) opts.link_resolver = store_link_resolver(ctx.store());
  std::cout << emit_mathml(tree, opts) << "\n";
  return 0;
}

int cmd_validate(Context& ctx, const std::vector<std::string>& inputs, const std::string& file) {
  std::vector<std::string> formulas = inputs;
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw Failure{"cannot open " + file};
    for (std::string line; std::getline(in, line);) formulas.push_back(line);
  }
  if (formulas.empty()) throw CLI::ValidationError("validate", "no input formula");
  bool any_error = false;
  nlohmann::ordered_json all = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < formulas.size(); ++i) {
    auto diags = validate(formulas[i], ctx.parse_options());
    bool error = !diags.empty() && diags.front().severity == Severity::error;
    any_error |= error;
    if (ctx.json()) {
      all.push_back(nlohmann::ordered_json::parse(to_json(diags)));
    } else {
      std::cout << (i + 1) << "\t" << (error ? "error" : "ok");
      if (error) std::cout << "\t" << diags.front().byte_offset << "\t" << diags.front().message;
      std::cout << "\n";
    }
  }
  if (ctx.json()) std::cout << all.dump() << "\n";
  return any_error ? 1 : 0;
}

int cmd_chem(Context& ctx, const std::string& input, bool tree_only) {
  MathNode tree = [&] {
    try {
      return parse_ce(input);
    } catch (const ChemError& e) {
      Diagnostic d{Severity::error, e.offset(), e.length(), e.expected(), e.what()};
      fail_with({d});
    }
  }();
  if (tree_only) {
    std::cout << to_sexpr(tree) << "\n";
  } else {
    EmitOptions opts;
    opts.registry = &ctx.registry();
    opts.macros = &ctx.macros();
    opts.tex_source = "\\ce{" + input + "}";
    std::cout << emit_mathml(tree, opts) << "\n";
  }
  return 0;
}

int print_report(const ImportReport& r) {
  std::cout << r.to_json() << "\n";
  return r.errors.empty() ? 0 : 1;
}

int cmd_seed(Context& ctx, const std::string& dir) {
  Importer importer(ctx.store());
  ImportReport r = importer.seed(dir);
  ctx.save();
  return print_report(r);
}

int cmd_import(Context& ctx, const std::string& fixture, const std::string& id, int depth,
               const std::string& datasource) {
  Importer importer(ctx.store());
  if (!datasource.empty()) {
    auto parser = parser_for(datasource);
    if (!parser) throw Failure{"no parser for " + datasource};
    ImportReport r = importer.run_datasource(*parser, datasource);
    ctx.save();
    return print_report(r);
  }
  if (fixture.empty() || id.empty())
    throw CLI::ValidationError("import", "either --datasource or --fixture with --id is required");
  FixtureConnector connector{fs::path(fixture)};
  EntityId local = importer.import_entity(connector, id, depth);
  ctx.save();
  for (const auto& w : importer.warnings()) std::cerr << "warning: " << w << "\n";
  if (ctx.json()) {
    nlohmann::ordered_json j;
    j["local"] = local.str();
    j["warnings"] = importer.warnings();
    std::cout << j.dump() << "\n";
  } else {
    std::cout << local.str() << "\n";
  }
  return 0;
}

int cmd_query(Context& ctx, const std::string& text, const std::string& start,
              const std::string& property, const std::string& direction) {
  KnowledgeStore& store = ctx.store();
  if (!start.empty()) {
    if (property.empty()) throw CLI::ValidationError("query", "--transitive requires --property");
    EntityId s = resolve_entity_ref(store, start);
    EntityId p = resolve_entity_ref(store, property, EntityKind::property);
    auto ids = transitive(store, s, p, direction == "forward" ? Direction::forward : Direction::inverse);
    if (ctx.json()) {
      nlohmann::ordered_json j = nlohmann::ordered_json::array();
      for (auto id : ids) j.push_back(id.str());
      std::cout << j.dump() << "\n";
    } else {
      for (auto id : ids) std::cout << id.str() << "\n";
    }
    return 0;
  }
  if (text.empty()) throw CLI::ValidationError("query", "a pattern or --transitive is required");
  BindingSet rows = select(store, parse_patterns(store, text));
  std::cout << (ctx.json() ? rows.to_json() + "\n" : rows.to_tsv());
  return 0;
}

int cmd_search(Context& ctx, const std::string& texvc, const std::string& mode, int limit) {
  if (limit < 1) throw CLI::ValidationError("search", "--limit must be at least 1");
  FormulaIndex index = ctx.index();
  std::vector<SearchHit> hits;
  try {
    hits = index.search(texvc, mode == "exact" ? SearchMode::exact : SearchMode::subexpression,
                        static_cast<std::size_t>(limit));
  } catch (const ParseError& e) {
    fail_with({e.diagnostic()});
  }
  if (ctx.json()) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& h : hits) j.push_back({{"item", h.item.str()}, {"score", h.score}});
    std::cout << j.dump() << "\n";
  } else {
    for (const auto& h : hits) std::cout << h.item.str() << "\t" << score_text(h.score) << "\n";
  }
  return 0;
}

int cmd_homepage(Context& ctx, const std::string& ref, const std::string& out_dir) {
  KnowledgeStore& store = ctx.store();
  EntityId item = resolve_entity_ref(store, ref, EntityKind::item);
  HomepageOptions opts;
  opts.macros = &ctx.macros();
  HomepageDoc doc = formula_homepage(store, item, opts);
  fs::create_directories(out_dir);
  fs::path html = fs::path(out_dir) / (item.str() + ".html");
  fs::path json = fs::path(out_dir) / (item.str() + ".json");
  std::ofstream(html, std::ios::binary) << doc.to_html();
  std::ofstream(json, std::ios::binary) << doc.to_json();
  std::cout << html.string() << "\n" << json.string() << "\n";
  return 0;
}

int cmd_stats(Context& ctx) {
  std::size_t items = 0, properties = 0, index_entries = 0, mappings = 0;
  std::size_t statements = 0, triples = 0;
  if (ctx.store_exists()) {
    KnowledgeStore& store = ctx.store();
    for (const auto& e : store.snapshot()) (e->id.kind == EntityKind::item ? items : properties)++;
    statements = store.statement_count();
    triples = store.triple_count();
    mappings = store.mappings().size();
    index_entries = ctx.index().size();
  }
  std::vector<std::pair<std::string, std::size_t>> rows = {
      {"entities", items + properties}, {"items", items},     {"properties", properties},
      {"statements", statements},       {"triples", triples}, {"mappings", mappings},
      {"index_entries", index_entries},
  };
  if (ctx.json()) {
    nlohmann::ordered_json j;
    for (const auto& [k, v] : rows) j[k] = v;
    std::cout << j.dump() << "\n";
  } else {
    for (const auto& [k, v] : rows) std::cout << k << "\t" << v << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mathkg: texvc formulas, MathML, mhchem and a small math knowledge graph"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "INI/TOML file with default option values");

  Config cfg;
  if (const char* env = std::getenv("MATHKG_STORE")) cfg.store = env;
  app.add_option("--store", cfg.store, "Store directory (env MATHKG_STORE)");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"tsv", "json"}));
  app.add_option("--macros", cfg.macros_path, "Semantic macro table (TSV)")->check(CLI::ExistingFile);
  app.add_option("--registry", cfg.registry_path, "Command registry (TSV)")->check(CLI::ExistingFile);

  std::string texvc, display = "inline", file, dir, fixture, id, datasource, text, start, property,
                     direction = "inverse", mode = "subexpression", out_dir = ".";
  std::vector<std::string> inputs;
  bool links = false, tree_only = false;
  int depth = 1, limit = 10;

  auto* render = app.add_subcommand("render", "Render texvc as MathML");
  render->add_option("texvc", texvc, "Formula")->required();
  render->add_option("--display", display)->check(CLI::IsMember({"inline", "block"}));
  render->add_flag("--links", links, "Turn semantic macros into links");

  auto* validate_cmd = app.add_subcommand("validate", "Check texvc formulas");
  validate_cmd->add_option("texvc", inputs, "Formulas");
  validate_cmd->add_option("--file", file, "One formula per line")->check(CLI::ExistingFile);

  auto* chem = app.add_subcommand("chem", "Render mhchem notation");
  chem->add_option("input", texvc, "Body of \\ce{...}")->required();
  chem->add_flag("--tree", tree_only, "Print the parse tree instead of MathML");

  auto* seed = app.add_subcommand("seed", "Import every fixture file in a directory");
  seed->add_option("dir", dir)->required()->check(CLI::ExistingDirectory);

  auto* import = app.add_subcommand("import", "Import an entity or a datasource file");
  import->add_option("--fixture", fixture, "Wikidata-style JSON-lines fixture")->check(CLI::ExistingFile);
  import->add_option("--id", id, "Upstream ID to import");
  import->add_option("--depth", depth, "Import depth")->check(CLI::NonNegativeNumber);
  import->add_option("--datasource", datasource, "Datasource file")->check(CLI::ExistingFile);

  auto* query = app.add_subcommand("query", "Triple-pattern or transitive query");
  query->add_option("patterns", text, "e.g. \"?f <uses> <imaginary-unit>\"");
  query->add_option("--transitive", start, "Start entity for a transitive query");
  query->add_option("--property", property, "Property to follow");
  query->add_option("--direction", direction)->check(CLI::IsMember({"forward", "inverse"}));

  auto* search = app.add_subcommand("search", "Search the formula index");
  search->add_option("texvc", texvc)->required();
  search->add_option("--mode", mode)->check(CLI::IsMember({"exact", "subexpression"}));
  search->add_option("--limit", limit);

  auto* homepage = app.add_subcommand("homepage", "Write a formula homepage (HTML + JSON)");
  homepage->add_option("item", id, "Q-ID or <label>")->required();
  homepage->add_option("--out", out_dir, "Output directory");

  auto* stats = app.add_subcommand("stats", "Print store and index counts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    Context ctx(cfg);
    if (*render) return cmd_render(ctx, texvc, display, links);
    if (*validate_cmd) return cmd_validate(ctx, inputs, file);
    if (*chem) return cmd_chem(ctx, texvc, tree_only);
    if (*seed) return cmd_seed(ctx, dir);
    if (*import) return cmd_import(ctx, fixture, id, depth, datasource);
    if (*query) return cmd_query(ctx, text, start, property, direction);
    if (*search) return cmd_search(ctx, texvc, mode, limit);
    if (*homepage) return cmd_homepage(ctx, id, out_dir);
    if (*stats) return cmd_stats(ctx);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Failure& f) {
    std::cerr << f.message << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
