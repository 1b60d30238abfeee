// hpdcalc: check .hpd files, run the built-in catalog and property suites.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "hpd/catalog.hpp"
#include "hpd/dsl.hpp"
#include "hpd/prop.hpp"
#include "hpd/report.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 4;

struct IoError {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError{"cannot read " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError{"cannot write " + path};
  out << text;
  if (!out) throw IoError{"cannot write " + path};
}

// Text report on stdout; JSON to `json_path` ("-" for stdout only).
int emit(const hpd::Report& report, const std::string& json_path) {
  if (json_path == "-") {
    std::cout << hpd::render_json(report);
  } else {
    std::cout << hpd::render_text(report);
    if (!json_path.empty()) write_file(json_path, hpd::render_json(report));
  }
  return hpd::exit_code(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Additive-invariant checks for Lefschetz categories and HPD"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(hpd::kToolVersion));

  hpd::EngineOptions engine;
  auto add_mutation = [&](CLI::App* sub) {
    sub->add_flag("--mutate-jprime-bound", engine.mutate_jprime_bound,
                  "Use the wrong upper bound N-2 in J'_i (negative control)");
  };

  // check
  auto* check = app.add_subcommand("check", "Run the checks of an .hpd file");
  std::string check_file, check_json;
  bool allow_nonmoderate = false;
  check->add_option("file", check_file, ".hpd input")->required();
  check->add_option("--json", check_json,
                    "Also write the JSON report to PATH ('-' for stdout)");
  check->add_flag("--allow-nonmoderate", allow_nonmoderate,
                  "Accept profiles of length >= N");
  add_mutation(check);

  // canon
  auto* canon = app.add_subcommand("canon", "Print the canonical form");
  std::string canon_file;
  canon->add_option("file", canon_file, ".hpd input")->required();

  // catalog
  auto* catalog = app.add_subcommand("catalog", "Run built-in catalog cases");
  std::string catalog_name, goldens_dir, catalog_json;
  bool catalog_list = false;
  catalog->add_option("name", catalog_name, "Single case to run");
  catalog->add_option("--json", catalog_json,
                      "Also write the JSON report to PATH ('-' for stdout)");
  catalog->add_flag("--list", catalog_list, "List case names");
  catalog->add_option("--write-goldens", goldens_dir,
                      "Write <case>.golden files into DIR");
  add_mutation(catalog);

  // prop
  auto* prop = app.add_subcommand("prop", "Run randomized property suites");
  hpd::PropConfig config;
  std::string prop_json;
  prop->add_option("--seed", config.seed, "RNG seed");
  prop->add_option("--cases", config.cases, "Cases per property");
  prop->add_option("--max-length", config.max_length, "Largest m (<= 6)");
  prop->add_option("--max-rank-v", config.max_rank, "Largest N (<= 9)");
  prop->add_option("--max-symbols", config.max_symbols,
                   "Symbols per primitive (<= 3)");
  prop->add_option("--only", config.only, "Property-name prefixes");
  prop->add_option("--json", prop_json,
                   "Also write the JSON report to PATH ('-' for stdout)");
  add_mutation(prop);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  std::string diagnostic_path = "hpdcalc";
  try {
    if (check->parsed()) {
      diagnostic_path = check_file;
      const std::string source = read_file(check_file);
      hpd::ValidateOptions vopts;
      vopts.allow_nonmoderate = allow_nonmoderate;
      const hpd::Workspace ws = hpd::load_workspace(source, vopts);
      return emit(hpd::run_workspace(ws, source, engine), check_json);
    }
    if (canon->parsed()) {
      diagnostic_path = canon_file;
      std::cout << hpd::print_canonical(
          hpd::load_workspace(read_file(canon_file)));
      return 0;
    }
    if (catalog->parsed()) {
      if (catalog_list) {
        for (const auto& c : hpd::catalog_cases()) std::cout << c.name << "\n";
        return 0;
      }
      if (!goldens_dir.empty()) {
        for (const auto& c : hpd::catalog_cases()) {
          if (!catalog_name.empty() && c.name != catalog_name) continue;
          const auto ws = hpd::load_workspace(c.source);
          write_file(goldens_dir + "/" + c.name + ".golden",
                     hpd::render_golden(c, hpd::catalog_probes(c, ws, engine)));
        }
        return 0;
      }
      std::optional<std::string> name;
      if (!catalog_name.empty()) name = catalog_name;
      return emit(hpd::run_catalog(name, engine), catalog_json);
    }
    if (prop->parsed()) {
      config.engine = engine;
      return emit(hpd::run_prop_report(config), prop_json);
    }
  } catch (const IoError& e) {
    std::cerr << "hpdcalc: " << e.message << "\n";
    return kExitIo;
  } catch (const hpd::HpdError& e) {
    std::cerr << diagnostic_path << (e.span() ? ":" : ": ") << e.diagnostic()
              << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
