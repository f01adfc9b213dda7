// Command line front end: run verification suites keyed to the numbered
// claims, generate seeded instances, and replay failure witnesses.
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "catwork/suites.hpp"

using namespace catwork;

namespace {

int cmd_verify(const SuiteSpec& spec, const std::string& json_path, bool with_timing) {
  auto reports = run_suite(spec);
  int failures = 0;
  json out = json::array();
  for (const auto& r : reports) {
    if (!r.pass) ++failures;
    out.push_back(r.to_json(with_timing));
    std::cout << (r.pass ? "pass" : "FAIL") << "  " << r.suite << "  [" << r.citation << "]  case "
              << hash_hex(r.instance_hash) << "\n";
    if (!r.pass) std::cout << "      witness: " << r.witness.dump() << "\n";
  }
  std::cout << reports.size() - failures << "/" << reports.size() << " cases passed\n";
  if (!json_path.empty()) {
    std::ofstream f(json_path);
    f << out.dump(2) << "\n";
  }
  return failures;
}

std::vector<std::string> split_probes(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite category theory workbench"};
  app.require_subcommand(1);

  SuiteSpec spec;
  std::string probes_csv, json_path;
  bool no_timing = false;
  auto* verify = app.add_subcommand("verify", "run a registered suite");
  verify->add_option("suite", spec.id, "suite id (see `list`)")->required();
  verify->add_option("--seed", spec.seed, "deterministic seed");
  verify->add_option("--reps", spec.reps, "number of cases (0 = suite default)");
  verify->add_option("--max-objects", spec.max_objects, "object bound for generated categories");
  verify->add_option("--dim-bound", spec.dim_bound, "dimension bound for simplicial instances");
  verify->add_option("--probes", probes_csv, "comma separated probe names: pt,1,2,1x1,apex");
  verify->add_option("--json", json_path, "write the report here");
  verify->add_flag("--no-timing", no_timing, "omit timing fields for byte-stable output");

  std::string gen_kind;
  std::uint64_t gen_seed = 7;
  int gen_max_objects = 3;
  auto* generate = app.add_subcommand("generate", "emit a seeded instance as JSON");
  generate->add_option("kind", gen_kind,
                       "fincat | poset | functor | diagram | presheaf | fibration | sset | twocat")
      ->required();
  generate->add_option("--seed", gen_seed, "deterministic seed");
  generate->add_option("--max-objects", gen_max_objects, "object bound");

  std::string witness_path;
  auto* replay = app.add_subcommand("replay", "re-run a single case from a witness file");
  replay->add_option("witness", witness_path, "witness JSON file")->required();

  app.add_subcommand("list", "list the registered suites");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      spec.probes = split_probes(probes_csv);
      return cmd_verify(spec, json_path, !no_timing);
    }
    if (generate->parsed()) {
      GenBounds b;
      b.max_objects = gen_max_objects;
      std::cout << generate_instance(gen_kind, gen_seed, b).dump(2) << "\n";
      return 0;
    }
    if (replay->parsed()) {
      std::ifstream f(witness_path);
      if (!f) {
        std::cerr << "cannot open " << witness_path << "\n";
        return 2;
      }
      json w = json::parse(f, nullptr, true, true);
      auto r = replay_case(w);
      std::cout << r.to_json().dump(2) << "\n";
      return r.pass ? 0 : 1;
    }
    // list
    for (const auto& s : list_suites())
      std::cout << s.at("id").get<std::string>() << "  [" << s.at("paper_ref").get<std::string>()
                << "]  " << s.at("claim").get<std::string>() << "\n";
    return 0;
  } catch (const CatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (!e.detail.is_null()) std::cerr << e.detail.dump(2) << "\n";
    return 2;
  }
}
