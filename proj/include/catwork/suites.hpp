#ifndef CATWORK_SUITES_HPP
#define CATWORK_SUITES_HPP

#include <functional>
#include <map>

#include "catwork/gen.hpp"

namespace catwork {

struct SuiteSpec {
  std::string id;
  std::uint64_t seed = 7;
  int reps = 0;         // 0: use the suite default
  int max_objects = 0;  // 0: use the generator default
  int dim_bound = 0;
  std::vector<std::string> probes;  // pt, 1, 2, 1x1, apex
};

struct VerdictReport {
  std::string suite;
  std::string citation;
  std::uint64_t instance_hash = 0;
  bool pass = true;
  double ms = 0;
  json witness;
  json instance;
  json to_json(bool with_timing = true) const;
};

struct Suite {
  std::string id;
  std::string citation;  // numbered claim this suite checks
  std::string claim;     // one-line statement of the checked identity
  int default_reps = 10;
  std::function<json(const SuiteSpec&, int)> generate_case;
  std::function<VerdictReport(const SuiteSpec&, const json&)> run_case;
};

const std::map<std::string, Suite>& suite_catalog();
std::vector<VerdictReport> run_suite(const SuiteSpec& spec);
VerdictReport replay_case(const json& witness);
json generate_instance(const std::string& kind, std::uint64_t seed, const GenBounds& bounds);
json list_suites();

// probe sets used by the universal-property checks
std::vector<CatPtr> probe_set(const std::vector<std::string>& names, const CatPtr& apex);

}  // namespace catwork

#endif
