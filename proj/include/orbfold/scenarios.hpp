#ifndef ORBFOLD_SCENARIOS_HPP
#define ORBFOLD_SCENARIOS_HPP

#include <string>
#include <vector>

// Named scripted pipelines reproducing the worked examples; each returns a
// list of per-assertion pass/fail lines.

namespace orbfold {

struct ScenarioReport {
  std::string name;
  std::vector<std::pair<std::string, bool>> checks;
  bool all_passed() const {
    for (const auto& [what, ok] : checks)
      if (!ok) return false;
    return true;
  }
};

std::vector<std::string> scenario_names();
// seed drives any randomized harness inside a scenario
ScenarioReport run_scenario(const std::string& name, unsigned long seed);

}  // namespace orbfold

#endif
