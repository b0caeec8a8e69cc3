#ifndef COFIB_SCENARIO_HPP_
#define COFIB_SCENARIO_HPP_

#include <string>
#include <vector>

#include "cofib/json_io.hpp"

namespace cofib {

  struct ScenarioCheck {
    std::string name;
    bool        pass = false;
    std::string expected;
    std::string actual;
  };

  struct ScenarioReport {
    std::string                name;
    std::string                description;
    std::vector<ScenarioCheck> checks;
    io::Json                   result;
    bool                       unknown = false;  // a budget ran out

    bool pass() const noexcept {
      if (unknown) {
        return false;
      }
      for (auto const& c : checks) {
        if (!c.pass) {
          return false;
        }
      }
      return true;
    }
  };

  struct ScenarioInfo {
    std::string name;
    std::string description;
  };
  std::vector<ScenarioInfo> const& scenarios();

  // Throws InputError for an unknown name.
  ScenarioReport run_scenario(std::string const& name, RewriteBound const& b);

}  // namespace cofib

#endif  // COFIB_SCENARIO_HPP_
