#pragma once

#include <functional>
#include <string>
#include <vector>

namespace kisin::cli {

struct Check {
    std::string name;
    std::string expected;
    std::string actual;
    bool passed = false;
};

struct ScenarioReport {
    std::string name;
    std::vector<Check> checks;
    std::vector<std::string> notes;
    bool passed() const;
};

struct Scenario {
    std::string name;
    std::string description;
    std::function<ScenarioReport()> run;
};

const std::vector<Scenario>& scenario_registry();
const Scenario* find_scenario(const std::string& name);

}  // namespace kisin::cli
