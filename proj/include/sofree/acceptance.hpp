#pragma once

// The acceptance suite: eleven criteria, each a list of expected-versus-actual
// checks with exact comparison. Shared by the test binary and `check examples`.

#include <string>
#include <vector>

#include <json.hpp>

namespace sofree::acceptance {

struct Check {
    std::string label;
    std::string expected;
    std::string actual;
    bool pass = false;
};

struct Criterion {
    int id = 0;
    std::string title;
    std::vector<Check> checks;
    std::string error;  // set when the criterion threw before finishing
    double seconds = 0;
    bool pass() const;
};

int criterion_count();
Criterion run_criterion(int id);

// "criterion 3 (bijections): PASS, 41 checks" plus ", 2.1 s" when timed
std::string summary_line(const Criterion& c, bool with_time = false);
nlohmann::json to_json(const Criterion& c);

}  // namespace sofree::acceptance
