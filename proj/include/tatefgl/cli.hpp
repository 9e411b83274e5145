#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tatefgl/json_io.hpp"

namespace tatefgl {

enum ExitCode { kExitOk = 0, kExitError = 1, kExitFound = 2 };

struct RunConfig {
    std::string command;
    int prime = 3;
    std::optional<int> n = 5;  // nullopt: infinity
    std::string orientation = "todd-p-typical";
    std::string ring;          // empty: command default
    std::optional<int> x_bound;
    std::optional<int> t_bound;
    std::string output = "text";
    int d = 2;
    int order = 6;
    int k_max = 2;
    std::vector<int> weights;
    std::optional<int> coefficient;
    std::string input;         // fgl: law to import
    std::string path;          // golden: output file or directory
    std::string golden_case;   // golden: named case, empty for all
};

RunConfig config_from_json(const json& j);
json config_to_json(const RunConfig& c);

// Parses "inf" / "infinity" / an integer.
std::optional<int> parse_n(const std::string& s);

// Named configurations whose JSON reports ship under tests/golden.
const std::map<std::string, RunConfig>& golden_cases();

// Golden document: {"config": ..., "report": ...}, rendered deterministically.
std::string golden_document(const std::string& name, const RunConfig& c);

int run(const RunConfig& c, std::ostream& out, std::ostream& err);

}  // namespace tatefgl
