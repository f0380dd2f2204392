#pragma once

#include "nbv/verify.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace nbv {

extern const char* const tool_version;

enum class Method { trace, recursion_first, recursion_last, closed_first, closed_last, tensor_split };
std::string to_string(Method m);
Method method_from_string(const std::string& s);

struct JobSpec {
    Flavor flavor;
    int n = 2;
    std::vector<ModuleSpec> modules;
    std::vector<int> xi;
    VarCollection t;
    Method method = Method::trace;
};

// Throws ValidationError with the JSON pointer of the offending field.
// Modules may be omitted only when `modules_optional` is set (explain).
JobSpec parse_job(const nlohmann::json& j, bool modules_optional = false);
nlohmann::json serialize(const JobSpec& job);
nlohmann::json serialize(const ModuleSpec& m);

// SHA-256 of the canonical job JSON without the method field.
std::string fingerprint(const JobSpec& job);

RepPtr assemble(const JobSpec& job);

// compute: {basis, coordinates, weight, method, manifest}
nlohmann::json compute(const JobSpec& job);
// explain: the normalized trace expansion, one entry per monomial
nlohmann::json explain(const JobSpec& job);

// Reads a JSON file; ValidationError("", ...) when it does not parse.
nlohmann::json read_json(const std::string& path);
// Pretty-printed, newline-terminated; identical input gives identical bytes.
void write_json(const std::string& path, const nlohmann::json& j);

} // namespace nbv
