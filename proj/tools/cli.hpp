#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace poisson_approx::cli {

// Everything a subcommand prints: the command name, the inputs it resolved,
// a structured payload, and the artifact version. Serialization is
// deterministic (insertion-ordered keys) and round-trips through parse.
struct OutputEnvelope {
    std::string command;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
    nlohmann::ordered_json results = nlohmann::ordered_json::object();
    std::string artifact_version;

    nlohmann::ordered_json to_json() const;
    static OutputEnvelope from_json(const nlohmann::ordered_json& j);

    // RFC 4180 rows. The power curve emits a (p, power) table; everything
    // else flattens to dotted key,value rows with the same numeric text as
    // the JSON form.
    std::string to_csv() const;
};

// Exit codes: 0 success / certified, 1 certification failure (violations
// found or a searched-for witness missing), 2 usage or precondition error.
// Envelopes go to `out` (standard output by default); diagnostics to stderr.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);
int run(const std::vector<std::string>& args, std::ostream& out);

}  // namespace poisson_approx::cli
