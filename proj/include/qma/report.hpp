#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qma {

inline constexpr const char* kToolVersion = "qma 0.1.0";

enum class CheckStatus { Pass, Fail, Skipped };

std::string to_string(CheckStatus s);

// the offending instance of a failed check, as printable expressions
struct Counterexample {
    std::string input;
    std::string expected;
    std::string got;
};

struct Check {
    std::string name;
    std::string paper_anchor;
    int degree_certified = 0;
    CheckStatus status = CheckStatus::Pass;
    std::optional<Counterexample> counterexample;
};

// Structured pass/fail record for a verification suite. Serialization is
// deterministic: config keys and checks are emitted in sorted order, so a
// fixed configuration and seed produce a byte-identical file.
struct VerificationReport {
    std::string tool_version = kToolVersion;
    std::vector<std::pair<std::string, std::string>> config;  // echoed key/value pairs
    std::vector<Check> checks;

    void set_config(const std::string& key, const std::string& value);

    void add_pass(const std::string& name, const std::string& anchor, int degree);
    void add_skip(const std::string& name, const std::string& anchor);
    void add_fail(const std::string& name, const std::string& anchor, int degree,
                  const std::string& input, const std::string& expected, const std::string& got);

    // appends the other report's checks (config and version stay ours)
    void merge(const VerificationReport& other);

    bool pass() const;  // no check failed
    std::size_t failed_count() const;

    std::string to_json() const;  // pretty-printed, trailing newline
    std::string summary() const;  // one human-readable line per check
};

}  // namespace qma
