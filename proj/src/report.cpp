#include "qma/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <stdexcept>

namespace qma {

std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Skipped: return "skipped";
    }
    throw std::logic_error("unknown check status");
}

void VerificationReport::set_config(const std::string& key, const std::string& value) {
    for (auto& [k, v] : config)
        if (k == key) {
            v = value;
            return;
        }
    config.emplace_back(key, value);
}

void VerificationReport::add_pass(const std::string& name, const std::string& anchor, int degree) {
    checks.push_back({name, anchor, degree, CheckStatus::Pass, std::nullopt});
}

void VerificationReport::add_skip(const std::string& name, const std::string& anchor) {
    checks.push_back({name, anchor, 0, CheckStatus::Skipped, std::nullopt});
}

void VerificationReport::add_fail(const std::string& name, const std::string& anchor, int degree,
                                  const std::string& input, const std::string& expected,
                                  const std::string& got) {
    checks.push_back(
        {name, anchor, degree, CheckStatus::Fail, Counterexample{input, expected, got}});
}

void VerificationReport::merge(const VerificationReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

bool VerificationReport::pass() const {
    return std::none_of(checks.begin(), checks.end(),
                        [](const Check& c) { return c.status == CheckStatus::Fail; });
}

std::size_t VerificationReport::failed_count() const {
    return static_cast<std::size_t>(std::count_if(
        checks.begin(), checks.end(), [](const Check& c) { return c.status == CheckStatus::Fail; }));
}

namespace {

std::vector<const Check*> sorted_checks(const std::vector<Check>& checks) {
    std::vector<const Check*> out;
    out.reserve(checks.size());
    for (const Check& c : checks) out.push_back(&c);
    std::stable_sort(out.begin(), out.end(),
                     [](const Check* a, const Check* b) { return a->name < b->name; });
    return out;
}

}  // namespace

std::string VerificationReport::to_json() const {
    nlohmann::ordered_json j;
    j["tool_version"] = tool_version;

    auto cfg = config;
    std::stable_sort(cfg.begin(), cfg.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    nlohmann::ordered_json jc = nlohmann::ordered_json::object();
    for (const auto& [k, v] : cfg) jc[k] = v;
    j["config"] = std::move(jc);

    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const Check* c : sorted_checks(checks)) {
        nlohmann::ordered_json e;
        e["name"] = c->name;
        e["paper_anchor"] = c->paper_anchor;
        e["degree_certified"] = c->degree_certified;
        e["status"] = to_string(c->status);
        if (c->counterexample) {
            e["counterexample"] = {{"input", c->counterexample->input},
                                   {"expected", c->counterexample->expected},
                                   {"got", c->counterexample->got}};
        }
        arr.push_back(std::move(e));
    }
    j["checks"] = std::move(arr);
    j["pass"] = pass();
    return j.dump(2) + "\n";
}

std::string VerificationReport::summary() const {
    std::string out;
    for (const Check* c : sorted_checks(checks)) {
        out += "[" + to_string(c->status) + "] " + c->name;
        if (c->degree_certified > 0)
            out += " (degree " + std::to_string(c->degree_certified) + ")";
        if (c->counterexample) {
            out += "\n    input:    " + c->counterexample->input;
            out += "\n    expected: " + c->counterexample->expected;
            out += "\n    got:      " + c->counterexample->got;
        }
        out += "\n";
    }
    out += pass() ? "ALL CHECKS PASSED\n"
                  : std::to_string(failed_count()) + " CHECK(S) FAILED\n";
    return out;
}

}  // namespace qma
