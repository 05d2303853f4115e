#pragma once

// Named pass/fail results for residual arrays.

#include "dendra/cube.hpp"
#include "dendra/tensor.hpp"

#include <string>
#include <vector>

namespace dendra {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

inline std::string index_text(const auto &idx)
{
    std::string out = "(";
    for (std::size_t i = 0; i < idx.size(); ++i) out += (i ? "," : "") + std::to_string(idx[i] + 1);
    return out + ")";
}

// Passes iff every entry vanishes after applying the constraints.
template <typename CubeT>
CheckResult residual_check(std::string name, const CubeT &cube, const ConstraintSet &cs)
{
    const auto bad = surviving_entries(cube, cs);
    if (bad.empty()) return {std::move(name), true, "all " + std::to_string(cube.size()) + " entries vanish"};
    std::string detail = "entry " + index_text(cube.index_of(bad.front().first)) + " = " + bad.front().second.str();
    if (bad.size() > 1) detail += " (" + std::to_string(bad.size()) + " nonzero entries)";
    return {std::move(name), false, std::move(detail)};
}

inline CheckResult bool_check(std::string name, bool ok, std::string pass_detail, std::string fail_detail)
{
    return {std::move(name), ok, ok ? std::move(pass_detail) : std::move(fail_detail)};
}

inline bool all_pass(const std::vector<CheckResult> &checks)
{
    for (const auto &c : checks)
        if (!c.pass) return false;
    return true;
}

} // namespace dendra
