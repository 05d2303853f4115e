#pragma once

// Polynomial systems: a list of polynomials asserted identically zero plus
// side conditions.

#include "dendra/scalar.hpp"

#include <set>
#include <string>
#include <vector>

namespace dendra {

struct PolySystem {
    std::vector<std::string> unknowns;
    std::vector<std::string> parameters;
    std::vector<Scalar> equations;
    std::vector<std::string> labels;
    std::vector<Constraint> side_conditions;

    void add(Scalar eq, std::string label = {})
    {
        if (eq.is_zero()) return;
        equations.push_back(std::move(eq));
        labels.push_back(std::move(label));
    }

    bool empty() const { return equations.empty(); }

    // Every indeterminate in the equations must be an unknown or a parameter.
    void validate() const
    {
        std::set<std::string> known(unknowns.begin(), unknowns.end());
        known.insert(parameters.begin(), parameters.end());
        for (const auto &eq : equations)
            for (const auto &v : eq.variables())
                if (!known.count(v)) throw Error("indeterminate '" + v + "' is neither an unknown nor a parameter");
    }

    friend bool operator==(const PolySystem &a, const PolySystem &b)
    {
        return a.unknowns == b.unknowns && a.parameters == b.parameters && a.equations == b.equations
            && a.labels == b.labels && a.side_conditions == b.side_conditions;
    }
};

// Sign-normalized so the leading coefficient is positive.
inline Scalar normalize_sign(const Scalar &s)
{
    if (s.is_zero() || s.terms().begin()->second.sign() > 0) return s;
    return -s;
}

} // namespace dendra
