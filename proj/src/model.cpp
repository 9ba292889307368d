#include "hk/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "hk/errors.hpp"

namespace hk {

std::string to_string(Variant v) {
    switch (v) {
        case Variant::PlainNoisy: return "plain";
        case Variant::HomoPrejudice: return "homo-prejudice";
        case Variant::HomoStubborn: return "homo-stubborn";
        case Variant::HeteroPrejudice: return "hetero-prejudice";
        case Variant::HeteroStubborn: return "hetero-stubborn";
    }
    return "?";
}

Variant variant_from_string(const std::string& s) {
    if (s == "plain") return Variant::PlainNoisy;
    if (s == "homo-prejudice") return Variant::HomoPrejudice;
    if (s == "homo-stubborn") return Variant::HomoStubborn;
    if (s == "hetero-prejudice") return Variant::HeteroPrejudice;
    if (s == "hetero-stubborn") return Variant::HeteroStubborn;
    throw ConfigError("unknown model variant '" + s + "'");
}

std::vector<double> ModelConfig::stubborn_values() const {
    std::vector<double> vals;
    if (!is_stubborn_variant()) return vals;
    vals.insert(vals.end(), b1_count, b1_value);
    if (variant == Variant::HeteroStubborn) vals.insert(vals.end(), b2_count, b2_value);
    return vals;
}

namespace {

bool in_unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

void check_member_set(const std::vector<std::size_t>& members, std::size_t n,
                      const std::string& name, std::vector<std::string>& errs) {
    std::set<std::size_t> seen;
    for (std::size_t i : members) {
        if (i >= n) errs.push_back(name + " contains out-of-range agent index " + std::to_string(i));
        if (!seen.insert(i).second)
            errs.push_back(name + " contains duplicate agent index " + std::to_string(i));
    }
}

}  // namespace

void ModelConfig::validate() const {
    std::vector<std::string> errs;

    if (n == 0) errs.push_back("n must be >= 1");
    if (!(epsilon > 0.0 && epsilon <= 1.0)) errs.push_back("epsilon must lie in (0,1]");
    try {
        noise.validate();
    } catch (const ConfigError& e) {
        errs.emplace_back(e.what());
    }

    if (is_prejudice_variant()) {
        if (!(alpha > 0.0 && alpha <= 1.0)) errs.push_back("alpha must lie in (0,1]");
        if (!in_unit_interval(j1)) errs.push_back("j1 must lie in [0,1]");
        check_member_set(s1_members, n, "s1_members", errs);
        if (b1_count != 0 || b2_count != 0)
            errs.push_back("prejudice variants admit no stubborn agents");
    }
    if (variant == Variant::HeteroPrejudice) {
        if (!in_unit_interval(j2)) errs.push_back("j2 must lie in [0,1]");
        check_member_set(s2_members, n, "s2_members", errs);
        std::set<std::size_t> s1(s1_members.begin(), s1_members.end());
        std::set<std::size_t> s2(s2_members.begin(), s2_members.end());
        for (std::size_t i : s2_members) {
            if (s1.count(i)) {
                errs.push_back("s1_members and s2_members must be disjoint");
                break;
            }
        }
        if (s1.size() + s2.size() != n)
            errs.push_back("s1_members and s2_members must partition V");
        if (!(std::abs(j1 - j2) > epsilon))
            errs.push_back("hetero-prejudice requires |j1 - j2| > epsilon");
    }
    if (is_stubborn_variant()) {
        if (!in_unit_interval(b1_value)) errs.push_back("b1 must lie in [0,1]");
        if (b1_count == 0) errs.push_back("stubborn variants require b1_count >= 1");
        if (!s1_members.empty() || !s2_members.empty() || alpha != 0.0)
            errs.push_back("stubborn variants admit no prejudiced agents");
    }
    if (variant == Variant::HeteroStubborn) {
        if (!in_unit_interval(b2_value)) errs.push_back("b2 must lie in [0,1]");
        if (b2_count == 0) errs.push_back("hetero-stubborn requires b2_count >= 1");
        if (!(b2_value - b1_value > epsilon))
            errs.push_back("hetero-stubborn requires b2 - b1 > epsilon");
    }

    if (!errs.empty()) {
        std::string msg = "invalid model config:";
        for (const auto& e : errs) msg += "\n  - " + e;
        throw ConfigError(msg);
    }
}

}  // namespace hk
