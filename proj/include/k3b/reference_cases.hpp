#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k3b/binary_forms.hpp"
#include "k3b/kappa.hpp"
#include "k3b/serialize.hpp"

namespace k3b {

enum class Conclusion { isomorphic, not_isomorphic, undetermined };
std::string to_string(Conclusion c);

struct NamedCheck {
    std::string name;
    bool passed;
    std::string detail;
};

struct ExampleVerdict {
    std::string case_id;
    SurfaceParams params;
    GramLattice pic_X, pic_S;
    Integer det_X, det_S;
    bool pic_isometric = false;
    std::optional<IntMatrix> isometry;  // U with U Pic(X) U^T = Pic(S)
    std::optional<bool> glue_unique;
    std::optional<std::pair<Integer, Integer>> minus_two_X, minus_two_S;
    std::optional<PellResult> pell;     // d = 1, p = 2 only
    Conclusion isomorphic_conclusion = Conclusion::undetermined;
    Conclusion expected = Conclusion::undetermined;
    std::vector<NamedCheck> checks;
    std::vector<std::string> notes;

    bool matches_expected() const;
};

struct SuiteConfig {
    std::uint64_t disc_enum_bound = default_disc_enum_bound;
    std::uint64_t enumeration_budget = default_enumeration_budget;
};

constexpr long mn04_search_bound = 50;
constexpr long representation_brute_bound = 200;

const std::vector<std::string>& case_ids();
// Throws a domain error for an unknown id.
ExampleVerdict run_case(const std::string& case_id, const SuiteConfig& config = {});

// h1 = x H + y K with h1^2 = 2p and h1.H = 0 mod p, |x|, |y| <= bound, x > 0
// or x = 0 < y; sorted by (|x| + |y|, x, y).
std::vector<std::pair<Integer, Integer>> mn04_witnesses(const SurfaceParams& s, long bound = mn04_search_bound);

struct Discrepancy {
    std::string id;
    std::string statement;
    std::string finding;
    bool confirmed;
};
std::vector<Discrepancy> flagged_discrepancies();

struct SuiteReport {
    std::vector<ExampleVerdict> cases;
    std::vector<Discrepancy> discrepancies;
    Json tables;
    Json bounds;
    bool all_match = false;
};

SuiteReport run_suite(const SuiteConfig& config = {});
Json verdict_to_json(const ExampleVerdict& v);
Json report_to_json(const SuiteReport& r);
std::string report_table(const SuiteReport& r);

}  // namespace k3b
