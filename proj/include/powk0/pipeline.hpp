#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "powk0/closed_forms.hpp"
#include "powk0/digraph.hpp"
#include "powk0/group.hpp"
#include "powk0/snf.hpp"

namespace powk0 {

enum class K0Method { Snf, Closed, Both };

K0Method parse_method(const std::string& s);

struct K0Report {
    std::string group;
    bool punctured = true;
    std::size_t vertices = 0, edges = 0, sinks = 0, regular = 0;
    std::string method;
    std::vector<Int> snf_diag;                   // filled when the SNF path ran
    std::optional<AbelianGroupDecomp> snf_decomp;
    std::optional<ClosedFormK0> closed;
    std::string verdict; // "agree" / "disagree" when method = both, else ""

    const AbelianGroupDecomp& result() const;
    bool operator==(const K0Report&) const = default;
    nlohmann::json to_json() const;
    static K0Report from_json(const nlohmann::json& j);
    std::string pretty() const;
};

/// Full pipeline: group -> punctured/full power digraph -> canonical order
/// -> K0 matrix -> Smith form -> cokernel, and/or the closed form for the
/// group's family. method = Closed/Both throws if no family applies.
K0Report compute_k0(const GroupSpec& spec, bool punctured, K0Method method);

/// K0 of an arbitrary digraph (vertex order as given).
AbelianGroupDecomp k0_of_digraph(const Digraph& d);
K0Report k0_report_of_digraph(const Digraph& d, const std::string& name);

/// The closed-form family covering Pow*(G), if any.
std::optional<ClosedFormK0> closed_form_for(const Group& g, bool punctured);

struct VerifyBounds {
    std::size_t max_size = 0; // 0 = suite default
    std::uint64_t seed = 0x5eed;
    std::uint64_t budget = kDefaultMinorBudget;
};

enum class CaseStatus { Pass, Fail, Flagged };

struct VerificationCase {
    std::string params;
    std::string expected_source;
    std::string expected;
    std::string computed;
    CaseStatus status = CaseStatus::Pass;
    double ms = 0.0;
    std::string details;
    nlohmann::json data; // structured payload for machine consumers
};

struct VerificationReport {
    std::string suite;
    std::vector<VerificationCase> cases;

    std::size_t count(CaseStatus s) const;
    /// 0 all pass, 1 any fail, 2 flagged-only discrepancies.
    int exit_code() const;
    nlohmann::json to_json() const;
    std::string pretty() const;
};

/// Suites: odd-prime-closed-forms, minor-gcd, two-power, block-identities,
/// disjoint-union.
VerificationReport verify_suite(const std::string& name, const VerifyBounds& bounds = {});

std::vector<std::string> verify_suite_names();

/// DOT or JSON text of the (punctured) power digraph in canonical order.
std::string export_graph(const GroupSpec& spec, bool punctured, const std::string& format);

/// Order-27 exponent-3 group that is not abelian (upper unitriangular 3x3
/// matrices over the field with 3 elements), as a Cayley table.
GroupSpec heisenberg3_spec();

} // namespace powk0
