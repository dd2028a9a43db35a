// Command-line front end: K0 of (punctured) power digraphs, Smith normal
// form of integer matrices, minor-gcd tables and verification sweeps.
//
// Exit codes: 0 success / all pass, 1 any check failed, 2 flagged-only
// discrepancies (closed form known not to match the oracle), 3 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "powk0/pipeline.hpp"

namespace {

using namespace powk0;

std::uint64_t minor_budget_from_env() {
    if (const char* s = std::getenv("K0_BUDGET")) {
        try {
            return std::stoull(s);
        } catch (...) {
            throw std::invalid_argument("K0_BUDGET must be a positive integer");
        }
    }
    return kDefaultMinorBudget;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file \"" + path + "\"");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

IntMatrix load_matrix(const std::string& path) {
    const std::string text = slurp(path);
    for (char ch : text) {
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        if (ch == '{') return IntMatrix::from_json(nlohmann::json::parse(text));
        break;
    }
    return IntMatrix::from_text(text);
}

int run_k0(const std::string& group, const std::string& graph_file, bool full,
           const std::string& method_name, bool trust_cayley, bool json_out) {
    K0Report rep;
    if (!graph_file.empty()) {
        const Digraph d = Digraph::from_json(nlohmann::json::parse(slurp(graph_file)));
        rep = k0_report_of_digraph(d, "digraph from " + graph_file);
    } else {
        GroupSpec spec = GroupSpec::parse(group);
        spec.trust_cayley = trust_cayley;
        rep = compute_k0(spec, !full, parse_method(method_name));
    }
    if (json_out)
        std::cout << rep.to_json().dump(2) << "\n";
    else
        std::cout << rep.pretty();
    if (rep.verdict == "disagree") return rep.closed && rep.closed->unverified ? 2 : 1;
    return 0;
}

int run_snf(const std::string& matrix_file, bool transforms, bool json_out) {
    const IntMatrix m = load_matrix(matrix_file);
    const SnfResult snf = smith_normal_form(m, transforms);
    const AbelianGroupDecomp coker =
        decomp_from_invariant_factors(m.rows() - snf.rank, snf.diag);
    if (json_out) {
        nlohmann::json j{{"rows", m.rows()},
                         {"cols", m.cols()},
                         {"rank", snf.rank},
                         {"cokernel", coker.to_json()}};
        j["diag"] = nlohmann::json::array();
        for (const Int& d : snf.diag) j["diag"].push_back(int_to_json(d));
        if (snf.transforms) {
            j["U"] = snf.transforms->first.to_json();
            j["V"] = snf.transforms->second.to_json();
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "matrix:   " << m.rows() << " x " << m.cols() << ", rank " << snf.rank
                  << "\n";
        std::cout << "diagonal:";
        for (const Int& d : snf.diag) std::cout << " " << d.get_str();
        std::cout << "\ncokernel: " << coker.to_string() << "\n";
        if (snf.transforms) {
            std::cout << "U =\n" << snf.transforms->first.pretty();
            std::cout << "V =\n" << snf.transforms->second.pretty();
        }
    }
    return 0;
}

int run_dk(unsigned long p, unsigned n, long k_opt, bool oracle, std::uint64_t budget,
           bool json_out) {
    const IntMatrix m = oracle ? cyclic_prime_power_matrix(p, n) : IntMatrix();
    Int size_i = 1;
    for (unsigned i = 0; i < n; ++i) size_i *= static_cast<long>(p);
    const std::size_t size = size_i.get_ui() - 1;

    std::vector<std::size_t> ks;
    if (k_opt > 0)
        ks.push_back(static_cast<std::size_t>(k_opt));
    else
        for (std::size_t k = 1; k <= size; ++k) ks.push_back(k);

    nlohmann::json rows = nlohmann::json::array();
    bool all_match = true;
    for (std::size_t k : ks) {
        const Int closed = minor_gcd_closed_form(p, n, k);
        nlohmann::json row{{"k", k}, {"closed", int_to_json(closed)}};
        std::ostringstream line;
        line << "k=" << k << "  closed " << closed.get_str();
        if (oracle) {
            const Int exhaustive = minor_gcd(m, k, budget);
            row["exhaustive"] = int_to_json(exhaustive);
            row["match"] = exhaustive == closed;
            line << "  exhaustive " << exhaustive.get_str()
                 << (exhaustive == closed ? "  ok" : "  MISMATCH");
            if (exhaustive != closed) all_match = false;
        }
        rows.push_back(std::move(row));
        if (!json_out) std::cout << line.str() << "\n";
    }
    if (json_out) {
        std::cout << nlohmann::json{{"p", p}, {"n", n}, {"minor_gcds", std::move(rows)}}.dump(2)
                  << "\n";
    }
    return all_match ? 0 : 1;
}

int run_verify(const std::string& suite, std::size_t max_size, std::uint64_t seed,
               std::uint64_t budget, bool json_out) {
    VerifyBounds bounds;
    bounds.max_size = max_size;
    bounds.seed = seed;
    bounds.budget = budget;
    const VerificationReport rep = verify_suite(suite, bounds);
    if (json_out)
        std::cout << rep.to_json().dump(2) << "\n";
    else
        std::cout << rep.pretty();
    return rep.exit_code();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Grothendieck groups of Leavitt path algebras of power digraphs"};
    app.require_subcommand(1);

    std::string group, graph_file, method = "snf", matrix_file, suite, format = "dot";
    bool full = false, punctured = false, transforms = false, oracle = false;
    bool trust_cayley = false, json_out = false;
    unsigned long p = 3;
    unsigned n = 1;
    long k_opt = 0;
    std::size_t max_size = 0;
    std::uint64_t seed = 0x5eed, budget = 0;

    auto* k0 = app.add_subcommand("k0", "K0 of the (punctured) power digraph of a group");
    k0->add_option("--group", group, "cyclic:M | elem-abelian:P,R | dihedral:N | cayley:PATH");
    k0->add_option("--graph", graph_file, "digraph JSON file instead of a group");
    k0->add_flag("--full", full, "use the full power digraph");
    k0->add_flag("--punctured", punctured, "use the punctured power digraph (default)");
    k0->add_option("--method", method, "snf | closed | both")->capture_default_str();
    k0->add_flag("--trust-cayley", trust_cayley, "skip the O(n^3) associativity check");
    k0->add_flag("--json", json_out, "JSON output");

    auto* snf = app.add_subcommand("snf", "Smith normal form of an integer matrix file");
    snf->add_option("--matrix", matrix_file, "matrix file (JSON or \"rows cols\" text)")
        ->required();
    snf->add_flag("--transforms", transforms, "also compute unimodular U, V");
    snf->add_flag("--json", json_out, "JSON output");

    auto* dk = app.add_subcommand("dk", "closed-form minor gcds of the p^n matrix");
    dk->add_option("--p", p, "odd prime")->required();
    dk->add_option("--n", n, "exponent")->required();
    dk->add_option("--k", k_opt, "single minor order (default: all)");
    dk->add_flag("--oracle", oracle, "cross-check by exhaustive minor enumeration");
    dk->add_option("--budget", budget, "submatrix budget for --oracle");
    dk->add_flag("--json", json_out, "JSON output");

    auto* verify = app.add_subcommand("verify", "closed-form vs oracle verification sweeps");
    verify->add_option("--suite", suite,
                       "odd-prime-closed-forms | minor-gcd | two-power | block-identities | "
                       "disjoint-union")
        ->required();
    verify->add_option("--max-size", max_size, "matrix/assembly size cap (suite default if 0)");
    verify->add_option("--seed", seed, "seed for randomized checks");
    verify->add_flag("--json", json_out, "JSON output");

    auto* graph = app.add_subcommand("graph", "export the (punctured) power digraph");
    graph->add_option("--group", group, "group spec")->required();
    graph->add_option("--format", format, "dot | json")->capture_default_str();
    graph->add_flag("--full", full, "use the full power digraph");
    graph->add_flag("--punctured", punctured, "use the punctured power digraph (default)");
    graph->add_flag("--trust-cayley", trust_cayley, "skip the O(n^3) associativity check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 3;
    }

    try {
        if (full && punctured) throw std::invalid_argument("--full and --punctured conflict");
        const std::uint64_t env_budget = minor_budget_from_env();
        if (budget == 0) budget = env_budget;

        if (k0->parsed()) {
            if (group.empty() == graph_file.empty())
                throw std::invalid_argument("k0 needs exactly one of --group / --graph");
            return run_k0(group, graph_file, full, method, trust_cayley, json_out);
        }
        if (snf->parsed()) return run_snf(matrix_file, transforms, json_out);
        if (dk->parsed()) return run_dk(p, n, k_opt, oracle, budget, json_out);
        if (verify->parsed()) return run_verify(suite, max_size, seed, budget, json_out);
        if (graph->parsed()) {
            GroupSpec spec = GroupSpec::parse(group);
            spec.trust_cayley = trust_cayley;
            std::cout << export_graph(spec, !full, format);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}
