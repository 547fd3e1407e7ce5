#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ppm/decompose.hpp"
#include "ppm/io.hpp"
#include "ppm/match.hpp"
#include "ppm/pattern_graph.hpp"
#include "ppm/permutation.hpp"
#include "ppm/reduction.hpp"
#include "ppm/twirl.hpp"

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

using nlohmann::json;

int run_match(const std::string& pattern_path, const std::string& text_path,
              const std::string& algo, std::uint64_t budget) {
    const ppm::Permutation pattern = ppm::read_perm_file(pattern_path);
    const ppm::Permutation text = ppm::read_perm_file(text_path);

    ppm::MatchOutcome outcome;
    ppm::Occurrence occ;
    if (algo == "brute") {
        auto r = ppm::contains_bruteforce(pattern, text);
        outcome = r ? ppm::MatchOutcome::Contained : ppm::MatchOutcome::NotContained;
        if (r) occ = *r;
    } else if (algo == "backtrack") {
        auto r = ppm::match_backtrack(pattern, text, ppm::MatchBudget{budget});
        outcome = r.outcome;
        occ = r.occurrence;
    } else {  // sepdp
        std::vector<int> order;
        if (ppm::longest_decreasing_length(pattern) <= 2 && !pattern.empty()) {
            order = ppm::stair_order(ppm::stair_decompose(pattern));
        } else {
            order.resize(static_cast<size_t>(pattern.size()));
            for (int i = 0; i < pattern.size(); ++i) order[static_cast<size_t>(i)] = i + 1;
        }
        auto r = ppm::match_separator_dp(pattern, order, text);
        outcome = r.outcome;
        occ = r.occurrence;
    }

    json j;
    j["contains"] = (outcome == ppm::MatchOutcome::Contained);
    if (outcome == ppm::MatchOutcome::Indeterminate) j["contains"] = nullptr;
    j["occurrence"] = occ;
    std::cout << j.dump() << "\n";
    switch (outcome) {
        case ppm::MatchOutcome::Contained: return 0;
        case ppm::MatchOutcome::NotContained: return 1;
        default: return 2;
    }
}

int run_reduce(const std::string& cnf_path, bool twirled, const std::string& out_dir) {
    const ppm::CnfFormula f = ppm::read_dimacs_file(cnf_path);
    const ppm::ReductionInstance inst = ppm::build_instance(f);
    std::filesystem::create_directories(out_dir);

    if (!twirled) {
        ppm::write_perm_file(out_dir + "/pattern.perm", inst.pattern);
        ppm::write_perm_file(out_dir + "/text.perm", inst.text);
        ppm::write_text_file(out_dir + "/meta.json",
                             ppm::reduction_meta_json(inst, false, inst.provenance));
    } else {
        const ppm::TwirledInstance tw = ppm::build_twirled_instance(f);
        ppm::write_perm_file(out_dir + "/pattern.perm", tw.pattern);
        ppm::write_perm_file(out_dir + "/text.perm", tw.text);
        // provenance follows the elements to their twirled positions
        std::vector<ppm::Provenance> prov(static_cast<size_t>(inst.text.size()));
        for (int p = 0; p < inst.text.size(); ++p)
            prov[static_cast<size_t>(tw.text_pos_map[static_cast<size_t>(p)])] =
                inst.provenance[static_cast<size_t>(p)];
        ppm::write_text_file(out_dir + "/meta.json", ppm::reduction_meta_json(inst, true, prov));
    }
    return 0;
}

int run_verify_reduction(const std::string& cnf_path, bool as_json) {
    const ppm::CnfFormula f = ppm::read_dimacs_file(cnf_path);
    const auto direct = ppm::sat_bruteforce(f);
    const ppm::ReductionInstance inst = ppm::build_instance(f);
    const auto via_embedding = ppm::decide_via_assignments(inst);
    const bool witness_ok = !via_embedding ||
                            ppm::is_occurrence(inst.pattern, inst.text, via_embedding->occurrence);
    const bool agree = static_cast<bool>(direct) == static_cast<bool>(via_embedding) && witness_ok;
    if (as_json) {
        json j;
        j["agree"] = agree;
        j["satisfiable"] = static_cast<bool>(direct);
        std::cout << j.dump() << "\n";
    } else if (!agree) {
        if (!witness_ok)
            std::cout << "DISAGREE: embedding witness is not an occurrence\n";
        else
            std::cout << "DISAGREE: sat_bruteforce says "
                      << (direct ? "satisfiable" : "unsatisfiable") << ", embedding says "
                      << (via_embedding ? "satisfiable" : "unsatisfiable") << "\n";
    } else {
        std::cout << "AGREE: " << (direct ? "satisfiable" : "unsatisfiable") << "\n";
    }
    return agree ? 0 : 1;
}

int run_decompose(const std::string& perm_path, bool stair, bool spiral) {
    const ppm::Permutation perm = ppm::read_perm_file(perm_path);
    if (!stair && !spiral) {
        if (ppm::longest_decreasing_length(perm) <= 2)
            stair = true;
        else if (ppm::in_skew_star(perm))
            spiral = true;
        else
            throw std::runtime_error(
                "input fits neither decomposition; pass --stair or --spiral to force one");
    }
    if (stair)
        std::cout << ppm::decomposition_json(ppm::stair_decompose(perm)) << "\n";
    else
        std::cout << ppm::decomposition_json(ppm::spiral_decompose(perm)) << "\n";
    return 0;
}

int run_graph(const std::string& perm_path, const std::string& blocks_path) {
    const ppm::Permutation perm = ppm::read_perm_file(perm_path);

    std::optional<ppm::StairDecomposition> stair;
    std::optional<ppm::SpiralDecomposition> spiral;
    if (!blocks_path.empty()) {
        const auto parsed = ppm::parse_decomposition_json(ppm::read_text_file(blocks_path));
        if (!parsed.host.empty() && ppm::Permutation(parsed.host) != perm)
            throw std::runtime_error("decomposition host does not match the permutation");
        if (parsed.kind == "stair")
            stair = ppm::StairDecomposition{perm, parsed.blocks};
        else
            spiral = ppm::SpiralDecomposition{perm, parsed.blocks};
    } else if (ppm::longest_decreasing_length(perm) <= 2) {
        stair = ppm::stair_decompose(perm);
    } else if (ppm::in_skew_star(perm)) {
        spiral = ppm::spiral_decompose(perm);
    } else {
        throw std::runtime_error(
            "no decomposition available for good/bad labels; pass --blocks");
    }

    if (stair) {
        const auto labels = ppm::classify_edges(*stair);
        const auto wb = ppm::pathwidth_bound(*stair);
        std::cout << ppm::graph_json(labels, wb.separation, wb.bound) << "\n";
    } else {
        const auto labels = ppm::classify_edges(*spiral);
        const auto wb = ppm::pathwidth_bound(*spiral);
        std::cout << ppm::graph_json(labels, wb.separation, wb.bound) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"permutation pattern matching toolkit"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output where plain text is the default");

    std::string pattern_path, text_path, algo = "backtrack";
    std::uint64_t budget = UINT64_MAX;
    auto* match = app.add_subcommand("match", "decide whether TEXT contains PATTERN");
    match->add_option("pattern", pattern_path, ".perm file with the pattern")->required();
    match->add_option("text", text_path, ".perm file with the text")->required();
    match->add_option("--algo", algo, "brute, backtrack or sepdp")
        ->check(CLI::IsMember({"brute", "backtrack", "sepdp"}));
    match->add_option("--budget", budget, "node budget for backtrack")->check(CLI::PositiveNumber);

    std::string cnf_path, out_dir = ".";
    bool twirled = false;
    auto* reduce = app.add_subcommand("reduce", "build the pattern/text pair of a 3-SAT formula");
    reduce->add_option("cnf", cnf_path, "DIMACS CNF input")->required();
    reduce->add_flag("--twirl", twirled, "emit the twirled (skew) instance");
    reduce->add_option("-o,--output", out_dir, "output directory")->required();

    std::string vr_cnf;
    auto* verify = app.add_subcommand("verify-reduction",
                                      "check the embedding decision against brute-force SAT");
    verify->add_option("cnf", vr_cnf, "DIMACS CNF input")->required();

    std::string dec_perm;
    bool dec_stair = false, dec_spiral = false;
    auto* decomp = app.add_subcommand("decompose", "stair or spiral decomposition as JSON");
    decomp->add_option("perm", dec_perm, ".perm file")->required();
    auto* flag_stair = decomp->add_flag("--stair", dec_stair, "force stair decomposition");
    decomp->add_flag("--spiral", dec_spiral, "force spiral decomposition")->excludes(flag_stair);

    int track_k = 0;
    auto* track = app.add_subcommand("track", "print the universal k-track permutation");
    track->add_option("k", track_k, "side length")->required()->check(CLI::PositiveNumber);

    int spiral_k = 0;
    auto* spiral = app.add_subcommand("spiral", "print the universal k-spiral permutation");
    spiral->add_option("k", spiral_k, "side length")->required()->check(CLI::PositiveNumber);

    std::string graph_perm, blocks_path;
    auto* graph = app.add_subcommand("graph", "incidence graph with good/bad edge labels");
    graph->add_option("perm", graph_perm, ".perm file")->required();
    graph->add_option("--blocks", blocks_path, "decomposition JSON to classify against");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (match->parsed()) return run_match(pattern_path, text_path, algo, budget);
        if (reduce->parsed()) return run_reduce(cnf_path, twirled, out_dir);
        if (verify->parsed()) return run_verify_reduction(vr_cnf, as_json);
        if (decomp->parsed()) return run_decompose(dec_perm, dec_stair, dec_spiral);
        if (track->parsed() || spiral->parsed()) {
            const auto perm = track->parsed() ? ppm::k_track(track_k).host : ppm::k_spiral(spiral_k).host;
            if (as_json)
                std::cout << json{{"permutation", perm.values()}}.dump() << "\n";
            else
                std::cout << perm.to_string() << "\n";
            return 0;
        }
        if (graph->parsed()) return run_graph(graph_perm, blocks_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
