#include "ppm/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ppm {

using nlohmann::json;

Permutation parse_perm(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<int> vals;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        int x;
        while (ls >> x) vals.push_back(x);
        if (!ls.eof()) throw std::runtime_error("perm: bad token in line: " + line);
    }
    return Permutation(std::move(vals));
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << content;
    if (!f) throw std::runtime_error("failed writing " + path);
}

Permutation read_perm_file(const std::string& path) { return parse_perm(read_text_file(path)); }

std::string format_perm(const Permutation& perm) { return perm.to_string() + "\n"; }

void write_perm_file(const std::string& path, const Permutation& perm) {
    write_text_file(path, format_perm(perm));
}

CnfFormula read_dimacs_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    return parse_dimacs(f);
}

namespace {

json decomposition_to_json_impl(const Permutation& host, const std::vector<std::vector<int>>& blocks,
                                const char* kind) {
    json j;
    j["host"] = host.values();
    j["blocks"] = blocks;
    j["kind"] = kind;
    return j;
}

}  // namespace

std::string decomposition_json(const StairDecomposition& dec) {
    return decomposition_to_json_impl(dec.host, dec.blocks, "stair").dump();
}

std::string decomposition_json(const SpiralDecomposition& dec) {
    return decomposition_to_json_impl(dec.host, dec.blocks, "spiral").dump();
}

ParsedDecomposition parse_decomposition_json(const std::string& text) {
    const json j = json::parse(text);
    ParsedDecomposition out;
    if (j.contains("host")) out.host = j["host"].get<std::vector<int>>();
    out.blocks = j.at("blocks").get<std::vector<std::vector<int>>>();
    out.kind = j.value("kind", std::string("stair"));
    if (out.kind != "stair" && out.kind != "spiral")
        throw std::runtime_error("decomposition kind must be \"stair\" or \"spiral\"");
    return out;
}

std::string graph_json(const EdgeLabels& labels, int vertex_separation_value, int width_bound) {
    json j;
    j["k"] = labels.graph.vertex_count;
    json edges = json::array();
    for (size_t i = 0; i < labels.graph.edges.size(); ++i) {
        const auto& e = labels.graph.edges[i];
        edges.push_back({{"u", e.u}, {"v", e.v}, {"red", e.red}, {"blue", e.blue},
                         {"bad", static_cast<bool>(labels.bad[i])}});
    }
    j["edges"] = std::move(edges);
    j["vertex_separation"] = vertex_separation_value;
    j["width_bound"] = width_bound;
    return j.dump();
}

std::string reduction_meta_json(const ReductionInstance& inst, bool twirled,
                                const std::vector<Provenance>& provenance_by_position) {
    json j;
    j["num_vars"] = inst.formula.num_vars;
    j["num_clauses"] = inst.formula.clauses.size();
    j["M"] = inst.anchor_length;
    j["pattern_size"] = inst.pattern.size();
    j["text_size"] = inst.text.size();
    j["twirled"] = twirled;

    json counts = json::array();
    for (const auto& per_clause : inst.bypasses) counts.push_back(per_clause.size());
    j["bypass_counts"] = std::move(counts);

    json prov = json::array();
    for (const auto& p : provenance_by_position) {
        if (p.anchor) {
            prov.push_back({{"role", "anchor"}});
        } else {
            json e = {{"role", "staircase"},
                      {"var", p.var},
                      {"polarity", p.positive ? "T" : "F"},
                      {"step", p.step},
                      {"bend", p.inner ? "inner" : "outer"},
                      {"origin", p.bypass ? "bypass" : "original"}};
            if (p.bypass) e["clause"] = p.clause;
            prov.push_back(std::move(e));
        }
    }
    j["provenance"] = std::move(prov);
    return j.dump(2) + "\n";
}

}  // namespace ppm
