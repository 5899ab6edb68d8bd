#include "commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cbn/decomposition.hpp"
#include "cbn/digraph.hpp"
#include "cbn/dynamics.hpp"
#include "cbn/edge_list.hpp"
#include "cbn/graphgen.hpp"
#include "cbn/necklace.hpp"
#include "cbn/oracle.hpp"
#include "cbn/stability.hpp"

namespace cbn::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

// Signals an exit code after the message has been written.
struct ExitWith {
    int code;
};

std::size_t default_oracle_cap() {
    if (const char* env = std::getenv("CBN_MAX_ORACLE_N")) {
        try {
            return std::stoul(env);
        } catch (const std::exception&) {
        }
    }
    return oracle::kDefaultMaxN;
}

Digraph load(const std::string& path, std::ostream& err) {
    try {
        return read_edge_list_file(path);
    } catch (const GraphError& ex) {
        err << path << ": " << ex.what() << "\n";
        throw ExitWith{kUsage};
    }
}

Digraph load_strongly_connected(const std::string& path, std::ostream& err) {
    Digraph g = load(path, err);
    if (!is_strongly_connected(g)) {
        err << path << ": the dependency graph is not strongly connected\n";
        throw ExitWith{kPrecondition};
    }
    return g;
}

State parse_state(const std::string& bits, const Digraph& g, std::ostream& err) {
    State x;
    try {
        x = State::from_string(bits);
    } catch (const Error& ex) {
        err << ex.what() << "\n";
        throw ExitWith{kUsage};
    }
    if (x.size() != g.size()) {
        err << "state has " << x.size() << " entries but the graph has " << g.size()
            << " vertices\n";
        throw ExitWith{kUsage};
    }
    return x;
}

std::string states_line(const std::vector<State>& states) {
    std::string out;
    for (const auto& s : states) {
        out += (out.empty() ? "" : " ") + s.to_string();
    }
    return out;
}

std::string count_map(const std::map<std::size_t, std::uint64_t>& counts) {
    std::string out = "{";
    for (const auto& [k, v] : counts) {
        out += (out.size() > 1 ? ", " : "") + std::to_string(k) + ":" + std::to_string(v);
    }
    return out + "}";
}

ordered_json count_json(const std::map<std::size_t, std::uint64_t>& counts) {
    ordered_json j = ordered_json::object();
    for (const auto& [k, v] : counts) {
        j[std::to_string(k)] = v;
    }
    return j;
}

template <typename T>
std::vector<T> parse_list(const std::string& text, std::ostream& err) {
    std::vector<T> values;
    std::stringstream in(text);
    for (std::string item; std::getline(in, item, ',');) {
        try {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(item, &used);
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
            values.push_back(static_cast<T>(v));
        } catch (const std::exception&) {
            err << "bad list entry \"" << item << "\" in \"" << text << "\"\n";
            throw ExitWith{kUsage};
        }
    }
    return values;
}

int cmd_analyze(const std::string& path, const std::string& format, std::ostream& out,
                std::ostream& err) {
    const Digraph g = load_strongly_connected(path, err);
    const Decomposition dec = irreducible_components(g);
    const Classification cls = classify(dec);
    std::vector<std::size_t> sizes;
    for (const auto& b : dec.blocks) {
        sizes.push_back(b.size());
    }
    if (format == "json") {
        ordered_json j;
        j["n"] = g.size();
        j["edges"] = g.edge_count();
        j["strongly_connected"] = true;
        j["p_star"] = dec.p_star;
        j["block_sizes"] = sizes;
        j["kind"] = std::string(to_string(cls.kind));
        j["alpha"] = cls.alpha;
        out << j.dump(2) << "\n";
    } else {
        out << "n " << g.size() << "\nedges " << g.edge_count() << "\nstrongly_connected yes\n"
            << "p_star " << dec.p_star << "\nblocks";
        for (auto s : sizes) {
            out << " " << s;
        }
        out << "\nkind " << to_string(cls.kind) << "\nalpha " << cls.alpha << "\n";
    }
    return kOk;
}

int cmd_orbits(const std::string& path, const std::string& format, std::ostream& out,
               std::ostream& err) {
    const Digraph g = load_strongly_connected(path, err);
    const std::size_t p_star = loop_number(g);
    std::vector<Necklace> necklaces;
    try {
        necklaces = enumerate_necklaces(p_star);
    } catch (const CapExceeded& ex) {
        err << ex.what() << "\n";
        return kPrecondition;
    }
    std::map<std::size_t, std::uint64_t> period_formula, period_listed, density_formula,
        density_listed;
    for (std::size_t p = 1; p <= p_star; ++p) {
        if (p_star % p == 0) {
            period_formula[p] = count_orbits_of_period(p_star, p);
        }
    }
    for (std::size_t d = 0; d <= p_star; ++d) {
        density_formula[d] = count_fixed_density(p_star, d);
    }
    for (const auto& s : necklaces) {
        ++period_listed[order(s)];
        ++density_listed[sigma(s)];
    }
    const bool agree = period_formula == period_listed && density_formula == density_listed;
    if (format == "json") {
        ordered_json j;
        j["p_star"] = p_star;
        j["orbits"] = ordered_json::array();
        for (const auto& s : necklaces) {
            j["orbits"].push_back({{"necklace", s.rep()}, {"order", order(s)}, {"density", sigma(s)}});
        }
        j["per_period"] = count_json(period_formula);
        j["per_density"] = count_json(density_formula);
        j["counts_agree"] = agree;
        out << j.dump(2) << "\n";
    } else {
        out << "p_star " << p_star << "\nnecklace order density\n";
        for (const auto& s : necklaces) {
            out << s.rep() << " " << order(s) << " " << sigma(s) << "\n";
        }
        out << "orbits " << necklaces.size() << "\n"
            << "per_period formula " << count_map(period_formula) << " enumeration "
            << count_map(period_listed) << "\n"
            << "per_density formula " << count_map(density_formula) << " enumeration "
            << count_map(density_listed) << "\n"
            << "counts " << (agree ? "agree" : "DISAGREE") << "\n";
    }
    return agree ? kOk : kValidationFailed;
}

int cmd_stability(const std::string& path, const std::string& format, std::ostream& out,
                  std::ostream& err) {
    const Digraph g = load_strongly_connected(path, err);
    try {
        out << export_structure(transition_weights(g), parse_export_format(format));
    } catch (const CapExceeded& ex) {
        err << ex.what() << "\n";
        return kPrecondition;
    }
    return kOk;
}

int cmd_simulate(const std::string& path, const std::string& bits, std::optional<std::size_t> steps,
                 const std::string& format, std::ostream& out, std::ostream& err) {
    const Digraph g = load_strongly_connected(path, err);
    const State x0 = bits.empty() ? State(g.size()) : parse_state(bits, g, err);
    const Orbit orbit = find_orbit(g, x0);
    const std::size_t shown = steps.value_or(orbit.transient + orbit.period);
    std::vector<State> trajectory{x0};
    for (std::size_t t = 0; t < shown; ++t) {
        trajectory.push_back(step(g, trajectory.back()));
    }
    const Decomposition dec = irreducible_components(g);
    std::string necklace = "-";
    if (dec.p_star <= Necklace::kMaxLength) {
        necklace = orbit_to_necklace(dec, orbit.representative()).rep();
    }
    if (format == "json") {
        ordered_json j;
        j["trajectory"] = ordered_json::array();
        for (const auto& s : trajectory) {
            j["trajectory"].push_back(s.to_string());
        }
        j["transient"] = orbit.transient;
        j["period"] = orbit.period;
        j["orbit"] = ordered_json::array();
        for (const auto& s : orbit.states) {
            j["orbit"].push_back(s.to_string());
        }
        j["necklace"] = necklace;
        out << j.dump(2) << "\n";
    } else {
        for (std::size_t t = 0; t < trajectory.size(); ++t) {
            out << "t " << t << " " << trajectory[t].to_string() << "\n";
        }
        out << "transient " << orbit.transient << "\nperiod " << orbit.period << "\norbit "
            << states_line(orbit.states) << "\nnecklace " << necklace << "\n";
    }
    return kOk;
}

int cmd_perturb(const std::string& path, const std::string& bits, std::size_t flip,
                const std::string& format, std::ostream& out, std::ostream& err) {
    const Digraph g = load_strongly_connected(path, err);
    const State x = parse_state(bits, g, err);
    const Decomposition dec = irreducible_components(g);
    if (!is_periodic_state(dec, x)) {
        err << "state " << x.to_string() << " is not on a periodic orbit\n";
        return kPrecondition;
    }
    if (flip >= g.size()) {
        err << "flip index " << flip << " out of range for n = " << g.size() << "\n";
        return kUsage;
    }
    const State perturbed = flipped(x, flip);
    const Orbit reached = find_orbit(g, perturbed);
    const Necklace source = orbit_to_necklace(dec, x);
    const Necklace target = orbit_to_necklace(dec, reached.representative());
    const Necklace predicted = successor_after_flip(g, dec, x, static_cast<Vertex>(flip));
    if (format == "json") {
        ordered_json j;
        j["source"] = source.rep();
        j["perturbed"] = perturbed.to_string();
        j["target"] = target.rep();
        j["predicted"] = predicted.rep();
        j["path_length"] = reached.transient;
        j["period"] = reached.period;
        out << j.dump(2) << "\n";
    } else {
        out << "source " << source.rep() << "\nperturbed " << perturbed.to_string() << "\ntarget "
            << target.rep() << "\npredicted " << predicted.rep() << "\npath_length "
            << reached.transient << "\nperiod " << reached.period << "\n";
    }
    return target == predicted ? kOk : kValidationFailed;
}

int cmd_verify(const std::string& path, std::optional<std::size_t> max_n, const std::string& format,
               std::ostream& out, std::ostream& err) {
    const Digraph g = load_strongly_connected(path, err);
    oracle::Options options;
    options.max_n = max_n.value_or(default_oracle_cap());
    if (g.size() > options.max_n) {
        err << "refusing to run the exhaustive oracle on n = " << g.size() << " (cap "
            << options.max_n << "; raise it with --max-n or CBN_MAX_ORACLE_N)\n";
        return kPrecondition;
    }
    oracle::ValidationReport report;
    try {
        report = oracle::validate(g, options);
    } catch (const CapExceeded& ex) {
        err << ex.what() << "\n";
        return kPrecondition;
    }
    out << (format == "json" ? oracle::report_to_json(report) : oracle::report_to_table(report));
    return report.all_passed() ? kOk : kValidationFailed;
}

int cmd_generate(const std::string& kind, const std::string& params, const std::string& anchors,
                 std::uint64_t seed, const std::string& output, std::ostream& out,
                 std::ostream& err) {
    graphgen::GenSpec spec;
    Digraph g = [&] {
        try {
            spec.kind = graphgen::parse_gen_kind(kind);
            spec.params = parse_list<std::size_t>(params, err);
            spec.anchors = parse_list<Vertex>(anchors, err);
            spec.seed = seed;
            return graphgen::generate(spec);
        } catch (const PreconditionError& ex) {
            err << ex.what() << "\n";
            throw ExitWith{kUsage};
        }
    }();
    std::ostringstream text;
    text << "# generated: kind " << kind << " params " << params;
    if (!anchors.empty()) {
        text << " anchors " << anchors;
    }
    if (spec.kind == graphgen::GenKind::random) {
        text << " seed " << seed;
    }
    text << "\n" << format_edge_list(g);
    if (output.empty() || output == "-") {
        out << text.str();
    } else {
        std::ofstream file(output);
        if (!file) {
            err << "cannot write \"" << output << "\"\n";
            return kUsage;
        }
        file << text.str();
    }
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Conjunctive Boolean network analysis on strongly connected dependency graphs.\n"
                 "Graph files are edge lists: one \"u v\" line per edge u -> v, '#' comments, "
                 "optional \"n <count>\" header.\nStates are bit strings with vertex 0 first; "
                 "necklaces print as their least rotation."};
    app.require_subcommand(1);

    std::string path;
    std::string format = "text";
    std::string bits;
    std::optional<std::size_t> steps;
    std::size_t flip = 0;
    std::optional<std::size_t> max_n;
    std::string kind;
    std::string params;
    std::string anchors;
    std::uint64_t seed = 0;
    std::string output;

    auto add_graph = [&](CLI::App* sub) {
        sub->add_option("graph", path, "edge-list file")->required();
    };
    auto add_format = [&](CLI::App* sub, std::vector<std::string> choices) {
        sub->add_option("--format", format, "output format")->check(CLI::IsMember(choices));
    };

    auto* analyze = app.add_subcommand("analyze", "loop number, blocks and classification");
    add_graph(analyze);
    add_format(analyze, {"text", "json"});

    auto* orbits = app.add_subcommand("orbits", "periodic orbits as necklaces, with counts");
    add_graph(orbits);
    add_format(orbits, {"text", "json"});

    auto* stability = app.add_subcommand("stability", "stability structure with exact weights");
    add_graph(stability);
    add_format(stability, {"json", "dot", "table"});

    auto* simulate = app.add_subcommand("simulate", "iterate from a state until an orbit repeats");
    add_graph(simulate);
    simulate->add_option("--state", bits, "initial state, vertex 0 first (default all zeros)");
    simulate->add_option("--steps", steps, "trajectory length to print");
    add_format(simulate, {"text", "json"});

    auto* perturb = app.add_subcommand("perturb", "flip one entry of a periodic state");
    add_graph(perturb);
    perturb->add_option("--state", bits, "periodic state, vertex 0 first")->required();
    perturb->add_option("--flip", flip, "vertex to flip")->required();
    add_format(perturb, {"text", "json"});

    auto* verify = app.add_subcommand("verify", "cross-check every closed form against brute force");
    add_graph(verify);
    verify->add_option("--max-n", max_n, "oracle vertex cap (default 24 or CBN_MAX_ORACLE_N)");
    add_format(verify, {"text", "json"});

    auto* generate = app.add_subcommand("generate", "write a fixture graph as an edge list");
    generate->add_option("--kind", kind, "cycle, rose, bouquet, cactus or random")->required();
    generate->add_option("--params", params,
                         "cycle: L; rose: m,c; bouquet/cactus: lengths; random: n,extra")
        ->required();
    generate->add_option("--anchors", anchors, "cactus anchor vertices, one per extra cycle");
    generate->add_option("--seed", seed, "random seed");
    generate->add_option("-o,--output", output, "output file (default stdout)");

    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    if (argv.empty()) {
        argv.push_back("cbn");
    }
    // The stability default differs from the others.
    const bool stability_requested = args.size() > 1 && args[1] == "stability";
    format = stability_requested ? "table" : "text";
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(path, format, out, err);
        if (orbits->parsed()) return cmd_orbits(path, format, out, err);
        if (stability->parsed()) return cmd_stability(path, format, out, err);
        if (simulate->parsed()) return cmd_simulate(path, bits, steps, format, out, err);
        if (perturb->parsed()) return cmd_perturb(path, bits, flip, format, out, err);
        if (verify->parsed()) return cmd_verify(path, max_n, format, out, err);
        if (generate->parsed()) return cmd_generate(kind, params, anchors, seed, output, out, err);
    } catch (const ExitWith& e) {
        return e.code;
    } catch (const PreconditionError& ex) {
        err << ex.what() << "\n";
        return kPrecondition;
    } catch (const Error& ex) {
        err << ex.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

} // namespace cbn::cli
