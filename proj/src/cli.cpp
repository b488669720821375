#include "gtx/cli.hpp"

#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gtx/bc.hpp"
#include "gtx/canonical.hpp"
#include "gtx/composition.hpp"
#include "gtx/dot.hpp"
#include "gtx/errors.hpp"
#include "gtx/sos.hpp"
#include "gtx/system_doc.hpp"

namespace gtx::cli {

namespace {

using nlohmann::json;

struct Options {
    std::string format = "text";
    bool json() const { return format == "json"; }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string label_summary(const Label& lbl) {
    return "J=" + to_string(lbl.j) + " F=" + to_string(lbl.f) + " K=" + to_string(lbl.k);
}

std::set<std::string> edge_labels(const Hypergraph& g) {
    std::set<std::string> out;
    for (const auto& [e, data] : g.edges()) out.insert(data.label);
    return out;
}

const State& named_state(const SystemDocument& doc, const std::string& name) {
    auto it = doc.states.find(name);
    if (it == doc.states.end()) throw DomainError("unknown state " + name);
    return it->second;
}

const Hypergraph& named_graph(const SystemDocument& doc, const std::string& name) {
    auto it = doc.graphs.find(name);
    if (it == doc.graphs.end()) throw DomainError("unknown graph " + name);
    return it->second;
}

Transition transition_by_id(const SystemDocument& doc, const Gts& s, const std::string& id) {
    auto colon = id.rfind(':');
    if (colon == std::string::npos)
        throw DomainError("transition id must look like STATE:INDEX");
    std::string state_name = id.substr(0, colon);
    std::size_t index = 0;
    try {
        index = std::stoul(id.substr(colon + 1));
    } catch (const std::exception&) {
        throw DomainError("bad transition index in '" + id + "'");
    }
    const State& st = named_state(doc, state_name);
    EnumerationResult res = enumerate_transitions(s, st);
    if (index >= res.transitions.size())
        throw DomainError("state " + state_name + " has only " +
                          std::to_string(res.transitions.size()) + " transitions");
    return res.transitions[index];
}

int cmd_validate(const Options& opt, const std::string& file, std::ostream& out) {
    SystemDocument doc = parse_system(slurp(file));
    doc.gts();
    if (opt.json()) {
        json o{{"cmd", "validate"},
               {"graphs", doc.graphs.size()},
               {"rules", doc.rules.size()},
               {"states", doc.states.size()}};
        out << o.dump() << "\n";
    } else {
        out << "OK graphs=" << doc.graphs.size() << " rules=" << doc.rules.size()
            << " states=" << doc.states.size() << "\n";
    }
    return 0;
}

int cmd_rewrite(const Options& opt, const std::string& file, const std::string& graph,
                const std::string& rule, std::ostream& out) {
    SystemDocument doc = parse_system(slurp(file));
    Gts s = doc.gts();
    const Hypergraph& host = named_graph(doc, graph);
    std::vector<RewriteStep> steps;
    if (rule.empty()) {
        steps = enumerate_rewrites(s, host);
    } else {
        for (const Morphism& m : find_monos(s.rule(rule).left, host)) {
            try {
                steps.push_back(rewrite(s, host, rule, m));
            } catch (const DanglingError&) {
            }
        }
    }
    for (const RewriteStep& step : steps) {
        if (opt.json()) {
            json o{{"cmd", "rewrite"}, {"rule", step.rule}, {"result", to_string(step.result)}};
            out << o.dump() << "\n";
        } else {
            out << "rewrite " << step.rule << " -> " << to_string(step.result) << "\n";
        }
    }
    if (!opt.json()) out << "total " << steps.size() << "\n";
    return 0;
}

int cmd_lts(const Options& opt, const std::string& file, const std::string& state, int depth,
            bool allow_node_only, std::ostream& out) {
    SystemDocument doc = parse_system(slurp(file));
    Gts s = doc.gts();
    EnumOptions eopts{allow_node_only};

    std::vector<State> states{named_state(doc, state)};
    std::map<std::string, std::size_t> index{{state_key(states[0]), 0}};
    struct Arc {
        std::size_t from;
        std::string label;
        bool silent;
        std::size_t to;
    };
    std::vector<Arc> arcs;
    std::size_t explored = 0;
    for (int level = 0; level < depth; ++level) {
        std::size_t end = states.size();
        for (; explored < end; ++explored) {
            EnumerationResult res = enumerate_transitions(s, states[explored], eopts);
            for (const Transition& t : res.transitions) {
                std::string key = state_key(t.target);
                auto [it, fresh] = index.emplace(key, states.size());
                if (fresh) states.push_back(t.target);
                arcs.push_back(Arc{explored, label_summary(t.label), is_silent(t), it->second});
            }
        }
    }

    if (opt.format == "dot") {
        out << "digraph lts {\n";
        for (std::size_t i = 0; i < states.size(); ++i)
            out << "  s" << i << " [label=\"" << to_string(states[i].graph) << "\"];\n";
        for (const Arc& a : arcs)
            out << "  s" << a.from << " -> s" << a.to << " [label=\""
                << (a.silent ? std::string("tau") : a.label) << "\"];\n";
        out << "}\n";
        return 0;
    }
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (opt.json()) {
            json o{{"cmd", "lts"},
                   {"state", i},
                   {"interface", to_string(states[i].interface_)},
                   {"graph", to_string(states[i].graph)}};
            out << o.dump() << "\n";
        } else {
            out << "state " << i << " interface=" << to_string(states[i].interface_)
                << " graph=" << to_string(states[i].graph) << "\n";
        }
    }
    for (const Arc& a : arcs) {
        if (opt.json()) {
            json o{{"cmd", "lts"},
                   {"from", a.from},
                   {"label", a.label},
                   {"silent", a.silent},
                   {"to", a.to}};
            out << o.dump() << "\n";
        } else {
            out << "trans " << a.from << " --[" << (a.silent ? "tau | " : "") << a.label
                << "]--> " << a.to << "\n";
        }
    }
    return 0;
}

int cmd_equiv(const Options& opt, const std::string& file, const std::string& state,
              bool allow_node_only, std::ostream& out) {
    SystemDocument doc = parse_system(slurp(file));
    Gts s = doc.gts();
    EquivalenceReport report =
        check_equivalence(s, named_state(doc, state), EnumOptions{allow_node_only});
    if (opt.json()) {
        json o{{"cmd", "equiv"},
               {"state", state},
               {"equal", report.equal},
               {"n", report.count},
               {"missing", report.missing.size()},
               {"extra", report.extra.size()}};
        out << o.dump() << "\n";
    } else if (report.equal) {
        out << "EQUAL n=" << report.count << "\n";
    } else {
        out << "MISMATCH missing=" << report.missing.size() << " extra=" << report.extra.size()
            << "\n";
        for (const Transition& t : report.missing)
            out << "missing " << label_summary(t.label) << " target "
                << to_string(t.target.graph) << "\n";
        for (const Transition& t : report.extra)
            out << "extra " << label_summary(t.label) << " target " << to_string(t.target.graph)
                << "\n";
    }
    return report.equal ? 0 : 1;
}

int cmd_active_pairs(const Options& opt, const std::string& file, std::ostream& out) {
    SystemDocument doc = parse_system(slurp(file));
    Gts s = doc.gts();
    std::vector<ActivePair> pairs = active_pairs(s);
    for (const ActivePair& p : pairs) {
        std::ostringstream d_labels, dhat_labels;
        for (const auto& l : edge_labels(p.d)) d_labels << l << ' ';
        for (const auto& l : edge_labels(p.d_hat)) dhat_labels << l << ' ';
        if (opt.json()) {
            json o{{"cmd", "active-pairs"},
                   {"rule", p.rule},
                   {"d", to_string(p.d)},
                   {"d_hat", to_string(p.d_hat)},
                   {"interface_nodes", p.interface_.node_count()}};
            out << o.dump() << "\n";
        } else {
            out << "pair rule=" << p.rule << " d={" << d_labels.str() << "} dhat={"
                << dhat_labels.str() << "} interface=" << p.interface_.node_count()
                << " nodes\n";
        }
    }
    if (!opt.json()) out << "total " << pairs.size() << "\n";
    return 0;
}

int cmd_classify(const Options& opt, const std::string& file, const std::string& states_csv,
                 std::ostream& out) {
    SystemDocument doc = parse_system(slurp(file));
    Gts s = doc.gts();
    std::vector<State> corpus;
    if (states_csv.empty()) {
        for (const auto& [name, st] : doc.states) corpus.push_back(st);
    } else {
        std::istringstream ss(states_csv);
        std::string name;
        while (std::getline(ss, name, ','))
            corpus.push_back(named_state(doc, name));
    }
    SystemClass cls = classify(s, corpus);
    auto flag = [&](const char* name, bool value) {
        if (opt.json()) return; // gathered below
        out << name << "=" << (value ? "true" : "false");
        auto it = cls.notes.find(name);
        if (it != cls.notes.end()) out << "  # " << it->second;
        out << "\n";
    };
    if (opt.json()) {
        json o{{"cmd", "classify"},
               {"interaction_system", cls.interaction_system},
               {"simply_wired_states", cls.simply_wired_states},
               {"lafont", cls.lafont},
               {"partitioned", cls.partitioned},
               {"unique_partners", cls.unique_partners},
               {"complementarity_of_actions", cls.complementarity_of_actions}};
        out << o.dump() << "\n";
    } else {
        flag("interaction_system", cls.interaction_system);
        flag("simply_wired_states", cls.simply_wired_states);
        flag("lafont", cls.lafont);
        flag("partitioned", cls.partitioned);
        flag("unique_partners", cls.unique_partners);
        flag("complementarity_of_actions", cls.complementarity_of_actions);
    }
    return 0;
}

int cmd_admissible(const Options& opt, const std::string& file, const std::string& state,
                   const std::string& borrow, std::ostream& out) {
    SystemDocument doc = parse_system(slurp(file));
    Gts s = doc.gts();
    const State& st = named_state(doc, state);
    const Hypergraph& f = named_graph(doc, borrow);
    std::vector<Admissibility> records = admissible_rules(s, st, f);
    std::set<std::string> rules;
    for (const Admissibility& a : records) {
        rules.insert(a.rule);
        std::ostringstream labels;
        for (const auto& l : edge_labels(a.addition)) labels << l << ' ';
        std::ostringstream routing;
        for (const auto& [v, img] : a.routing) routing << v << "->" << img << ' ';
        if (opt.json()) {
            json o{{"cmd", "admissible"},
                   {"rule", a.rule},
                   {"addition", to_string(a.addition)},
                   {"routing", routing.str()}};
            out << o.dump() << "\n";
        } else {
            out << "admissible rule=" << a.rule << " addition={" << labels.str() << "} routing "
                << routing.str() << "\n";
        }
    }
    if (!opt.json()) out << "total rules=" << rules.size() << " records=" << records.size() << "\n";
    return 0;
}

int cmd_compose(const Options& opt, const std::string& file, const std::string& t1_id,
                const std::string& t2_id, std::ostream& out) {
    SystemDocument doc = parse_system(slurp(file));
    Gts s = doc.gts();
    Transition t1 = transition_by_id(doc, s, t1_id);
    Transition t2 = transition_by_id(doc, s, t2_id);
    Transition composed = compose_tau(s, t1, t2);
    if (opt.json()) {
        json o{{"cmd", "compose"},
               {"interface", to_string(composed.source.interface_)},
               {"source", to_string(composed.source.graph)},
               {"target", to_string(composed.target.graph)},
               {"silent", is_silent(composed)}};
        out << o.dump() << "\n";
    } else {
        out << "composed tau: interface=" << to_string(composed.source.interface_)
            << "\n  source=" << to_string(composed.source.graph)
            << "\n  target=" << to_string(composed.target.graph) << "\n";
    }
    return 0;
}

int cmd_export_dot(const std::string& file, const std::string& object, const std::string& output,
                   std::ostream& out) {
    SystemDocument doc = parse_system(slurp(file));
    std::string dot;
    if (doc.graphs.contains(object))
        dot = to_dot(doc.graphs.at(object), object);
    else if (doc.rules.contains(object))
        dot = to_dot(doc.rules.at(object));
    else if (doc.states.contains(object))
        dot = to_dot(doc.states.at(object), object);
    else
        throw DomainError("unknown object " + object);
    if (output.empty() || output == "-") {
        out << dot;
    } else {
        std::ofstream os(output, std::ios::binary);
        if (!os) throw DomainError("cannot write " + output);
        os << dot;
    }
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"hypergraph rewriting workbench"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"text", "json", "dot"}))
        ->capture_default_str();

    std::string file, graph, rule, state, borrow, states_csv, object, output, t1, t2;
    int depth = 1;
    bool allow_node_only = false;

    auto* validate_cmd = app.add_subcommand("validate", "parse and validate a file");
    validate_cmd->add_option("file", file)->required();

    auto* rewrite_cmd = app.add_subcommand("rewrite", "apply rules to a graph");
    rewrite_cmd->add_option("file", file)->required();
    rewrite_cmd->add_option("--graph", graph)->required();
    rewrite_cmd->add_option("--rule", rule);

    auto* lts_cmd = app.add_subcommand("lts", "enumerate borrowed-context transitions");
    lts_cmd->add_option("file", file)->required();
    lts_cmd->add_option("--state", state)->required();
    lts_cmd->add_option("--depth", depth);
    lts_cmd->add_flag("--allow-node-only-matches", allow_node_only);

    auto* equiv_cmd = app.add_subcommand("equiv", "compare enumeration against derivation");
    equiv_cmd->add_option("file", file)->required();
    equiv_cmd->add_option("--state", state)->required();
    equiv_cmd->add_flag("--allow-node-only-matches", allow_node_only);

    auto* pairs_cmd = app.add_subcommand("active-pairs", "list active pairs");
    pairs_cmd->add_option("file", file)->required();

    auto* classify_cmd = app.add_subcommand("classify", "compute system class flags");
    classify_cmd->add_option("file", file)->required();
    classify_cmd->add_option("--states", states_csv);

    auto* adm_cmd = app.add_subcommand("admissible", "rules admissible for a borrow");
    adm_cmd->add_option("file", file)->required();
    adm_cmd->add_option("--state", state)->required();
    adm_cmd->add_option("--borrow", borrow)->required();

    auto* compose_cmd = app.add_subcommand("compose", "compose two transitions");
    compose_cmd->add_option("file", file)->required();
    compose_cmd->add_option("--t1", t1)->required();
    compose_cmd->add_option("--t2", t2)->required();

    auto* dot_cmd = app.add_subcommand("export-dot", "render an object as graphviz");
    dot_cmd->add_option("file", file)->required();
    dot_cmd->add_option("--object", object)->required();
    dot_cmd->add_option("-o,--output", output);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (*validate_cmd) return cmd_validate(opt, file, out);
        if (*rewrite_cmd) return cmd_rewrite(opt, file, graph, rule, out);
        if (*lts_cmd) return cmd_lts(opt, file, state, depth, allow_node_only, out);
        if (*equiv_cmd) return cmd_equiv(opt, file, state, allow_node_only, out);
        if (*pairs_cmd) return cmd_active_pairs(opt, file, out);
        if (*classify_cmd) return cmd_classify(opt, file, states_csv, out);
        if (*adm_cmd) return cmd_admissible(opt, file, state, borrow, out);
        if (*compose_cmd) return cmd_compose(opt, file, t1, t2, out);
        if (*dot_cmd) return cmd_export_dot(file, object, output, out);
    } catch (const ParseError& e) {
        if (opt.json()) {
            nlohmann::json o{{"error", "parse"}, {"line", e.line}, {"column", e.column},
                             {"message", e.what()}};
            err << o.dump() << "\n";
        } else {
            err << "error: " << e.what() << "\n";
        }
        return 1;
    } catch (const DomainError& e) {
        if (opt.json()) {
            nlohmann::json o{{"error", "domain"}, {"message", e.what()}};
            err << o.dump() << "\n";
        } else {
            err << "error: " << e.what() << "\n";
        }
        return 1;
    }
    return 2;
}

} // namespace gtx::cli
