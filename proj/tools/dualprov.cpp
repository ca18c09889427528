// dualprov: provenance of first-order sentences over finite structures.

#include "dualprov/analysis.hpp"
#include "dualprov/io.hpp"
#include "dualprov/oracle.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace dualprov;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct FormulaSource {
    std::string text;
    std::string file;

    void attach(CLI::App* cmd) {
        auto* a = cmd->add_option("-f,--formula", text, "sentence in the formula syntax");
        auto* b = cmd->add_option("--formula-file", file, "file holding the sentence");
        a->excludes(b);
    }

    Formula parse(const Domain& d) const {
        std::string src = file.empty() ? text : read_file(file);
        if (src.find_first_not_of(" \t\r\n") == std::string::npos)
            throw ParseError("no formula given (use --formula or --formula-file)");
        return parse_formula(src, d.vocabulary());
    }
};

struct Inputs {
    std::string structure, tracking;

    StructureFile load_structure() const {
        if (structure.empty())
            throw ParseError("--structure is required");
        return parse_structure(read_file(structure));
    }

    ProvenanceInterpretation load_tracking() const {
        if (tracking.empty())
            throw ParseError("--tracking is required");
        DomainPtr domain;
        if (!structure.empty())
            domain = load_structure().domain;
        return parse_tracking(read_file(tracking), domain);
    }
};

std::string render_real(double v) {
    char approx[32];
    std::snprintf(approx, sizeof approx, "%.6g", v);
    for (long den = 1; den <= 100000; ++den) {
        double num = std::round(v * den);
        if (std::fabs(num / den - v) <= 1e-12 * std::max(1.0, std::fabs(v))) {
            if (den == 1)
                return std::to_string(static_cast<long long>(num));
            return std::to_string(static_cast<long long>(num)) + "/" + std::to_string(den) + " ≈ " + approx;
        }
    }
    return approx;
}

std::set<Token> parse_tokens(const std::string& text) {
    std::set<Token> out;
    std::istringstream in(text);
    for (std::string w; in >> w;)
        for (std::size_t start = 0; start < w.size();) {
            auto comma = w.find(',', start);
            auto piece = w.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            if (!piece.empty())
                out.insert(Token::parse(piece));
            start = comma == std::string::npos ? w.size() : comma + 1;
        }
    return out;
}

void print_witness(const ModelWitness& w, const Domain& d) {
    std::cout << "# monomial " << w.monomial.to_string();
    if (w.coefficient != 1)
        std::cout << " (coefficient " << w.coefficient.str() << ")";
    std::cout << "\n# free";
    if (w.free_facts.empty())
        std::cout << " (none)";
    for (auto id : w.free_facts)
        std::cout << ' ' << d.fact(id).to_string();
    std::cout << '\n' << render_structure(w.model);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Provenance analysis of first-order sentences over finite structures"};
    app.require_subcommand(1);

    Inputs in;
    FormulaSource formula;
    std::string semiring = "bool", annotation, scores, levels, factored, kill, insert, erase;
    std::vector<std::string> binds;
    std::size_t cap = 64, tree_cap = 1 << 16;
    bool all = false, canonical = false, expanded = false, print_trees = false, show_model = false;

    auto* eval = app.add_subcommand("eval", "evaluate a formula in a semiring");
    eval->add_option("-s,--structure", in.structure, "structure file")->required();
    eval->add_option("-k,--semiring", semiring, "bool nat trop viterbi fuzzy access posbool dualpoly");
    eval->add_option("-a,--annotation", annotation, "literal annotations (default: the canonical interpretation)");
    eval->add_option("--bind", binds, "free variable binding x=a");
    formula.attach(eval);

    auto* prov = app.add_subcommand("provenance", "dual-indeterminate provenance polynomial");
    prov->add_option("-t,--tracking", in.tracking, "tracking file");
    prov->add_option("-s,--structure", in.structure, "structure file supplying the domain");
    prov->add_flag("--expanded", expanded, "print the expanded canonical form (the default)");
    prov->add_option("--factored-input", factored, "expand a polynomial expression instead");
    prov->add_option("--kill", kill, "tokens to set to 0 in the result");
    formula.attach(prov);

    auto* models = app.add_subcommand("models", "models read off the provenance monomials");
    models->add_option("-t,--tracking", in.tracking, "tracking file")->required();
    models->add_option("-s,--structure", in.structure, "structure file supplying the domain");
    auto* canon_flag = models->add_flag("--canonical", canonical, "free facts false (the default)");
    models->add_flag("--all", all, "every completion of the free facts")->excludes(canon_flag);
    models->add_option("--cap", cap, "maximum completions per monomial");
    formula.attach(models);

    auto* maximize = app.add_subcommand("maximize", "most confident monomial and its model");
    maximize->add_option("-t,--tracking", in.tracking, "tracking file")->required();
    maximize->add_option("-s,--structure", in.structure, "structure file supplying the domain");
    maximize->add_option("-c,--scores", scores, "confidence score file")->required();
    formula.attach(maximize);

    auto* update = app.add_subcommand("update", "provenance after inserting or deleting facts");
    update->add_option("-t,--tracking", in.tracking, "tracking file")->required();
    update->add_option("-s,--structure", in.structure, "current structure")->required();
    update->add_option("--insert", insert, "facts to insert");
    update->add_option("--delete", erase, "facts to delete");
    update->add_flag("--show-model", show_model, "also print the new structure");
    formula.attach(update);

    auto* oracle = app.add_subcommand("oracle", "count proof trees by enumeration");
    oracle->add_option("-t,--tracking", in.tracking, "tracking file");
    oracle->add_option("-s,--structure", in.structure, "structure file (used alone: its truth interpretation)");
    oracle->add_option("--cap", tree_cap, "maximum number of trees");
    oracle->add_flag("--print-trees", print_trees, "print every tree");
    formula.attach(oracle);

    auto* clear = app.add_subcommand("clearance", "access level of the sentence and of each monomial");
    clear->add_option("-t,--tracking", in.tracking, "tracking file")->required();
    clear->add_option("-s,--structure", in.structure, "structure file supplying the domain");
    clear->add_option("-l,--levels", levels, "clearance score file")->required();
    formula.attach(clear);

    auto* hom = app.add_subcommand("hom", "apply a token assignment to the provenance");
    hom->add_option("-t,--tracking", in.tracking, "tracking file")->required();
    hom->add_option("-s,--structure", in.structure, "structure file supplying the domain");
    hom->add_option("-k,--semiring", semiring, "target semiring");
    hom->add_option("-c,--scores", scores, "token assignment file")->required();
    formula.attach(hom);

    auto* check = app.add_subcommand("check", "satisfiability and validity under the tracking assumptions");
    check->add_option("-t,--tracking", in.tracking, "tracking file")->required();
    check->add_option("-s,--structure", in.structure, "structure file supplying the domain");
    formula.attach(check);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (eval->parsed()) {
            auto sf = in.load_structure();
            auto phi = formula.parse(*sf.domain);
            Valuation nu;
            for (const auto& b : binds) {
                auto eq = b.find('=');
                if (eq == std::string::npos)
                    throw ParseError("expected --bind x=a, got '" + b + "'");
                nu.bindings[b.substr(0, eq)] = b.substr(eq + 1);
            }
            std::cout << visit_semiring(semiring_from_name(semiring), [&]<class S>(S) {
                auto pi = annotation.empty() ? canonical_interpretation<S>(sf.structure)
                                             : parse_annotation<S>(read_file(annotation), sf.domain);
                return S::format(evaluate(pi, phi, nu));
            }) << '\n';
        } else if (prov->parsed()) {
            DualPolynomial p;
            if (!factored.empty()) {
                p = DualPolynomial::parse(factored);
            } else {
                auto pi = in.load_tracking();
                p = provenance(pi, formula.parse(*pi.domain()));
            }
            if (!kill.empty())
                p = p.substitute_zero(parse_tokens(kill));
            std::cout << p.to_string() << '\n';
        } else if (models->parsed()) {
            TrackingAssumptions t(in.load_tracking());
            auto phi = formula.parse(*t.domain());
            auto ws = witnesses(t, phi, all ? Completion::enumerate(cap) : Completion::canonical());
            for (std::size_t i = 0; i < ws.size(); ++i) {
                if (i)
                    std::cout << '\n';
                print_witness(ws[i], *t.domain());
            }
        } else if (maximize->parsed()) {
            TrackingAssumptions t(in.load_tracking());
            auto phi = formula.parse(*t.domain());
            auto r = maximize_confidence(t, phi, parse_scores<ViterbiSemiring>(read_file(scores)));
            std::cout << r.monomial.to_string() << "  " << render_real(r.value) << '\n';
            for (const auto& s : r.scores)
                std::cout << "# " << s.monomial.to_string() << "  " << render_real(s.value) << '\n';
            print_witness(r.witness, *t.domain());
        } else if (update->parsed()) {
            auto sf = in.load_structure();
            TrackingAssumptions t(parse_tracking(read_file(in.tracking), sf.domain));
            auto phi = formula.parse(*t.domain());
            auto r = update_model(t, sf.structure, parse_fact_list(insert), parse_fact_list(erase), phi);
            std::cout << r.polynomial.to_string() << '\n';
            if (show_model)
                std::cout << render_structure(r.model);
        } else if (oracle->parsed()) {
            ProvenanceInterpretation pi =
                in.tracking.empty() ? truth_lift(in.load_structure().structure) : in.load_tracking();
            auto phi = formula.parse(*pi.domain());
            auto trees = enumerate_trees(pi, phi, tree_cap);
            std::cout << trees.size() << '\n';
            if (print_trees)
                for (std::size_t i = 0; i < trees.size(); ++i)
                    std::cout << "\n# tree " << i + 1 << ": " << tree_monomial(*trees[i], pi).to_string() << '\n'
                              << render_tree(*trees[i]);
        } else if (clear->parsed()) {
            auto pi = in.load_tracking();
            auto phi = formula.parse(*pi.domain());
            auto r = clearance(pi, phi, parse_scores<AccessSemiring>(read_file(levels)));
            std::cout << to_string(r.overall) << '\n';
            for (const auto& [m, level] : r.per_monomial)
                std::cout << "# " << m.to_string() << "  " << to_string(level) << '\n';
        } else if (hom->parsed()) {
            auto pi = in.load_tracking();
            auto p = provenance(pi, formula.parse(*pi.domain()));
            auto declared = declared_tokens(pi);
            std::cout << visit_semiring(semiring_from_name(semiring), [&]<class S>(S) {
                return S::format(eval_hom(p, parse_scores<S>(read_file(scores)), declared));
            }) << '\n';
        } else if (check->parsed()) {
            TrackingAssumptions t(in.load_tracking());
            auto phi = formula.parse(*t.domain());
            std::cout << "satisfiable " << (check_satisfiability(t, phi) ? "yes" : "no") << '\n'
                      << "valid " << (check_validity(t, phi) ? "yes" : "no") << '\n';
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const SemanticError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << '\n';
        return 4;
    }
    return 0;
}
