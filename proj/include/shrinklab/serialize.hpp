#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <utility>

#include "json.hpp"
#include "shrinklab/derivation.hpp"
#include "shrinklab/grammar.hpp"
#include "shrinklab/grammar_text.hpp"
#include "shrinklab/refutation.hpp"
#include "shrinklab/shrink.hpp"

namespace shrinklab {

// ordered_json keeps insertion order, so identical inputs dump to identical
// bytes.
using json = nlohmann::ordered_json;

inline json item_to_json(const Grammar& g, const FormItem& item) {
    json out;
    if (is_terminal(item)) {
        out["t"] = g.terminal_name(std::get<TerminalSym>(item).id);
        return out;
    }
    const auto& nt = std::get<NonterminalSym>(item);
    out["nt"] = g.nonterminal_name(nt.id);
    json stack = json::array();
    for (SymbolId f : nt.stack) {
        stack.push_back(g.index_name(f));
    }
    out["stack"] = std::move(stack);
    return out;
}

inline json tree_to_json(const Grammar& g, const DerivationTree& t, Vertex v) {
    const TreeNode& node = t.node(v);
    json out;
    out["label"] = item_to_json(g, node.label);
    if (node.production) {
        out["prod"] = *node.production;
    }
    if (!node.children.empty()) {
        json children = json::array();
        for (Vertex c : node.children) {
            children.push_back(tree_to_json(g, t, c));
        }
        out["children"] = std::move(children);
    }
    return out;
}

inline json tree_to_json(const Grammar& g, const DerivationTree& t) {
    return tree_to_json(g, t, t.root());
}

namespace detail {

inline std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    return out;
}

}  // namespace detail

// Same nodes and edges as the JSON form, one statement per vertex in preorder.
inline std::string tree_to_dot(const Grammar& g, const DerivationTree& t) {
    std::ostringstream out;
    out << "digraph derivation {\n";
    out << "  node [shape=box];\n";
    std::vector<Vertex> order = t.preorder();
    for (Vertex v : order) {
        const TreeNode& node = t.node(v);
        out << "  n" << v << " [label=\"" << detail::dot_escape(format_item(g, node.label))
            << "\"";
        if (is_terminal(node.label)) {
            out << ", shape=plaintext";
        }
        out << "];\n";
    }
    for (Vertex v : order) {
        for (Vertex c : t.node(v).children) {
            out << "  n" << v << " -> n" << c << ";\n";
        }
    }
    out << "}\n";
    return out.str();
}

inline const char* origin_kind_name(FactorOrigin::Kind kind) {
    switch (kind) {
        case FactorOrigin::Kind::left_context:
            return "left_context";
        case FactorOrigin::Kind::unit:
            return "unit";
        case FactorOrigin::Kind::right_context:
            return "right_context";
    }
    return "unit";
}

inline json factorization_to_json(const Grammar& g, const Factorization& f) {
    json out;
    json factors = json::array();
    for (const Word& u : f.factors) {
        factors.push_back(format_word(g, u));
    }
    out["factors"] = std::move(factors);
    json origins = json::array();
    for (const FactorOrigin& o : f.origins) {
        json jo;
        jo["kind"] = origin_kind_name(o.kind);
        if (o.symbol) {
            jo["symbol"] = format_gsym(g, *o.symbol);
        }
        if (o.unit_vertex) {
            jo["vertex"] = *o.unit_vertex;
        }
        origins.push_back(std::move(jo));
    }
    out["origins"] = std::move(origins);
    out["vertex"] = f.vertex;
    return out;
}

inline json certificate_to_json(const Grammar& g, const ShrinkCertificate& cert) {
    json out = factorization_to_json(g, cert.factorization);
    out["distinguished"] = cert.distinguished;
    out["kept"] = cert.kept;
    json alpha = json::array();
    for (const GSym& s : cert.alpha) {
        alpha.push_back(format_gsym(g, s));
    }
    out["alpha"] = std::move(alpha);
    out["v"] = format_word(g, cert.v);
    out["witness"] = tree_to_json(g, cert.membership_witness);
    return out;
}

inline json chain_to_json(const Grammar& g, const ChainResult& chain) {
    json out;
    json words = json::array();
    for (const Word& w : chain.words) {
        words.push_back(format_word(g, w));
    }
    out["words"] = std::move(words);
    json certs = json::array();
    for (const ShrinkCertificate& cert : chain.certificates) {
        certs.push_back(certificate_to_json(g, cert));
    }
    out["certificates"] = std::move(certs);
    return out;
}

inline json report_to_json(const Grammar& g, const TheoremReport& report) {
    json out;
    out["w"] = format_word(g, report.w);
    out["m"] = report.m;
    out["r"] = report.r;
    out["k"] = report.k;
    out["passed"] = report.passed;
    out["message"] = report.message;
    json outcomes = json::array();
    for (const SubsetOutcome& o : report.outcomes) {
        json jo;
        jo["subset"] = o.subset;
        if (o.v) {
            jo["v"] = format_word(g, *o.v);
        }
        jo["passed"] = o.passed;
        jo["message"] = o.message;
        outcomes.push_back(std::move(jo));
    }
    out["outcomes"] = std::move(outcomes);
    return out;
}

inline const char* refutation_status_name(RefutationStatus status) {
    switch (status) {
        case RefutationStatus::no_valid_decomposition:
            return "no_valid_decomposition";
        case RefutationStatus::decomposition_found:
            return "decomposition_found";
        case RefutationStatus::inconclusive:
            return "inconclusive";
    }
    return "inconclusive";
}

inline json verdict_to_json(const RefutationVerdict& verdict) {
    json out;
    out["status"] = refutation_status_name(verdict.status);
    out["factorizations"] = verdict.factorizations;
    out["subproducts"] = verdict.subproducts;
    if (verdict.decomposition) {
        json d;
        d["factors"] = verdict.decomposition->factors;
        json witnesses = json::array();
        for (const auto& [subset, kept] : verdict.decomposition->witnesses) {
            json jw;
            jw["subset"] = subset;
            jw["kept"] = kept;
            witnesses.push_back(std::move(jw));
        }
        d["witnesses"] = std::move(witnesses);
        out["decomposition"] = std::move(d);
    }
    return out;
}

}  // namespace shrinklab
