#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "shrinklab/grammar.hpp"

namespace shrinklab {

namespace detail {

struct Token {
    std::string text;
    std::size_t line = 0;
    std::size_t col = 0;
};

// Tokens are maximal runs of non-space characters, except that '[' and ']'
// always stand alone and "->" splits a run, so "A[f]->B C" works unspaced.
inline std::vector<Token> tokenize_line(std::string_view text, std::size_t line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == '#') {
            break;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (c == '[' || c == ']') {
            ++i;
        } else if (text.compare(i, 2, "->") == 0) {
            i += 2;
        } else {
            while (i < text.size()) {
                char d = text[i];
                if (std::isspace(static_cast<unsigned char>(d)) || d == '[' || d == ']' ||
                    d == '#' || text.compare(i, 2, "->") == 0) {
                    break;
                }
                ++i;
            }
        }
        tokens.push_back(Token{std::string(text.substr(start, i - start)), line, start + 1});
    }
    return tokens;
}

class GrammarParser {
public:
    explicit GrammarParser(std::string_view text) : text_(text) {}

    Grammar run() {
        std::size_t line_no = 0;
        std::size_t pos = 0;
        while (pos <= text_.size()) {
            std::size_t eol = text_.find('\n', pos);
            if (eol == std::string_view::npos) {
                eol = text_.size();
            }
            ++line_no;
            last_line_ = line_no;
            std::vector<Token> tokens = tokenize_line(text_.substr(pos, eol - pos), line_no);
            if (!tokens.empty()) {
                parse_line(tokens);
            }
            if (eol == text_.size()) {
                break;
            }
            pos = eol + 1;
        }
        finish();
        grammar_.validate();
        return grammar_;
    }

private:
    void parse_line(const std::vector<Token>& tokens) {
        const Token& head = tokens[0];
        if (head.text == "terminals:" || head.text == "nonterminals:" || head.text == "indices:") {
            parse_alphabet(tokens);
        } else if (head.text == "start:") {
            parse_start(tokens);
        } else if (!head.text.empty() && head.text.back() == ':') {
            throw ParseError(head.line, head.col, "unknown directive '" + head.text + "'");
        } else {
            parse_production(tokens);
        }
    }

    void parse_alphabet(const std::vector<Token>& tokens) {
        const Token& head = tokens[0];
        require_directive_position(head);
        std::vector<std::string>* names = nullptr;
        bool* seen = nullptr;
        if (head.text == "terminals:") {
            names = &grammar_.terminal_names;
            seen = &have_terminals_;
        } else if (head.text == "nonterminals:") {
            names = &grammar_.nonterminal_names;
            seen = &have_nonterminals_;
        } else {
            names = &grammar_.index_names;
            seen = &have_indices_;
        }
        if (*seen) {
            throw ParseError(head.line, head.col, "duplicate directive '" + head.text + "'");
        }
        *seen = true;
        for (std::size_t i = 1; i < tokens.size(); ++i) {
            const Token& tok = tokens[i];
            if (tok.text == "[" || tok.text == "]" || tok.text == "->") {
                throw ParseError(tok.line, tok.col,
                                 "expected a symbol name, got '" + tok.text + "'");
            }
            if (tok.text == "eps") {
                throw ParseError(tok.line, tok.col, "'eps' is reserved and cannot be declared");
            }
            if (declared(tok.text)) {
                throw ParseError(tok.line, tok.col, "symbol '" + tok.text + "' declared twice");
            }
            names->push_back(tok.text);
        }
    }

    void parse_start(const std::vector<Token>& tokens) {
        const Token& head = tokens[0];
        require_directive_position(head);
        if (have_start_) {
            throw ParseError(head.line, head.col, "duplicate directive 'start:'");
        }
        if (tokens.size() != 2 || tokens[1].text == "[" || tokens[1].text == "]" ||
            tokens[1].text == "->") {
            throw ParseError(head.line, head.col, "'start:' takes exactly one nonterminal name");
        }
        have_start_ = true;
        start_token_ = tokens[1];
    }

    void require_directive_position(const Token& head) {
        if (saw_production_) {
            throw ParseError(head.line, head.col,
                             "directive '" + head.text + "' must come before all productions");
        }
    }

    void parse_production(const std::vector<Token>& tokens) {
        if (!saw_production_) {
            finish_directives(tokens[0]);
            saw_production_ = true;
        }

        std::size_t i = 0;
        auto peek = [&]() -> const Token* { return i < tokens.size() ? &tokens[i] : nullptr; };
        auto at_end_error = [&](const std::string& what) {
            const Token& last = tokens.back();
            return ParseError(last.line, last.col + last.text.size(), what);
        };

        const Token& lhs_tok = tokens[i++];
        if (lhs_tok.text == "[" || lhs_tok.text == "]" || lhs_tok.text == "->") {
            throw ParseError(lhs_tok.line, lhs_tok.col, "expected a nonterminal name");
        }
        std::optional<SymbolId> lhs = grammar_.find_nonterminal(lhs_tok.text);
        if (!lhs) {
            if (grammar_.find_terminal(lhs_tok.text)) {
                throw ParseError(lhs_tok.line, lhs_tok.col,
                                 "left-hand side '" + lhs_tok.text + "' is a terminal");
            }
            throw ParseError(lhs_tok.line, lhs_tok.col,
                             "unknown nonterminal '" + lhs_tok.text + "'");
        }

        Production prod;
        prod.lhs = *lhs;

        if (peek() && peek()->text == "[") {
            const Token& open = *peek();
            ++i;
            std::vector<SymbolId> indices = parse_index_list(tokens, i, open);
            if (indices.size() != 1) {
                throw ParseError(open.line, open.col,
                                 "a left-hand side pops exactly one index");
            }
            prod.pop_index = indices[0];
        }

        if (!peek()) {
            throw at_end_error("expected '->'");
        }
        if (peek()->text != "->") {
            throw ParseError(peek()->line, peek()->col, "expected '->'");
        }
        ++i;

        if (!peek()) {
            throw at_end_error("expected a right-hand side");
        }

        if (peek()->text == "eps") {
            const Token& eps_tok = *peek();
            ++i;
            if (peek()) {
                throw ParseError(peek()->line, peek()->col, "'eps' must stand alone");
            }
            if (prod.pop_index) {
                throw ParseError(eps_tok.line, eps_tok.col,
                                 "'eps' cannot be combined with a pop");
            }
            if (prod.lhs != start_id_) {
                throw ParseError(eps_tok.line, eps_tok.col,
                                 "'eps' is only allowed for the start symbol");
            }
            grammar_.productions.push_back(std::move(prod));
            return;
        }

        while (peek()) {
            const Token& tok = *peek();
            if (tok.text == "[" || tok.text == "]" || tok.text == "->" || tok.text == "eps") {
                throw ParseError(tok.line, tok.col, "expected a symbol name, got '" + tok.text + "'");
            }
            ++i;
            if (auto t = grammar_.find_terminal(tok.text)) {
                if (peek() && peek()->text == "[") {
                    throw ParseError(peek()->line, peek()->col,
                                     "terminal '" + tok.text + "' cannot carry indices");
                }
                prod.rhs.push_back(TerminalSym{*t});
                continue;
            }
            auto nt = grammar_.find_nonterminal(tok.text);
            if (!nt) {
                throw ParseError(tok.line, tok.col, "unknown symbol '" + tok.text + "'");
            }
            NonterminalSym item{*nt, {}};
            if (peek() && peek()->text == "[") {
                const Token& open = *peek();
                ++i;
                item.stack = parse_index_list(tokens, i, open);
                if (item.stack.empty()) {
                    throw ParseError(open.line, open.col, "empty index brackets");
                }
            }
            prod.rhs.push_back(std::move(item));
        }

        grammar_.productions.push_back(std::move(prod));
    }

    std::vector<SymbolId> parse_index_list(const std::vector<Token>& tokens, std::size_t& i,
                                           const Token& open) {
        std::vector<SymbolId> out;
        while (true) {
            if (i >= tokens.size()) {
                throw ParseError(open.line, open.col, "unclosed '['");
            }
            const Token& tok = tokens[i];
            if (tok.text == "]") {
                ++i;
                return out;
            }
            if (tok.text == "[" || tok.text == "->" || tok.text == "eps") {
                throw ParseError(tok.line, tok.col, "expected an index name, got '" + tok.text + "'");
            }
            auto f = grammar_.find_index(tok.text);
            if (!f) {
                throw ParseError(tok.line, tok.col, "unknown index '" + tok.text + "'");
            }
            out.push_back(*f);
            ++i;
        }
    }

    bool declared(const std::string& name) const {
        return grammar_.find_terminal(name) || grammar_.find_nonterminal(name) ||
               grammar_.find_index(name);
    }

    void finish_directives(const Token& at) {
        auto missing = [&](const char* which) {
            return ParseError(at.line, at.col,
                              std::string("missing '") + which + "' directive");
        };
        if (!have_terminals_) {
            throw missing("terminals:");
        }
        if (!have_nonterminals_) {
            throw missing("nonterminals:");
        }
        if (!have_indices_) {
            throw missing("indices:");
        }
        if (!have_start_) {
            throw missing("start:");
        }
        auto s = grammar_.find_nonterminal(start_token_.text);
        if (!s) {
            throw ParseError(start_token_.line, start_token_.col,
                             "start symbol '" + start_token_.text + "' is not a declared nonterminal");
        }
        start_id_ = *s;
        grammar_.start = *s;
    }

    void finish() {
        if (!saw_production_) {
            finish_directives(Token{"", last_line_ + 1, 1});
        }
    }

    std::string_view text_;
    Grammar grammar_;
    bool have_terminals_ = false;
    bool have_nonterminals_ = false;
    bool have_indices_ = false;
    bool have_start_ = false;
    bool saw_production_ = false;
    Token start_token_;
    SymbolId start_id_ = 0;
    std::size_t last_line_ = 0;
};

}  // namespace detail

inline Grammar parse_grammar(std::string_view text) {
    return detail::GrammarParser(text).run();
}

inline std::string format_item(const Grammar& g, const FormItem& item) {
    if (is_terminal(item)) {
        return g.terminal_name(std::get<TerminalSym>(item).id);
    }
    const auto& nt = std::get<NonterminalSym>(item);
    std::string out = g.nonterminal_name(nt.id);
    if (!nt.stack.empty()) {
        out += '[';
        for (std::size_t i = 0; i < nt.stack.size(); ++i) {
            if (i > 0) {
                out += ' ';
            }
            out += g.index_name(nt.stack[i]);
        }
        out += ']';
    }
    return out;
}

inline std::string format_form(const Grammar& g, const SententialForm& form) {
    if (form.items.empty()) {
        return "eps";
    }
    std::string out;
    for (std::size_t i = 0; i < form.items.size(); ++i) {
        if (i > 0) {
            out += ' ';
        }
        out += format_item(g, form.items[i]);
    }
    return out;
}

inline std::string format_production(const Grammar& g, const Production& p) {
    std::string out = g.nonterminal_name(p.lhs);
    if (p.pop_index) {
        out += '[';
        out += g.index_name(*p.pop_index);
        out += ']';
    }
    out += " -> ";
    out += format_form(g, SententialForm{p.rhs});
    return out;
}

inline std::string format_grammar(const Grammar& g) {
    std::ostringstream out;
    auto emit = [&out](const char* head, const std::vector<std::string>& names) {
        out << head;
        for (const std::string& n : names) {
            out << ' ' << n;
        }
        out << '\n';
    };
    emit("terminals:", g.terminal_names);
    emit("nonterminals:", g.nonterminal_names);
    emit("indices:", g.index_names);
    out << "start: " << g.nonterminal_name(g.start) << "\n\n";
    for (const Production& p : g.productions) {
        out << format_production(g, p) << '\n';
    }
    return out.str();
}

// Accepts either whitespace-separated terminal names or, failing that, one
// terminal name per character. The empty string is the empty word.
inline Word parse_word(const Grammar& g, std::string_view text) {
    std::vector<detail::Token> tokens = detail::tokenize_line(text, 1);
    Word by_token;
    bool token_ok = true;
    for (const detail::Token& tok : tokens) {
        auto t = g.find_terminal(tok.text);
        if (!t) {
            token_ok = false;
            break;
        }
        by_token.push_back(*t);
    }
    if (token_ok) {
        return by_token;
    }
    Word by_char;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            continue;
        }
        auto t = g.find_terminal(std::string_view(&c, 1));
        if (!t) {
            throw ParseError(1, i + 1, "unknown terminal '" + std::string(1, c) + "'");
        }
        by_char.push_back(*t);
    }
    return by_char;
}

inline std::string format_word(const Grammar& g, const Word& w) {
    bool single_char = std::all_of(g.terminal_names.begin(), g.terminal_names.end(),
                                   [](const std::string& n) { return n.size() == 1; });
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i > 0 && !single_char) {
            out += ' ';
        }
        out += g.terminal_name(w[i]);
    }
    return out;
}

}  // namespace shrinklab
