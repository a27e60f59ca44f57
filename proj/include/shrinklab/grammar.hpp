#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace shrinklab {

using SymbolId = std::uint32_t;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t col, const std::string& message)
        : Error("line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + message),
          line(line),
          col(col) {}

    std::size_t line;
    std::size_t col;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class DerivationError : public Error {
public:
    using Error::Error;
};

struct TerminalSym {
    SymbolId id = 0;

    auto operator<=>(const TerminalSym&) const = default;
};

// A nonterminal occurrence with its index stack; stack[0] is the top. Inside a
// production right-hand side the stack holds the string pushed above whatever
// the occurrence inherits.
struct NonterminalSym {
    SymbolId id = 0;
    std::vector<SymbolId> stack;

    auto operator<=>(const NonterminalSym&) const = default;
};

using FormItem = std::variant<TerminalSym, NonterminalSym>;

inline bool is_terminal(const FormItem& item) {
    return std::holds_alternative<TerminalSym>(item);
}

inline bool is_nonterminal(const FormItem& item) {
    return std::holds_alternative<NonterminalSym>(item);
}

struct SententialForm {
    std::vector<FormItem> items;

    bool ground() const {
        return std::all_of(items.begin(), items.end(),
                           [](const FormItem& it) { return is_terminal(it); });
    }

    auto operator<=>(const SententialForm&) const = default;
};

struct Production {
    SymbolId lhs = 0;
    std::optional<SymbolId> pop_index;
    std::vector<FormItem> rhs;

    auto operator<=>(const Production&) const = default;
};

using Word = std::vector<SymbolId>;

class Grammar {
public:
    std::vector<std::string> terminal_names;
    std::vector<std::string> nonterminal_names;
    std::vector<std::string> index_names;
    SymbolId start = 0;
    std::vector<Production> productions;

    std::optional<SymbolId> find_terminal(std::string_view name) const {
        return find_in(terminal_names, name);
    }

    std::optional<SymbolId> find_nonterminal(std::string_view name) const {
        return find_in(nonterminal_names, name);
    }

    std::optional<SymbolId> find_index(std::string_view name) const {
        return find_in(index_names, name);
    }

    const std::string& terminal_name(SymbolId id) const {
        return name_at(terminal_names, id, "terminal");
    }

    const std::string& nonterminal_name(SymbolId id) const {
        return name_at(nonterminal_names, id, "nonterminal");
    }

    const std::string& index_name(SymbolId id) const {
        return name_at(index_names, id, "index");
    }

    void validate() const;

private:
    static std::optional<SymbolId> find_in(const std::vector<std::string>& names,
                                           std::string_view name) {
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (names[i] == name) {
                return static_cast<SymbolId>(i);
            }
        }
        return std::nullopt;
    }

    static const std::string& name_at(const std::vector<std::string>& names, SymbolId id,
                                      const char* kind) {
        if (id >= names.size()) {
            throw ValidationError(std::string(kind) + " id out of range: " + std::to_string(id));
        }
        return names[id];
    }
};

inline void Grammar::validate() const {
    std::map<std::string, std::string> seen;
    auto check_alphabet = [&seen](const std::vector<std::string>& names, const char* kind) {
        for (const std::string& name : names) {
            if (name.empty()) {
                throw ValidationError(std::string("empty ") + kind + " name");
            }
            if (name == "eps" || name == "->") {
                throw ValidationError(std::string(kind) + " name '" + name + "' is reserved");
            }
            for (char c : name) {
                if (std::isspace(static_cast<unsigned char>(c)) || c == '[' || c == ']' ||
                    c == '#') {
                    throw ValidationError(std::string(kind) + " name '" + name +
                                          "' contains a forbidden character");
                }
            }
            auto [it, inserted] = seen.emplace(name, kind);
            if (!inserted) {
                throw ValidationError("symbol '" + name + "' declared both as " + it->second +
                                      " and as " + kind);
            }
        }
    };
    check_alphabet(terminal_names, "terminal");
    check_alphabet(nonterminal_names, "nonterminal");
    check_alphabet(index_names, "index");

    if (start >= nonterminal_names.size()) {
        throw ValidationError("start symbol id out of range");
    }

    for (std::size_t i = 0; i < productions.size(); ++i) {
        const Production& p = productions[i];
        auto fail = [i](const std::string& what) {
            throw ValidationError("production " + std::to_string(i) + ": " + what);
        };
        if (p.lhs >= nonterminal_names.size()) {
            fail("left-hand side id out of range");
        }
        if (p.pop_index && *p.pop_index >= index_names.size()) {
            fail("pop index id out of range");
        }
        if (p.rhs.empty() && (p.lhs != start || p.pop_index)) {
            fail("empty right-hand side is only allowed for the start symbol without a pop");
        }
        for (const FormItem& item : p.rhs) {
            if (is_terminal(item)) {
                if (std::get<TerminalSym>(item).id >= terminal_names.size()) {
                    fail("terminal id out of range");
                }
            } else {
                const auto& nt = std::get<NonterminalSym>(item);
                if (nt.id >= nonterminal_names.size()) {
                    fail("nonterminal id out of range");
                }
                for (SymbolId f : nt.stack) {
                    if (f >= index_names.size()) {
                        fail("push index id out of range");
                    }
                }
            }
        }
    }
}

inline bool production_applies(const NonterminalSym& nt, const Production& p) {
    if (nt.id != p.lhs) {
        return false;
    }
    if (p.pop_index) {
        return !nt.stack.empty() && nt.stack.front() == *p.pop_index;
    }
    return true;
}

// Children of one nonterminal occurrence under a production: every nonterminal
// on the right-hand side receives its push string followed by the occurrence's
// stack (minus a popped top); terminals carry nothing.
inline std::vector<FormItem> expand_nonterminal(const NonterminalSym& nt, const Production& p) {
    if (nt.id != p.lhs) {
        throw DerivationError("production does not apply: left-hand side mismatch");
    }
    std::size_t drop = 0;
    if (p.pop_index) {
        if (nt.stack.empty() || nt.stack.front() != *p.pop_index) {
            throw DerivationError("production does not apply: top of stack does not match pop");
        }
        drop = 1;
    }
    std::vector<FormItem> out;
    out.reserve(p.rhs.size());
    for (const FormItem& item : p.rhs) {
        if (is_terminal(item)) {
            out.push_back(item);
            continue;
        }
        const auto& rhs_nt = std::get<NonterminalSym>(item);
        NonterminalSym child{rhs_nt.id, rhs_nt.stack};
        child.stack.insert(child.stack.end(), nt.stack.begin() + static_cast<std::ptrdiff_t>(drop),
                           nt.stack.end());
        out.push_back(std::move(child));
    }
    return out;
}

inline SententialForm apply_production(const SententialForm& form, std::size_t pos,
                                       const Production& p) {
    if (pos >= form.items.size()) {
        throw DerivationError("rewrite position out of range");
    }
    if (!is_nonterminal(form.items[pos])) {
        throw DerivationError("cannot rewrite a terminal");
    }
    std::vector<FormItem> children = expand_nonterminal(std::get<NonterminalSym>(form.items[pos]), p);
    SententialForm out;
    out.items.reserve(form.items.size() - 1 + children.size());
    out.items.insert(out.items.end(), form.items.begin(),
                     form.items.begin() + static_cast<std::ptrdiff_t>(pos));
    out.items.insert(out.items.end(), children.begin(), children.end());
    out.items.insert(out.items.end(), form.items.begin() + static_cast<std::ptrdiff_t>(pos) + 1,
                     form.items.end());
    return out;
}

inline SententialForm start_form(const Grammar& g) {
    SententialForm form;
    form.items.push_back(NonterminalSym{g.start, {}});
    return form;
}

// Terminal projection; on a ground form this is the derived word.
inline Word project_word(const SententialForm& form) {
    Word w;
    for (const FormItem& item : form.items) {
        if (is_terminal(item)) {
            w.push_back(std::get<TerminalSym>(item).id);
        }
    }
    return w;
}

inline std::size_t max_stack_depth(const SententialForm& form) {
    std::size_t depth = 0;
    for (const FormItem& item : form.items) {
        if (is_nonterminal(item)) {
            depth = std::max(depth, std::get<NonterminalSym>(item).stack.size());
        }
    }
    return depth;
}

}  // namespace shrinklab
