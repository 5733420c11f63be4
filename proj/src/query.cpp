// Copyright 2026 The dissoc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dissoc/query.hpp"

#include "dissoc/error.hpp"
#include "text.hpp"
#include <algorithm>
#include <cctype>
#include <sstream>

namespace dissoc {

/*======================================================================================================================
 * SymbolTable, Query
 *====================================================================================================================*/

VarId SymbolTable::intern(std::string_view name)
{
    if (auto it = index_.find(std::string(name)); it != index_.end()) return it->second;
    if (names_.size() == kMaxVariables)
        throw SchemaError("too many variables (at most " + std::to_string(kMaxVariables) + ")");
    VarId id = static_cast<VarId>(names_.size());
    names_.emplace_back(name);
    index_.emplace(std::string(name), id);
    return id;
}

std::optional<VarId> SymbolTable::find(std::string_view name) const
{
    if (auto it = index_.find(std::string(name)); it != index_.end()) return it->second;
    return std::nullopt;
}

Query::Query(std::shared_ptr<const SymbolTable> symbols, std::vector<Atom> atoms, VarSet head, std::string name)
    : symbols_(std::move(symbols)), atoms_(std::move(atoms)), head_(head), name_(std::move(name))
{
    if (not symbols_) throw SchemaError("query without symbol table");
    if (atoms_.empty()) throw SchemaError("query has no atoms");
    if (atoms_.size() > kMaxAtoms)
        throw SchemaError("too many atoms (at most " + std::to_string(kMaxAtoms) + ")");
    atom_vars_.reserve(atoms_.size());
    for (std::size_t i = 0; i != atoms_.size(); ++i) {
        for (std::size_t j = 0; j != i; ++j)
            if (atoms_[i].relation == atoms_[j].relation)
                throw SelfJoinError("relation '" + atoms_[i].relation + "' occurs more than once (self-join)");
        for (VarId v : atoms_[i].args)
            if (v >= symbols_->size()) throw SchemaError("variable id out of range");
        atom_vars_.push_back(atoms_[i].vars());
        vars_ |= atom_vars_.back();
    }
    if (not head_.is_subset_of(vars_))
        throw SchemaError("head variable " + format_vars(head_ - vars_) + " does not occur in the body");
}

VarSet Query::vars_of(AtomSet atoms) const
{
    VarSet s;
    for (auto i : atoms) s |= atom_vars_[i];
    return s;
}

std::optional<std::size_t> Query::find_atom(std::string_view relation) const
{
    for (std::size_t i = 0; i != atoms_.size(); ++i)
        if (atoms_[i].relation == relation) return i;
    return std::nullopt;
}

Query Query::restrict(AtomSet atoms, VarSet head) const
{
    std::vector<Atom> kept;
    for (auto i : atoms) kept.push_back(atoms_.at(i));
    return Query(symbols_, std::move(kept), head & vars_of(atoms), name_);
}

std::string Query::format_vars(VarSet s) const
{
    std::string out;
    for (auto v : s) {
        if (not out.empty()) out += ',';
        out += symbols_->name(static_cast<VarId>(v));
    }
    return out;
}

std::string Query::to_string() const
{
    std::ostringstream out;
    out << name_ << '(' << format_vars(head_) << ") :- ";
    for (std::size_t i = 0; i != atoms_.size(); ++i) {
        if (i) out << ", ";
        out << atoms_[i].relation << '(';
        for (std::size_t j = 0; j != atoms_[i].args.size(); ++j)
            out << (j ? "," : "") << symbols_->name(atoms_[i].args[j]);
        out << ')';
    }
    return out.str();
}

/*======================================================================================================================
 * Structural analysis
 *====================================================================================================================*/

std::vector<AtomSet> connected_components(std::span<const VarSet> atom_vars, AtomSet atoms, VarSet anchors)
{
    std::vector<AtomSet> components;
    AtomSet rest = atoms;
    while (not rest.empty()) {
        AtomSet component = AtomSet::Singleton(rest.front());
        VarSet reach = atom_vars[rest.front()] - anchors;
        rest -= component;
        for (bool grown = true; grown; ) {
            grown = false;
            for (auto i : rest) {
                if (atom_vars[i].intersects(reach)) {
                    component.insert(i);
                    reach |= atom_vars[i] - anchors;
                    grown = true;
                }
            }
            rest -= component;
        }
        components.push_back(component);
    }
    return components;
}

std::vector<Query> connected_components(const Query &q, VarSet anchors)
{
    std::vector<Query> out;
    for (auto c : connected_components(q.all_atom_vars(), q.all_atoms(), anchors))
        out.push_back(q.restrict(c, q.head()));
    return out;
}

bool is_hierarchical(std::span<const VarSet> atom_vars, AtomSet atoms, VarSet head)
{
    VarSet all;
    for (auto i : atoms) all |= atom_vars[i];
    VarSet evar = all - head;

    std::vector<AtomSet> at(kMaxVariables);
    for (auto i : atoms)
        for (auto v : atom_vars[i] - head) at[v].insert(i);

    for (auto x : evar)
        for (auto y : evar) {
            if (y <= x) continue;
            if (at[x].is_subset_of(at[y]) or at[y].is_subset_of(at[x]) or not at[x].intersects(at[y])) continue;
            return false;
        }
    return true;
}

bool is_hierarchical(const Query &q) { return is_hierarchical(q.all_atom_vars(), q.all_atoms(), q.head()); }

VarSet separator_vars(const Query &q)
{
    VarSet sep = q.existential();
    for (std::size_t i = 0; i != q.size(); ++i) sep &= q.atom_vars(i);
    return sep;
}

VariableReport analyze(const Query &q)
{
    return VariableReport{q.existential(), separator_vars(q), connected_components(q, q.head())};
}

/*======================================================================================================================
 * Parsing
 *====================================================================================================================*/

namespace {

class QueryScanner
{
    std::string text_;
    std::size_t pos_ = 0;

  public:
    explicit QueryScanner(std::string_view input) {
        for (auto line : text::split(input, '\n')) {
            text_ += text::strip_comment(line);
            text_ += '\n';
        }
    }

    void skip_space() {
        while (pos_ < text_.size() and std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool at_end() { skip_space(); return pos_ == text_.size(); }

    bool accept(std::string_view token) {
        skip_space();
        if (text_.compare(pos_, token.size(), token) == 0) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view token) {
        if (not accept(token)) fail("expected '" + std::string(token) + "'");
    }

    /// Reads one argument or name token: an identifier, number, or quoted string.
    std::string word() {
        skip_space();
        std::size_t start = pos_;
        if (pos_ < text_.size() and (text_[pos_] == '\'' or text_[pos_] == '"')) {
            char quote = text_[pos_++];
            while (pos_ < text_.size() and text_[pos_] != quote) ++pos_;
            if (pos_ < text_.size()) ++pos_;
            return text_.substr(start, pos_ - start);
        }
        while (pos_ < text_.size() and
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) or text_[pos_] == '_' or text_[pos_] == '.'))
            ++pos_;
        if (start == pos_) fail("expected a name");
        return text_.substr(start, pos_ - start);
    }

    [[noreturn]] void fail(const std::string &msg) const {
        std::size_t line = 1 + std::count(text_.begin(), text_.begin() + std::min(pos_, text_.size()), '\n');
        throw ParseError("query line " + std::to_string(line) + ": " + msg);
    }
};

bool is_variable_name(std::string_view s)
{
    return text::is_identifier(s) and (std::islower(static_cast<unsigned char>(s[0])) or s[0] == '_');
}

struct ParsedAtom
{
    std::string name;
    std::vector<std::string> args;
};

ParsedAtom parse_atom(QueryScanner &in)
{
    ParsedAtom atom;
    atom.name = in.word();
    if (not text::is_identifier(atom.name)) in.fail("bad relation name '" + atom.name + "'");
    in.expect("(");
    if (not in.accept(")")) {
        do {
            std::string arg = in.word();
            if (not is_variable_name(arg))
                in.fail("constant '" + arg + "' in " + atom.name + "; only lowercase variables are supported");
            atom.args.push_back(std::move(arg));
        } while (in.accept(","));
        in.expect(")");
    }
    return atom;
}

}

Query parse_query(std::string_view input)
{
    QueryScanner in(input);
    ParsedAtom head = parse_atom(in);
    in.expect(":-");
    std::vector<ParsedAtom> body;
    do {
        body.push_back(parse_atom(in));
    } while (in.accept(","));
    in.accept(".");
    if (not in.at_end()) in.fail("unexpected trailing text");

    auto symbols = std::make_shared<SymbolTable>();
    VarSet head_vars;
    for (auto &v : head.args) {
        VarId id = symbols->intern(v);
        if (head_vars.contains(id)) throw ParseError("head variable '" + v + "' repeated");
        head_vars.insert(id);
    }
    std::vector<Atom> atoms;
    for (auto &a : body) {
        Atom atom{a.name, {}};
        for (auto &v : a.args) atom.args.push_back(symbols->intern(v));
        atoms.push_back(std::move(atom));
    }
    return Query(std::move(symbols), std::move(atoms), head_vars, head.name);
}

Query parse_query(std::string_view text, const Catalog &catalog)
{
    Query q = parse_query(text);
    for (auto &atom : q.atoms()) {
        const RelationSchema *rel = catalog.find(atom.relation);
        if (not rel) throw SchemaError("relation '" + atom.relation + "' is not in the catalog");
        if (rel->arity != atom.args.size())
            throw SchemaError("relation '" + atom.relation + "' has arity " + std::to_string(rel->arity) + ", used with " +
                              std::to_string(atom.args.size()) + " arguments");
    }
    return q;
}

}
