#include "maplan/domain_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace maplan {

const Sexpr &Sexpr::at(size_t i) const {
    if (!is_list || i >= items.size())
        fail("expected " + std::to_string(i + 1) + " list items");
    return items[i];
}

void Sexpr::fail(const std::string &msg) const {
    throw ParseError(msg, line, col);
}

namespace {

struct Lexer {
    const std::string &text;
    size_t pos = 0;
    int line = 1, col = 1;

    explicit Lexer(const std::string &t) : text(t) {}

    int peek() const { return pos < text.size() ? static_cast<unsigned char>(text[pos]) : -1; }

    void advance() {
        if (text[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }

    void skip_ws() {
        while (pos < text.size()) {
            char c = text[pos];
            if (c == ';') {  // comment to end of line
                while (pos < text.size() && text[pos] != '\n')
                    advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    static bool symbol_char(int c) {
        return c > 0 && !std::isspace(c) && c != '(' && c != ')' && c != ';';
    }

    Sexpr parse() {
        skip_ws();
        if (pos >= text.size())
            throw ParseError("unexpected end of input", line, col);
        Sexpr node;
        node.line = line;
        node.col = col;
        if (peek() == '(') {
            advance();
            node.is_list = true;
            for (;;) {
                skip_ws();
                if (pos >= text.size())
                    throw ParseError("unterminated list", node.line, node.col);
                if (peek() == ')') {
                    advance();
                    return node;
                }
                node.items.push_back(parse());
            }
        }
        if (peek() == ')')
            throw ParseError("unexpected ')'", line, col);
        while (symbol_char(peek())) {
            node.atom.push_back(text[pos]);
            advance();
        }
        if (node.atom.empty())
            throw ParseError("expected symbol", line, col);
        return node;
    }
};

bool valid_identifier(const std::string &s) {
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-' && c != '.')
            return false;
    return true;
}

Term parse_term_symbol(const Sexpr &node, const ProblemBuilder &b) {
    if (node.is_list)
        node.fail("expected a term symbol");
    bool neg = !node.atom.empty() && node.atom[0] == '!';
    std::string name = neg ? node.atom.substr(1) : node.atom;
    try {
        return Term(b.atom(name), neg);
    } catch (const std::invalid_argument &e) {
        node.fail(e.what());
    }
}

std::vector<Term> parse_term_list(const Sexpr &node, const ProblemBuilder &b) {
    if (!node.is_list)
        node.fail("expected a term list");
    std::vector<Term> terms;
    for (const Sexpr &item : node.items)
        terms.push_back(parse_term_symbol(item, b));
    return terms;
}

}  // namespace

Sexpr parse_sexpr(const std::string &text) {
    Lexer lex(text);
    Sexpr root = lex.parse();
    lex.skip_ws();
    if (lex.pos < text.size())
        throw ParseError("trailing content after document", lex.line, lex.col);
    return root;
}

Problem parse_problem(const std::string &text) {
    Sexpr root = parse_sexpr(text);
    if (!root.is_list || root.items.empty() || !root.at(0).is_symbol("problem"))
        root.fail("expected (problem ...)");

    std::string name = "problem";
    for (size_t i = 1; i < root.items.size(); ++i) {
        const Sexpr &sec = root.items[i];
        if (!sec.is_list || sec.items.empty() || sec.at(0).is_list)
            sec.fail("expected a (:section ...) block");
        if (sec.at(0).atom == ":name") {
            if (sec.items.size() != 2 || sec.at(1).is_list)
                sec.fail(":name takes one symbol");
            name = sec.at(1).atom;
        }
    }

    ProblemBuilder b(name);
    // Atom declarations first; every other section resolves against them.
    bool saw_atoms = false;
    for (size_t i = 1; i < root.items.size(); ++i) {
        const Sexpr &sec = root.items[i];
        if (sec.at(0).atom != ":atoms")
            continue;
        if (saw_atoms)
            sec.fail("duplicate :atoms section");
        saw_atoms = true;
        for (size_t k = 1; k < sec.items.size(); ++k) {
            const Sexpr &a = sec.items[k];
            if (a.is_list || !valid_identifier(a.atom))
                a.fail("bad atom name");
            try {
                b.add_atom(a.atom);
            } catch (const std::invalid_argument &e) {
                a.fail(e.what());
            }
        }
    }

    bool saw_init = false, saw_goal = false;
    for (size_t i = 1; i < root.items.size(); ++i) {
        const Sexpr &sec = root.items[i];
        const std::string &tag = sec.at(0).atom;
        if (tag == ":name" || tag == ":atoms")
            continue;
        if (tag == ":agent") {
            if (sec.items.size() < 2 || sec.at(1).is_list ||
                !valid_identifier(sec.at(1).atom))
                sec.fail(":agent needs a name");
            AgentId agent = 0;
            try {
                agent = b.add_agent(sec.at(1).atom);
            } catch (const std::invalid_argument &e) {
                sec.fail(e.what());
            }
            for (size_t k = 2; k < sec.items.size(); ++k) {
                const Sexpr &act = sec.items[k];
                if (!act.is_list || act.items.size() != 6 ||
                    !act.at(0).is_symbol(":action"))
                    act.fail("expected (:action <label> :pre (...) :eff (...))");
                if (act.at(1).is_list || !valid_identifier(act.at(1).atom))
                    act.at(1).fail("bad action label");
                if (!act.at(2).is_symbol(":pre") || !act.at(4).is_symbol(":eff"))
                    act.fail("expected :pre and :eff keys");
                try {
                    b.add_action(agent, act.at(1).atom, parse_term_list(act.at(3), b),
                                 parse_term_list(act.at(5), b));
                } catch (const std::invalid_argument &e) {
                    act.fail(e.what());
                }
            }
        } else if (tag == ":init" || tag == ":goal") {
            bool &seen = tag == ":init" ? saw_init : saw_goal;
            if (seen)
                sec.fail("duplicate " + tag + " section");
            seen = true;
            std::vector<Term> terms;
            for (size_t k = 1; k < sec.items.size(); ++k)
                terms.push_back(parse_term_symbol(sec.items[k], b));
            try {
                if (tag == ":init")
                    b.set_init(terms);
                else
                    b.set_goal(terms);
            } catch (const std::invalid_argument &e) {
                sec.fail(e.what());
            }
        } else {
            sec.fail("unknown section '" + tag + "'");
        }
    }
    return b.build();
}

Problem load_problem(const std::string &path) {
    return parse_problem(read_file(path));
}

namespace {
void write_terms(std::ostringstream &out, const Problem &p, const TermSet &set) {
    bool first = true;
    for (Term t : set.terms()) {
        if (!first)
            out << ' ';
        first = false;
        if (t.negated)
            out << '!';
        out << p.atom_names[t.atom];
    }
}
}  // namespace

std::string serialize_problem(const Problem &p) {
    std::ostringstream out;
    out << "(problem\n  (:name " << p.name << ")\n  (:atoms";
    for (const auto &a : p.atom_names)
        out << ' ' << a;
    out << ")\n";
    for (const Agent &agent : p.agents) {
        out << "  (:agent " << agent.name << "\n";
        for (ActionId id : agent.actions) {
            const GroundAction &act = p.action(id);
            out << "    (:action " << act.label << " :pre (";
            write_terms(out, p, act.pre);
            out << ") :eff (";
            write_terms(out, p, act.eff);
            out << "))\n";
        }
        out << "  )\n";
    }
    out << "  (:init ";
    write_terms(out, p, p.init.terms());
    out << ")\n  (:goal ";
    write_terms(out, p, p.goal);
    out << "))\n";
    return out.str();
}

std::string serialize_plan(const Problem &p, const Plan &plan) {
    std::ostringstream out;
    for (int i = 0; i < p.agent_count(); ++i)
        out << (i ? "," : "") << p.agents[i].name;
    out << '\n';
    for (int k = 1; k <= plan.length(); ++k) {
        for (int i = 0; i < p.agent_count(); ++i)
            out << (i ? "," : "") << p.action(plan.step(k)[i]).label;
        out << '\n';
    }
    return out.str();
}

Plan parse_plan(const std::string &text, const Problem &p) {
    std::istringstream in(text);
    std::string header;
    if (!std::getline(in, header))
        throw ParseError("empty plan document", 1, 1);
    auto split = [](const std::string &s) {
        std::vector<std::string> cells;
        std::string cur;
        for (char c : s) {
            if (c == ',') {
                cells.push_back(cur);
                cur.clear();
            } else if (c != '\r') {
                cur.push_back(c);
            }
        }
        cells.push_back(cur);
        return cells;
    };
    auto cols = split(header);
    if (static_cast<int>(cols.size()) != p.agent_count())
        throw ParseError("plan header column count does not match the problem's agents", 1, 1);
    for (int i = 0; i < p.agent_count(); ++i)
        if (cols[i] != p.agents[i].name)
            throw ParseError("plan header names agent '" + cols[i] + "', expected '" +
                                 p.agents[i].name + "'",
                             1, 1);
    Plan plan(p.agent_count());
    std::string row;
    int lineno = 1;
    while (std::getline(in, row)) {
        ++lineno;
        if (row.empty() || row == "\r")
            continue;
        auto cells = split(row);
        if (static_cast<int>(cells.size()) != p.agent_count())
            throw ParseError("column-count mismatch", lineno, 1);
        JointAction j(p.agent_count(), kEpsilon);
        for (int i = 0; i < p.agent_count(); ++i) {
            if (cells[i] == "eps")
                continue;
            auto id = p.find_action(cells[i]);
            if (!id)
                throw ParseError("unknown action label '" + cells[i] + "'", lineno, 1);
            if (p.action(*id).agent != i)
                throw ParseError("action '" + cells[i] + "' does not belong to agent '" +
                                     p.agents[i].name + "'",
                                 lineno, 1);
            j[i] = *id;
        }
        plan.push_step(std::move(j));
    }
    return plan;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write file: " + path);
    out << content;
}

}  // namespace maplan
