#pragma once

#include "maplan/model.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace maplan {

struct ParseError : std::runtime_error {
    int line, col;
    ParseError(const std::string &msg, int line_, int col_)
        : std::runtime_error(msg + " (line " + std::to_string(line_) + ", column " +
                             std::to_string(col_) + ")"),
          line(line_), col(col_) {}
};

// Minimal s-expression tree; every node remembers where it started.
struct Sexpr {
    bool is_list = false;
    std::string atom;
    std::vector<Sexpr> items;
    int line = 0, col = 0;

    bool is_symbol(const std::string &s) const { return !is_list && atom == s; }
    const Sexpr &at(size_t i) const;
    [[noreturn]] void fail(const std::string &msg) const;
};

Sexpr parse_sexpr(const std::string &text);

// Problem files: see docs/problem-format.md. Grounded MA-STRIPS, one
// (:agent ...) block per agent, `!p` for negated terms.
Problem parse_problem(const std::string &text);
Problem load_problem(const std::string &path);
std::string serialize_problem(const Problem &p);

// Plan files: CSV, header row of agent names, one row per step, cells are
// action labels or `eps`.
std::string serialize_plan(const Problem &p, const Plan &plan);
Plan parse_plan(const std::string &text, const Problem &p);

std::string read_file(const std::string &path);
void write_file(const std::string &path, const std::string &content);

}  // namespace maplan
