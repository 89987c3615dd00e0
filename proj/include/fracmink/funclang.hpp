#pragma once

// A small arithmetic language for f(theta) and a(n):
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' unary)?          (right associative)
//   primary := number | identifier | identifier '(' expr (',' expr)* ')' | '(' expr ')'
//
// Functions: sin cos exp ln sqrt abs gamma lgamma (one argument), min max
// (two arguments). Constants: pi, e. Exactly one free variable, fixed at
// parse time; "θ" is accepted as an alias for "theta".

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

namespace fracmink {

struct ExprNode;

class FunctionExpr {
public:
    /// Throws Error(Syntax) with the byte offset of the problem,
    /// Error(UnknownIdentifier) or Error(Arity).
    static FunctionExpr parse(std::string_view src, std::string_view free_var = "theta");

    /// Error(Domain) for ln / sqrt / lgamma outside their domain, division by
    /// zero, and any non-finite intermediate; position() names the node.
    double eval(double value) const;

    double operator()(double value) const { return eval(value); }

    /// Canonical text with minimal parentheses; parse(to_string()) reproduces the tree.
    std::string to_string() const;

    const std::string& source() const { return source_; }
    const std::string& free_variable() const { return free_var_; }

private:
    FunctionExpr(std::shared_ptr<const ExprNode> root, std::string source, std::string free_var);

    std::shared_ptr<const ExprNode> root_;
    std::string source_;
    std::string free_var_;
};

} // namespace fracmink
