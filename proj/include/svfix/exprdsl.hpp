#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "svfix/error.hpp"
#include "svfix/kernels.hpp"

namespace svfix::expr {

enum class UnaryFn { Neg, Sqrt, Sin, Cos, Abs, Exp };
enum class BinaryFn { Add, Sub, Mul, Div, Pow, Min, Max };

/// One AST node in the arena; children are node indices.
struct Node {
    enum class Kind { Literal, Var, Unary, Binary } kind = Kind::Literal;
    double value = 0.0;  // Literal
    int var = -1;        // Var: index into Expr::vars
    UnaryFn ufn = UnaryFn::Neg;
    BinaryFn bfn = BinaryFn::Add;
    int a = -1;  // unary child / binary lhs
    int b = -1;  // binary rhs
};

/// An immutable parsed expression. Copyable, shareable across threads.
struct Expr {
    std::vector<Node> nodes;
    int root = -1;
    std::vector<std::string> vars;  // distinct variable names, in first-seen order
};

using Env = std::map<std::string, double>;

/// Parse expression text. Throws ParseError with 1-based line/column.
/// Precedence: ^ (right-assoc) > unary - > * / > + -. Functions:
/// sqrt, sin, cos, abs, exp (one argument), min, max (two arguments).
Expr parse(std::string_view src);

/// Evaluate under the environment. Throws EvalError on an unbound variable,
/// division by zero, sqrt below -1e-9 (slightly negative arguments clamp
/// to 0), or a NaN-producing power.
double eval(const Expr& e, const Env& env);

std::set<std::string> free_vars(const Expr& e);

/// Canonical text form; parse(print(e)) is structurally equal to e.
std::string print(const Expr& e);
std::string print_node(const Expr& e, int node);

bool structural_equal(const Expr& a, const Expr& b);

/// Flatten to a postfix program over the given variable layout.
/// Throws ContractViolation if the expression uses a variable not in layout.
kernels::Program compile(const Expr& e, std::span<const std::string> layout);

}  // namespace svfix::expr
