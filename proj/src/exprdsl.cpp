#include "svfix/exprdsl.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <optional>

namespace svfix::expr {

namespace {

struct Token {
    enum class Kind { Number, Ident, Punct, End } kind = Kind::End;
    std::string text;
    double value = 0.0;
    int line = 1;
    int col = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= src_.size()) {
            tok_.kind = Token::Kind::End;
            tok_.text.clear();
            return;
        }
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && pos_ + 1 < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
            lex_number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                ++pos_;
                ++col_;
            }
            tok_.kind = Token::Kind::Ident;
            tok_.text = std::string(src_.substr(start, pos_ - start));
            return;
        }
        if (std::string_view("+-*/^(),").find(c) != std::string_view::npos) {
            tok_.kind = Token::Kind::Punct;
            tok_.text = std::string(1, c);
            ++pos_;
            ++col_;
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    }

    void lex_number() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                ++pos_;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    ++pos_;
            } else {
                pos_ = mark;  // 'e' was not an exponent, leave it for the ident lexer
            }
        }
        const std::string text(src_.substr(start, pos_ - start));
        tok_.kind = Token::Kind::Number;
        tok_.text = text;
        tok_.value = std::strtod(text.c_str(), nullptr);
        col_ += static_cast<int>(pos_ - start);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_;
};

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) {}

    Expr run() {
        const int root = parse_sum();
        const Token& t = lex_.peek();
        if (t.kind != Token::Kind::End)
            throw ParseError("trailing input '" + t.text + "'", t.line, t.col);
        out_.root = root;
        return std::move(out_);
    }

private:
    bool punct(const char* p) const {
        return lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == p;
    }

    void expect(const char* p, const char* what) {
        if (!punct(p)) {
            const Token& t = lex_.peek();
            throw ParseError(std::string("expected '") + p + "' " + what, t.line, t.col);
        }
        lex_.take();
    }

    int add_node(Node n) {
        out_.nodes.push_back(n);
        return static_cast<int>(out_.nodes.size() - 1);
    }

    int binary(BinaryFn fn, int a, int b) {
        Node n;
        n.kind = Node::Kind::Binary;
        n.bfn = fn;
        n.a = a;
        n.b = b;
        return add_node(n);
    }

    int unary(UnaryFn fn, int a) {
        Node n;
        n.kind = Node::Kind::Unary;
        n.ufn = fn;
        n.a = a;
        return add_node(n);
    }

    int parse_sum() {
        int lhs = parse_product();
        while (punct("+") || punct("-")) {
            const bool plus = punct("+");
            lex_.take();
            lhs = binary(plus ? BinaryFn::Add : BinaryFn::Sub, lhs, parse_product());
        }
        return lhs;
    }

    int parse_product() {
        int lhs = parse_unary();
        while (punct("*") || punct("/")) {
            const bool mul = punct("*");
            lex_.take();
            lhs = binary(mul ? BinaryFn::Mul : BinaryFn::Div, lhs, parse_unary());
        }
        return lhs;
    }

    int parse_unary() {
        if (punct("-")) {
            lex_.take();
            return unary(UnaryFn::Neg, parse_unary());
        }
        return parse_power();
    }

    int parse_power() {
        const int base = parse_primary();
        if (punct("^")) {
            lex_.take();
            // right-associative; the exponent may carry a unary minus
            return binary(BinaryFn::Pow, base, parse_unary());
        }
        return base;
    }

    int parse_primary() {
        Token t = lex_.peek();
        if (t.kind == Token::Kind::Number) {
            lex_.take();
            Node n;
            n.kind = Node::Kind::Literal;
            n.value = t.value;
            return add_node(n);
        }
        if (punct("(")) {
            lex_.take();
            const int inner = parse_sum();
            expect(")", "to close parenthesis");
            return inner;
        }
        if (t.kind == Token::Kind::Ident) {
            lex_.take();
            if (punct("(")) return parse_call(t);
            Node n;
            n.kind = Node::Kind::Var;
            n.var = intern_var(t.text);
            return add_node(n);
        }
        throw ParseError("expected a number, variable, function call or '('", t.line, t.col);
    }

    int parse_call(const Token& name) {
        static const std::map<std::string, UnaryFn, std::less<>> unary_fns = {
            {"sqrt", UnaryFn::Sqrt}, {"sin", UnaryFn::Sin}, {"cos", UnaryFn::Cos},
            {"abs", UnaryFn::Abs},   {"exp", UnaryFn::Exp},
        };
        static const std::map<std::string, BinaryFn, std::less<>> binary_fns = {
            {"min", BinaryFn::Min},
            {"max", BinaryFn::Max},
        };
        expect("(", "after function name");
        const int first = parse_sum();
        if (auto it = unary_fns.find(name.text); it != unary_fns.end()) {
            if (punct(","))
                throw ParseError("function '" + name.text + "' takes one argument", name.line,
                                 name.col);
            expect(")", "to close argument list");
            return unary(it->second, first);
        }
        if (auto it = binary_fns.find(name.text); it != binary_fns.end()) {
            expect(",", "between the two arguments");
            const int second = parse_sum();
            expect(")", "to close argument list");
            return binary(it->second, first, second);
        }
        throw ParseError("unknown function '" + name.text + "'", name.line, name.col);
    }

    int intern_var(const std::string& name) {
        for (std::size_t i = 0; i < out_.vars.size(); ++i)
            if (out_.vars[i] == name) return static_cast<int>(i);
        out_.vars.push_back(name);
        return static_cast<int>(out_.vars.size() - 1);
    }

    Lexer lex_;
    Expr out_;
};

double eval_node(const Expr& e, int idx, const std::vector<double>& bound,
                 const std::vector<char>& have) {
    const Node& n = e.nodes[idx];
    switch (n.kind) {
        case Node::Kind::Literal: return n.value;
        case Node::Kind::Var:
            if (!have[n.var])
                throw EvalError("unbound variable '" + e.vars[n.var] + "'", e.vars[n.var]);
            return bound[n.var];
        case Node::Kind::Unary: {
            const double a = eval_node(e, n.a, bound, have);
            switch (n.ufn) {
                case UnaryFn::Neg: return -a;
                case UnaryFn::Sqrt:
                    if (a < -kernels::kSqrtClamp)
                        throw EvalError("sqrt of negative value", print_node(e, idx));
                    return std::sqrt(kernels::kmax(a, 0.0));
                case UnaryFn::Sin: return std::sin(a);
                case UnaryFn::Cos: return std::cos(a);
                case UnaryFn::Abs: return std::fabs(a);
                case UnaryFn::Exp: return std::exp(a);
            }
            break;
        }
        case Node::Kind::Binary: {
            const double a = eval_node(e, n.a, bound, have);
            const double b = eval_node(e, n.b, bound, have);
            switch (n.bfn) {
                case BinaryFn::Add: return a + b;
                case BinaryFn::Sub: return a - b;
                case BinaryFn::Mul: return a * b;
                case BinaryFn::Div:
                    if (b == 0.0) throw EvalError("division by zero", print_node(e, idx));
                    return a / b;
                case BinaryFn::Pow: {
                    const double r = std::pow(a, b);
                    if (std::isnan(r))
                        throw EvalError("power outside the real domain", print_node(e, idx));
                    return r;
                }
                case BinaryFn::Min: return kernels::kmin(a, b);
                case BinaryFn::Max: return kernels::kmax(a, b);
            }
            break;
        }
    }
    throw Error("corrupt expression node");
}

int precedence(const Node& n) {
    if (n.kind != Node::Kind::Binary) return 100;
    switch (n.bfn) {
        case BinaryFn::Add:
        case BinaryFn::Sub: return 1;
        case BinaryFn::Mul:
        case BinaryFn::Div: return 2;
        case BinaryFn::Pow: return 4;
        default: return 100;  // min/max print as calls
    }
}

void print_rec(const Expr& e, int idx, std::string& out, int parent_prec, bool rhs) {
    const Node& n = e.nodes[idx];
    switch (n.kind) {
        case Node::Kind::Literal: {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", n.value);
            out += buf;
            return;
        }
        case Node::Kind::Var: out += e.vars[n.var]; return;
        case Node::Kind::Unary: {
            if (n.ufn == UnaryFn::Neg) {
                // unary minus sits between ^ and * in precedence
                const bool paren = parent_prec > 3;
                if (paren) out += "(";
                out += "-";
                print_rec(e, n.a, out, 3, true);
                if (paren) out += ")";
                return;
            }
            const char* name = n.ufn == UnaryFn::Sqrt  ? "sqrt"
                               : n.ufn == UnaryFn::Sin ? "sin"
                               : n.ufn == UnaryFn::Cos ? "cos"
                               : n.ufn == UnaryFn::Abs ? "abs"
                                                       : "exp";
            out += name;
            out += "(";
            print_rec(e, n.a, out, 0, false);
            out += ")";
            return;
        }
        case Node::Kind::Binary: {
            if (n.bfn == BinaryFn::Min || n.bfn == BinaryFn::Max) {
                out += (n.bfn == BinaryFn::Min) ? "min(" : "max(";
                print_rec(e, n.a, out, 0, false);
                out += ", ";
                print_rec(e, n.b, out, 0, false);
                out += ")";
                return;
            }
            const int prec = precedence(n);
            const bool paren = prec < parent_prec || (prec == parent_prec && rhs);
            if (paren) out += "(";
            const char* sym = n.bfn == BinaryFn::Add   ? " + "
                              : n.bfn == BinaryFn::Sub ? " - "
                              : n.bfn == BinaryFn::Mul ? "*"
                              : n.bfn == BinaryFn::Div ? "/"
                                                       : "^";
            if (n.bfn == BinaryFn::Pow) {
                print_rec(e, n.a, out, prec + 1, false);  // ^ is right-assoc
                out += sym;
                print_rec(e, n.b, out, prec, false);
            } else {
                print_rec(e, n.a, out, prec, false);
                out += sym;
                print_rec(e, n.b, out, prec, true);
            }
            if (paren) out += ")";
            return;
        }
    }
}

void compile_rec(const Expr& e, int idx, kernels::Program& p, const std::vector<int>& var_slot,
                 int depth, int& max_depth) {
    const Node& n = e.nodes[idx];
    max_depth = std::max(max_depth, depth + 1);
    switch (n.kind) {
        case Node::Kind::Literal: {
            p.consts.push_back(n.value);
            p.ops.push_back({kernels::OpCode::PushConst,
                             static_cast<std::int32_t>(p.consts.size() - 1)});
            return;
        }
        case Node::Kind::Var: {
            if (var_slot[n.var] < 0)
                throw ContractViolation("compile: variable '" + e.vars[n.var] +
                                        "' is not in the layout");
            p.ops.push_back({kernels::OpCode::PushVar, var_slot[n.var]});
            return;
        }
        case Node::Kind::Unary: {
            compile_rec(e, n.a, p, var_slot, depth, max_depth);
            kernels::OpCode c;
            switch (n.ufn) {
                case UnaryFn::Neg: c = kernels::OpCode::Neg; break;
                case UnaryFn::Sqrt: c = kernels::OpCode::Sqrt; break;
                case UnaryFn::Sin: c = kernels::OpCode::Sin; break;
                case UnaryFn::Cos: c = kernels::OpCode::Cos; break;
                case UnaryFn::Abs: c = kernels::OpCode::Abs; break;
                case UnaryFn::Exp: c = kernels::OpCode::Exp; break;
                default: throw Error("corrupt unary op");
            }
            p.ops.push_back({c, 0});
            return;
        }
        case Node::Kind::Binary: {
            compile_rec(e, n.a, p, var_slot, depth, max_depth);
            compile_rec(e, n.b, p, var_slot, depth + 1, max_depth);
            kernels::OpCode c;
            switch (n.bfn) {
                case BinaryFn::Add: c = kernels::OpCode::Add; break;
                case BinaryFn::Sub: c = kernels::OpCode::Sub; break;
                case BinaryFn::Mul: c = kernels::OpCode::Mul; break;
                case BinaryFn::Div: c = kernels::OpCode::Div; break;
                case BinaryFn::Pow: c = kernels::OpCode::Pow; break;
                case BinaryFn::Min: c = kernels::OpCode::Min; break;
                case BinaryFn::Max: c = kernels::OpCode::Max; break;
                default: throw Error("corrupt binary op");
            }
            p.ops.push_back({c, 0});
            return;
        }
    }
}

}  // namespace

Expr parse(std::string_view src) {
    bool blank = true;
    for (char c : src)
        if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (blank) throw ParseError("empty expression", 1, 1);
    return Parser(src).run();
}

double eval(const Expr& e, const Env& env) {
    std::vector<double> bound(e.vars.size(), 0.0);
    std::vector<char> have(e.vars.size(), 0);
    for (std::size_t i = 0; i < e.vars.size(); ++i) {
        auto it = env.find(e.vars[i]);
        if (it != env.end()) {
            bound[i] = it->second;
            have[i] = 1;
        }
    }
    const double r = eval_node(e, e.root, bound, have);
    if (std::isnan(r)) throw EvalError("expression evaluated to NaN", print(e));
    return r;
}

std::set<std::string> free_vars(const Expr& e) {
    std::set<std::string> out;
    for (const Node& n : e.nodes)
        if (n.kind == Node::Kind::Var) out.insert(e.vars[n.var]);
    return out;
}

std::string print_node(const Expr& e, int node) {
    std::string out;
    print_rec(e, node, out, 0, false);
    return out;
}

std::string print(const Expr& e) { return print_node(e, e.root); }

namespace {
bool nodes_equal(const Expr& a, int ia, const Expr& b, int ib) {
    const Node& x = a.nodes[ia];
    const Node& y = b.nodes[ib];
    if (x.kind != y.kind) return false;
    switch (x.kind) {
        case Node::Kind::Literal: return x.value == y.value;
        case Node::Kind::Var: return a.vars[x.var] == b.vars[y.var];
        case Node::Kind::Unary: return x.ufn == y.ufn && nodes_equal(a, x.a, b, y.a);
        case Node::Kind::Binary:
            return x.bfn == y.bfn && nodes_equal(a, x.a, b, y.a) && nodes_equal(a, x.b, b, y.b);
    }
    return false;
}
}  // namespace

bool structural_equal(const Expr& a, const Expr& b) { return nodes_equal(a, a.root, b, b.root); }

kernels::Program compile(const Expr& e, std::span<const std::string> layout) {
    kernels::Program p;
    p.nvars = static_cast<int>(layout.size());
    std::vector<int> var_slot(e.vars.size(), -1);
    for (std::size_t v = 0; v < e.vars.size(); ++v)
        for (std::size_t s = 0; s < layout.size(); ++s)
            if (layout[s] == e.vars[v]) var_slot[v] = static_cast<int>(s);
    int max_depth = 0;
    compile_rec(e, e.root, p, var_slot, 0, max_depth);
    p.stack_need = max_depth;
    if (p.stack_need > kernels::kMaxStack)
        throw ContractViolation("expression too deep for the kernel stack");
    return p;
}

}  // namespace svfix::expr
