#include "fracmink/funclang.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "fracmink/errors.hpp"
#include "fracmink/special_functions.hpp"

namespace fracmink {

enum class NodeKind { Constant, Variable, Negate, Add, Sub, Mul, Div, Pow, Call };

enum class Builtin { Sin, Cos, Exp, Ln, Sqrt, Abs, Gamma, Lgamma, Min, Max };

struct ExprNode {
    NodeKind kind = NodeKind::Constant;
    double value = 0.0;
    std::string name; // named constant, variable or function spelling
    Builtin fn = Builtin::Sin;
    std::shared_ptr<const ExprNode> lhs;
    std::shared_ptr<const ExprNode> rhs;
    std::size_t offset = 0;
};

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

struct BuiltinInfo {
    std::string_view name;
    Builtin fn;
    int arity;
};

constexpr BuiltinInfo kBuiltins[] = {
    {"sin", Builtin::Sin, 1},     {"cos", Builtin::Cos, 1},   {"exp", Builtin::Exp, 1},
    {"ln", Builtin::Ln, 1},       {"sqrt", Builtin::Sqrt, 1}, {"abs", Builtin::Abs, 1},
    {"gamma", Builtin::Gamma, 1}, {"lgamma", Builtin::Lgamma, 1},
    {"min", Builtin::Min, 2},     {"max", Builtin::Max, 2},
};

const BuiltinInfo* find_builtin(std::string_view name) {
    for (const auto& b : kBuiltins) {
        if (b.name == name) return &b;
    }
    return nullptr;
}

constexpr std::string_view kThetaUtf8 = "\xCE\xB8";

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
    Tok kind = Tok::End;
    std::size_t offset = 0;
    std::string_view text;
    double number = 0.0;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' ||
                                      src_[pos_] == '\r')) {
            ++pos_;
        }
        Token t;
        t.offset = pos_;
        if (pos_ >= src_.size()) return t;
        const char c = src_[pos_];
        auto single = [&](Tok k) {
            t.kind = k;
            t.text = src_.substr(pos_, 1);
            ++pos_;
            return t;
        };
        switch (c) {
            case '+': return single(Tok::Plus);
            case '-': return single(Tok::Minus);
            case '*': return single(Tok::Star);
            case '/': return single(Tok::Slash);
            case '^': return single(Tok::Caret);
            case '(': return single(Tok::LParen);
            case ')': return single(Tok::RParen);
            case ',': return single(Tok::Comma);
            default: break;
        }
        if (is_digit(c) || (c == '.' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1]))) {
            return lex_number();
        }
        if (is_ident_start(c)) {
            const std::size_t start = pos_;
            while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
            t.kind = Tok::Ident;
            t.text = src_.substr(start, pos_ - start);
            return t;
        }
        if (src_.substr(pos_, kThetaUtf8.size()) == kThetaUtf8) {
            t.kind = Tok::Ident;
            t.text = src_.substr(pos_, kThetaUtf8.size());
            pos_ += kThetaUtf8.size();
            return t;
        }
        throw Error(ErrorKind::Syntax,
                    "unexpected character '" + std::string(1, c) + "' at offset " + std::to_string(pos_),
                    pos_);
    }

private:
    static bool is_digit(char c) { return c >= '0' && c <= '9'; }
    static bool is_ident_start(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
    }
    static bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

    Token lex_number() {
        Token t;
        t.kind = Tok::Number;
        t.offset = pos_;
        std::size_t end = pos_;
        while (end < src_.size() && is_digit(src_[end])) ++end;
        if (end < src_.size() && src_[end] == '.') {
            ++end;
            while (end < src_.size() && is_digit(src_[end])) ++end;
        }
        if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
            std::size_t exp_end = end + 1;
            if (exp_end < src_.size() && (src_[exp_end] == '+' || src_[exp_end] == '-')) ++exp_end;
            if (exp_end < src_.size() && is_digit(src_[exp_end])) {
                while (exp_end < src_.size() && is_digit(src_[exp_end])) ++exp_end;
                end = exp_end;
            }
        }
        t.text = src_.substr(pos_, end - pos_);
        const auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.number);
        if (res.ec != std::errc() || res.ptr != t.text.data() + t.text.size() || !std::isfinite(t.number)) {
            throw Error(ErrorKind::Syntax, "malformed number '" + std::string(t.text) + "' at offset " +
                                               std::to_string(pos_),
                        pos_);
        }
        pos_ = end;
        return t;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    Parser(std::string_view src, std::string_view free_var) : lexer_(src), free_var_(free_var) {
        advance();
    }

    NodePtr parse_all() {
        NodePtr root = parse_expr();
        if (cur_.kind != Tok::End) {
            std::string msg = "unexpected '" + std::string(cur_.text) + "' at offset " +
                              std::to_string(cur_.offset);
            if (cur_.kind == Tok::Ident || cur_.kind == Tok::Number || cur_.kind == Tok::LParen) {
                msg += " (implicit multiplication is not supported; write '*')";
            }
            throw Error(ErrorKind::Syntax, msg, cur_.offset);
        }
        return root;
    }

private:
    void advance() { cur_ = lexer_.next(); }

    static NodePtr binary(NodeKind kind, NodePtr l, NodePtr r, std::size_t offset) {
        auto n = std::make_shared<ExprNode>();
        n->kind = kind;
        n->lhs = std::move(l);
        n->rhs = std::move(r);
        n->offset = offset;
        return n;
    }

    NodePtr parse_expr() {
        NodePtr left = parse_term();
        while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
            const NodeKind k = cur_.kind == Tok::Plus ? NodeKind::Add : NodeKind::Sub;
            const std::size_t off = cur_.offset;
            advance();
            left = binary(k, left, parse_term(), off);
        }
        return left;
    }

    NodePtr parse_term() {
        NodePtr left = parse_unary();
        while (cur_.kind == Tok::Star || cur_.kind == Tok::Slash) {
            const NodeKind k = cur_.kind == Tok::Star ? NodeKind::Mul : NodeKind::Div;
            const std::size_t off = cur_.offset;
            advance();
            left = binary(k, left, parse_unary(), off);
        }
        return left;
    }

    NodePtr parse_unary() {
        if (cur_.kind == Tok::Minus) {
            const std::size_t off = cur_.offset;
            advance();
            auto n = std::make_shared<ExprNode>();
            n->kind = NodeKind::Negate;
            n->lhs = parse_unary();
            n->offset = off;
            return n;
        }
        if (cur_.kind == Tok::Plus) {
            advance();
            return parse_unary();
        }
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_primary();
        if (cur_.kind == Tok::Caret) {
            const std::size_t off = cur_.offset;
            advance();
            return binary(NodeKind::Pow, base, parse_unary(), off);
        }
        return base;
    }

    NodePtr parse_primary() {
        const Token t = cur_;
        switch (t.kind) {
            case Tok::Number: {
                advance();
                auto n = std::make_shared<ExprNode>();
                n->kind = NodeKind::Constant;
                n->value = t.number;
                n->offset = t.offset;
                return n;
            }
            case Tok::LParen: {
                advance();
                NodePtr inner = parse_expr();
                expect(Tok::RParen, "')'");
                return inner;
            }
            case Tok::Ident: return parse_identifier();
            case Tok::End:
                throw Error(ErrorKind::Syntax,
                            "unexpected end of input at offset " + std::to_string(t.offset), t.offset);
            default:
                throw Error(ErrorKind::Syntax,
                            "unexpected '" + std::string(t.text) + "' at offset " + std::to_string(t.offset),
                            t.offset);
        }
    }

    NodePtr parse_identifier() {
        const Token t = cur_;
        advance();
        std::string_view name = t.text;
        if (name == kThetaUtf8) name = "theta";

        if (cur_.kind == Tok::LParen) {
            const BuiltinInfo* b = find_builtin(name);
            if (b == nullptr) {
                throw Error(ErrorKind::UnknownIdentifier,
                            "unknown function '" + std::string(t.text) + "' at offset " +
                                std::to_string(t.offset),
                            t.offset);
            }
            advance();
            std::vector<NodePtr> args;
            args.push_back(parse_expr());
            while (cur_.kind == Tok::Comma) {
                advance();
                args.push_back(parse_expr());
            }
            expect(Tok::RParen, "')'");
            if (static_cast<int>(args.size()) != b->arity) {
                throw Error(ErrorKind::Arity,
                            std::string(b->name) + " takes " + std::to_string(b->arity) +
                                " argument(s), got " + std::to_string(args.size()) + " at offset " +
                                std::to_string(t.offset),
                            t.offset);
            }
            auto n = std::make_shared<ExprNode>();
            n->kind = NodeKind::Call;
            n->fn = b->fn;
            n->name = std::string(b->name);
            n->lhs = args[0];
            if (args.size() > 1) n->rhs = args[1];
            n->offset = t.offset;
            return n;
        }

        auto n = std::make_shared<ExprNode>();
        n->offset = t.offset;
        if (name == free_var_) {
            n->kind = NodeKind::Variable;
            n->name = std::string(free_var_);
            return n;
        }
        if (name == "pi") {
            n->kind = NodeKind::Constant;
            n->value = std::numbers::pi;
            n->name = "pi";
            return n;
        }
        if (name == "e") {
            n->kind = NodeKind::Constant;
            n->value = std::numbers::e;
            n->name = "e";
            return n;
        }
        if (find_builtin(name) != nullptr) {
            throw Error(ErrorKind::Syntax,
                        "function '" + std::string(name) + "' needs an argument list at offset " +
                            std::to_string(t.offset),
                        t.offset);
        }
        throw Error(ErrorKind::UnknownIdentifier,
                    "unknown identifier '" + std::string(t.text) + "' at offset " +
                        std::to_string(t.offset) + " (free variable is '" + std::string(free_var_) + "')",
                    t.offset);
    }

    void expect(Tok kind, const char* what) {
        if (cur_.kind != kind) {
            throw Error(ErrorKind::Syntax,
                        std::string("expected ") + what + " at offset " + std::to_string(cur_.offset),
                        cur_.offset);
        }
        advance();
    }

    Lexer lexer_;
    std::string_view free_var_;
    Token cur_;
};

[[noreturn]] void domain_error(const ExprNode& node, const std::string& what) {
    throw Error(ErrorKind::Domain, what + " (node at offset " + std::to_string(node.offset) + ")",
                node.offset);
}

double checked(const ExprNode& node, double v) {
    if (!std::isfinite(v)) domain_error(node, "non-finite result");
    return v;
}

double eval_node(const ExprNode& node, double var) {
    switch (node.kind) {
        case NodeKind::Constant: return node.value;
        case NodeKind::Variable: return var;
        case NodeKind::Negate: return -eval_node(*node.lhs, var);
        case NodeKind::Add: return checked(node, eval_node(*node.lhs, var) + eval_node(*node.rhs, var));
        case NodeKind::Sub: return checked(node, eval_node(*node.lhs, var) - eval_node(*node.rhs, var));
        case NodeKind::Mul: return checked(node, eval_node(*node.lhs, var) * eval_node(*node.rhs, var));
        case NodeKind::Div: {
            const double num = eval_node(*node.lhs, var);
            const double den = eval_node(*node.rhs, var);
            if (den == 0.0) domain_error(node, "division by zero");
            return checked(node, num / den);
        }
        case NodeKind::Pow: {
            const double base = eval_node(*node.lhs, var);
            const double ex = eval_node(*node.rhs, var);
            if (base == 0.0 && ex < 0.0) domain_error(node, "zero raised to a negative power");
            const double v = std::pow(base, ex);
            if (std::isnan(v)) domain_error(node, "negative base with non-integer exponent");
            return checked(node, v);
        }
        case NodeKind::Call: {
            const double x = eval_node(*node.lhs, var);
            switch (node.fn) {
                case Builtin::Sin: return std::sin(x);
                case Builtin::Cos: return std::cos(x);
                case Builtin::Exp: return checked(node, std::exp(x));
                case Builtin::Ln:
                    if (!(x > 0.0)) domain_error(node, "ln of a nonpositive value");
                    return std::log(x);
                case Builtin::Sqrt:
                    if (x < 0.0) domain_error(node, "sqrt of a negative value");
                    return std::sqrt(x);
                case Builtin::Abs: return std::abs(x);
                case Builtin::Gamma:
                    try {
                        return fracmink::gamma(x);
                    } catch (const Error& e) {
                        domain_error(node, e.what());
                    }
                case Builtin::Lgamma:
                    if (!(x > 0.0)) domain_error(node, "lgamma of a nonpositive value");
                    return ln_gamma(x);
                case Builtin::Min: return std::min(x, eval_node(*node.rhs, var));
                case Builtin::Max: return std::max(x, eval_node(*node.rhs, var));
            }
            break;
        }
    }
    domain_error(node, "invalid node");
}

// Precedence levels used by the printer.
int precedence(const ExprNode& n) {
    switch (n.kind) {
        case NodeKind::Add:
        case NodeKind::Sub: return 1;
        case NodeKind::Mul:
        case NodeKind::Div: return 2;
        case NodeKind::Negate: return 3;
        case NodeKind::Pow: return 4;
        default: return 5;
    }
}

std::string number_text(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void print(const ExprNode& n, std::string& out);

void print_child(const ExprNode& child, bool parens, std::string& out) {
    if (parens) out += '(';
    print(child, out);
    if (parens) out += ')';
}

void print(const ExprNode& n, std::string& out) {
    const int p = precedence(n);
    switch (n.kind) {
        case NodeKind::Constant:
            out += n.name.empty() ? number_text(n.value) : n.name;
            return;
        case NodeKind::Variable: out += n.name; return;
        case NodeKind::Negate:
            out += '-';
            print_child(*n.lhs, precedence(*n.lhs) < p, out);
            return;
        case NodeKind::Add:
        case NodeKind::Sub:
        case NodeKind::Mul:
        case NodeKind::Div: {
            static constexpr const char* kOps[] = {" + ", " - ", " * ", " / "};
            const int idx = static_cast<int>(n.kind) - static_cast<int>(NodeKind::Add);
            print_child(*n.lhs, precedence(*n.lhs) < p, out);
            out += kOps[idx];
            print_child(*n.rhs, precedence(*n.rhs) <= p, out);
            return;
        }
        case NodeKind::Pow:
            print_child(*n.lhs, precedence(*n.lhs) <= p, out);
            out += '^';
            print_child(*n.rhs, precedence(*n.rhs) < 3, out);
            return;
        case NodeKind::Call:
            out += n.name;
            out += '(';
            print(*n.lhs, out);
            if (n.rhs) {
                out += ", ";
                print(*n.rhs, out);
            }
            out += ')';
            return;
    }
}

} // namespace

FunctionExpr::FunctionExpr(std::shared_ptr<const ExprNode> root, std::string source, std::string free_var)
    : root_(std::move(root)), source_(std::move(source)), free_var_(std::move(free_var)) {}

FunctionExpr FunctionExpr::parse(std::string_view src, std::string_view free_var) {
    if (free_var.empty()) throw Error(ErrorKind::Syntax, "free variable name is empty");
    Parser parser(src, free_var);
    return FunctionExpr(parser.parse_all(), std::string(src), std::string(free_var));
}

double FunctionExpr::eval(double value) const {
    return checked(*root_, eval_node(*root_, value));
}

std::string FunctionExpr::to_string() const {
    std::string out;
    print(*root_, out);
    return out;
}

} // namespace fracmink
