#include "arcnash/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace arcnash {

namespace {

struct Token {
    enum class Kind { Ident, Number, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
    Kind kind;
    std::string text;
    int line = 1, col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }
    const Token& peek() const { return tok_; }
    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) bump();
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= src_.size()) {
            tok_.kind = Token::Kind::End;
            tok_.text.clear();
            return;
        }
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string id;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                id += src_[pos_];
                bump();
            }
            tok_ = {Token::Kind::Ident, id, tok_.line, tok_.col};
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                num += src_[pos_];
                bump();
            }
            tok_ = {Token::Kind::Number, num, tok_.line, tok_.col};
            return;
        }
        Token::Kind k;
        switch (c) {
            case '+': k = Token::Kind::Plus; break;
            case '-': k = Token::Kind::Minus; break;
            case '*': k = Token::Kind::Star; break;
            case '/': k = Token::Kind::Slash; break;
            case '^': k = Token::Kind::Caret; break;
            case '(': k = Token::Kind::LParen; break;
            case ')': k = Token::Kind::RParen; break;
            default:
                throw parse_error(std::string("unexpected character '") + c + "'", line_, col_);
        }
        bump();
        tok_ = {k, std::string(1, c), tok_.line, tok_.col};
    }
    void bump() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }
    const std::string& src_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

using NodePtr = std::unique_ptr<ExprNode>;

NodePtr mk(ExprNode::Kind k) {
    auto n = std::make_unique<ExprNode>();
    n->kind = k;
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& src) : lex_(src) {}
    NodePtr run() {
        NodePtr e = expr();
        const Token& t = lex_.peek();
        if (t.kind != Token::Kind::End)
            throw parse_error("trailing input '" + t.text + "'", t.line, t.col);
        return e;
    }

private:
    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            const Token& t = lex_.peek();
            if (t.kind == Token::Kind::Plus || t.kind == Token::Kind::Minus) {
                bool plus = t.kind == Token::Kind::Plus;
                lex_.next();
                NodePtr n = mk(plus ? ExprNode::Kind::Add : ExprNode::Kind::Sub);
                n->lhs = std::move(lhs);
                n->rhs = term();
                lhs = std::move(n);
            } else {
                return lhs;
            }
        }
    }
    NodePtr term() {
        NodePtr lhs = factor();
        while (lex_.peek().kind == Token::Kind::Star) {
            lex_.next();
            NodePtr n = mk(ExprNode::Kind::Mul);
            n->lhs = std::move(lhs);
            n->rhs = factor();
            lhs = std::move(n);
        }
        return lhs;
    }
    NodePtr factor() {
        if (lex_.peek().kind == Token::Kind::Minus) {
            Token t = lex_.next();
            NodePtr n = mk(ExprNode::Kind::Neg);
            n->lhs = factor();
            (void)t;
            return n;
        }
        NodePtr b = base();
        if (lex_.peek().kind == Token::Kind::Caret) {
            Token caret = lex_.next();
            const Token& e = lex_.peek();
            if (e.kind == Token::Kind::Minus)
                throw parse_error("negative exponent", e.line, e.col);
            if (e.kind != Token::Kind::Number)
                throw parse_error("exponent must be a nonnegative integer", e.line, e.col);
            Token num = lex_.next();
            NodePtr n = mk(ExprNode::Kind::Pow);
            n->exponent = std::stoi(num.text);
            n->lhs = std::move(b);
            (void)caret;
            return n;
        }
        return b;
    }
    NodePtr base() {
        const Token& t = lex_.peek();
        switch (t.kind) {
            case Token::Kind::Ident: {
                Token id = lex_.next();
                NodePtr n = mk(ExprNode::Kind::Variable);
                n->name = id.text;
                return n;
            }
            case Token::Kind::Number: {
                Token num = lex_.next();
                NodePtr n = mk(ExprNode::Kind::Literal);
                Rational v(num.text);
                if (lex_.peek().kind == Token::Kind::Slash) {
                    lex_.next();
                    const Token& den = lex_.peek();
                    if (den.kind != Token::Kind::Number)
                        throw parse_error("expected denominator after '/'", den.line, den.col);
                    Token d = lex_.next();
                    Rational dv(d.text);
                    if (dv == 0) throw parse_error("zero denominator", d.line, d.col);
                    v /= dv;
                }
                n->value = v;
                return n;
            }
            case Token::Kind::LParen: {
                lex_.next();
                NodePtr inner = expr();
                const Token& close = lex_.peek();
                if (close.kind != Token::Kind::RParen)
                    throw parse_error("expected ')'", close.line, close.col);
                lex_.next();
                return inner;
            }
            default:
                throw parse_error("expected identifier, number or '('", t.line, t.col);
        }
    }
    Lexer lex_;
};

void collect(const ExprNode& n, std::set<std::string>& vars) {
    if (n.kind == ExprNode::Kind::Variable) vars.insert(n.name);
    if (n.lhs) collect(*n.lhs, vars);
    if (n.rhs) collect(*n.rhs, vars);
}

// natural order: alphabetic prefix lexicographic, numeric suffix by value
bool natural_less(const std::string& a, const std::string& b) {
    auto split = [](const std::string& s) {
        size_t i = s.size();
        while (i > 0 && std::isdigit(static_cast<unsigned char>(s[i - 1]))) --i;
        long num = -1;
        if (i < s.size()) num = std::stol(s.substr(i));
        return std::make_pair(s.substr(0, i), num);
    };
    auto [pa, na] = split(a);
    auto [pb, nb] = split(b);
    if (pa != pb) return pa < pb;
    return na < nb;
}

}  // namespace

std::unique_ptr<ExprNode> parse_expression(const std::string& text) {
    Parser p(text);
    return p.run();
}

std::vector<std::string> collect_variables(const ExprNode& ast) {
    std::set<std::string> vars;
    collect(ast, vars);
    std::vector<std::string> out(vars.begin(), vars.end());
    std::sort(out.begin(), out.end(), natural_less);
    return out;
}

MultiPoly lower_to_poly(const ExprNode& ast, const std::vector<std::string>& vars) {
    switch (ast.kind) {
        case ExprNode::Kind::Variable: {
            bool known = false;
            for (const auto& v : vars) known = known || v == ast.name;
            if (!known) throw parse_error("unknown variable " + ast.name, 0, 0);
            return MultiPoly::variable(vars, ast.name);
        }
        case ExprNode::Kind::Literal:
            return MultiPoly::constant(vars, Coefficient(ast.value));
        case ExprNode::Kind::Add:
            return lower_to_poly(*ast.lhs, vars) + lower_to_poly(*ast.rhs, vars);
        case ExprNode::Kind::Sub:
            return lower_to_poly(*ast.lhs, vars) - lower_to_poly(*ast.rhs, vars);
        case ExprNode::Kind::Mul:
            return lower_to_poly(*ast.lhs, vars) * lower_to_poly(*ast.rhs, vars);
        case ExprNode::Kind::Pow:
            return lower_to_poly(*ast.lhs, vars).pow(ast.exponent);
        case ExprNode::Kind::Neg:
            return -lower_to_poly(*ast.lhs, vars);
    }
    throw parse_error("corrupt expression tree", 0, 0);
}

MultiPoly parse_poly(const std::string& text, const std::vector<std::string>& vars) {
    auto ast = parse_expression(text);
    return lower_to_poly(*ast, vars);
}

MultiPoly parse_poly(const std::string& text) {
    auto ast = parse_expression(text);
    return lower_to_poly(*ast, collect_variables(*ast));
}

std::string render(const MultiPoly& p) { return p.str(); }

}  // namespace arcnash
