#include "lbsim/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

namespace lbsim {

ExprError::ExprError(const std::string& what, std::size_t offset)
    : std::runtime_error(what + " at offset " + std::to_string(offset)),
      offset_(offset) {}

namespace {

int precedence(Expr::Kind k) {
    switch (k) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub:
            return 1;
        case Expr::Kind::Mul:
        case Expr::Kind::Div:
        case Expr::Kind::Mod:
            return 2;
        case Expr::Kind::Neg:
            return 3;
        default:
            return 4;
    }
}

const char* op_symbol(Expr::Kind k) {
    switch (k) {
        case Expr::Kind::Add: return " + ";
        case Expr::Kind::Sub: return " - ";
        case Expr::Kind::Mul: return " * ";
        case Expr::Kind::Div: return " / ";
        case Expr::Kind::Mod: return " % ";
        default: return "?";
    }
}

void append_number(std::string& out, double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, res.ptr);
}

}  // namespace

class ExprParser {
public:
    ExprParser(std::string_view text, Expr& out) : text_(text), out_(out) {}

    void run() {
        skip_ws();
        if (pos_ >= text_.size()) {
            throw ExprError("empty expression", pos_);
        }
        out_.root_ = expr();
        skip_ws();
        if (pos_ != text_.size()) {
            throw ExprError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
        }
    }

private:
    int add(Expr::Node n) {
        out_.nodes_.push_back(n);
        return static_cast<int>(out_.nodes_.size()) - 1;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            throw ExprError(std::string("expected '") + c + "'", pos_);
        }
    }

    int expr() {
        int lhs = term();
        for (;;) {
            if (accept('+')) {
                lhs = add({Expr::Kind::Add, 0.0, lhs, term()});
            } else if (accept('-')) {
                lhs = add({Expr::Kind::Sub, 0.0, lhs, term()});
            } else {
                return lhs;
            }
        }
    }

    int term() {
        int lhs = factor();
        for (;;) {
            if (accept('*')) {
                lhs = add({Expr::Kind::Mul, 0.0, lhs, factor()});
            } else if (accept('/')) {
                lhs = add({Expr::Kind::Div, 0.0, lhs, factor()});
            } else if (accept('%')) {
                lhs = add({Expr::Kind::Mod, 0.0, lhs, factor()});
            } else {
                return lhs;
            }
        }
    }

    int factor() {
        skip_ws();
        if (pos_ >= text_.size()) {
            throw ExprError("unexpected end of expression", pos_);
        }
        char c = text_[pos_];
        if (c == '-') {
            ++pos_;
            int operand = factor();
            return add({Expr::Kind::Neg, 0.0, operand, -1});
        }
        if (c == '(') {
            ++pos_;
            int inner = expr();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return number();
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            std::string_view ident = text_.substr(start, pos_ - start);
            if (ident == "t") {
                return add({Expr::Kind::Var});
            }
            if (ident == "pi") {
                return add({Expr::Kind::Number, std::numbers::pi});
            }
            if (ident == "sin" || ident == "floor") {
                expect('(');
                int arg = expr();
                expect(')');
                return add({ident == "sin" ? Expr::Kind::Sin : Expr::Kind::Floor, 0.0, arg, -1});
            }
            throw ExprError("unknown identifier '" + std::string(ident) + "'", start);
        }
        throw ExprError(std::string("unexpected character '") + c + "'", pos_);
    }

    int number() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
            ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t save = pos_++;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
                ++pos_;
            }
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                    ++pos_;
                }
            } else {
                pos_ = save;
            }
        }
        double v = 0.0;
        const char* first = text_.data() + start;
        const char* last = text_.data() + pos_;
        auto res = std::from_chars(first, last, v);
        if (res.ec != std::errc() || res.ptr != last) {
            throw ExprError("malformed number", start);
        }
        return add({Expr::Kind::Number, v});
    }

    std::string_view text_;
    Expr& out_;
    std::size_t pos_ = 0;
};

Expr::Expr() : nodes_{{Kind::Number, 0.0}}, root_(0) {}

Expr Expr::parse(std::string_view text) {
    Expr e;
    e.nodes_.clear();
    ExprParser(text, e).run();
    return e;
}

Expr Expr::constant(double value) {
    Expr e;
    e.nodes_.clear();
    if (std::signbit(value)) {
        e.nodes_.push_back({Kind::Number, -value});
        e.nodes_.push_back({Kind::Neg, 0.0, 0, -1});
        e.root_ = 1;
    } else {
        e.nodes_.push_back({Kind::Number, value});
        e.root_ = 0;
    }
    return e;
}

double Expr::operator()(double t) const { return eval(root_, t); }

double Expr::eval(int idx, double t) const {
    const Node& n = nodes_[static_cast<std::size_t>(idx)];
    switch (n.kind) {
        case Kind::Number: return n.value;
        case Kind::Var: return t;
        case Kind::Neg: return -eval(n.lhs, t);
        case Kind::Add: return eval(n.lhs, t) + eval(n.rhs, t);
        case Kind::Sub: return eval(n.lhs, t) - eval(n.rhs, t);
        case Kind::Mul: return eval(n.lhs, t) * eval(n.rhs, t);
        case Kind::Div: return eval(n.lhs, t) / eval(n.rhs, t);
        case Kind::Mod: return std::fmod(eval(n.lhs, t), eval(n.rhs, t));
        case Kind::Sin: return std::sin(eval(n.lhs, t));
        case Kind::Floor: return std::floor(eval(n.lhs, t));
    }
    return 0.0;
}

std::string Expr::to_string() const {
    std::string out;
    print(root_, out);
    return out;
}

void Expr::print(int idx, std::string& out) const {
    const Node& n = nodes_[static_cast<std::size_t>(idx)];
    auto child = [&](int c, bool paren) {
        if (paren) out += '(';
        print(c, out);
        if (paren) out += ')';
    };
    switch (n.kind) {
        case Kind::Number:
            if (n.value == std::numbers::pi) {
                out += "pi";
            } else {
                append_number(out, n.value);
            }
            return;
        case Kind::Var:
            out += 't';
            return;
        case Kind::Neg:
            out += '-';
            child(n.lhs, precedence(nodes_[static_cast<std::size_t>(n.lhs)].kind) < precedence(Kind::Neg));
            return;
        case Kind::Sin:
        case Kind::Floor:
            out += n.kind == Kind::Sin ? "sin" : "floor";
            child(n.lhs, true);
            return;
        default: {
            int p = precedence(n.kind);
            child(n.lhs, precedence(nodes_[static_cast<std::size_t>(n.lhs)].kind) < p);
            out += op_symbol(n.kind);
            child(n.rhs, precedence(nodes_[static_cast<std::size_t>(n.rhs)].kind) <= p);
            return;
        }
    }
}

bool Expr::is_constant_zero() const {
    const Node& n = nodes_[static_cast<std::size_t>(root_)];
    return n.kind == Kind::Number && n.value == 0.0;
}

bool Expr::equal_subtree(int a, const Expr& other, int b) const {
    const Node& x = nodes_[static_cast<std::size_t>(a)];
    const Node& y = other.nodes_[static_cast<std::size_t>(b)];
    if (x.kind != y.kind) return false;
    if (x.kind == Kind::Number) return x.value == y.value;
    if (x.lhs >= 0 && !equal_subtree(x.lhs, other, y.lhs)) return false;
    if (x.rhs >= 0 && !equal_subtree(x.rhs, other, y.rhs)) return false;
    return true;
}

bool operator==(const Expr& a, const Expr& b) { return a.equal_subtree(a.root_, b, b.root_); }

}  // namespace lbsim
