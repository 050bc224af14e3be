#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lbsim {

/// Raised on malformed formulas. `offset()` is the character position in
/// the source text where parsing stopped.
class ExprError : public std::runtime_error {
public:
    ExprError(const std::string& what, std::size_t offset);
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// Arithmetic formula over a single variable `t`.
///
/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/'|'%') factor)*
///   factor := number | 't' | 'pi' | func '(' expr ')' | '(' expr ')' | '-' factor
///   func   := 'sin' | 'floor'
///
/// '%' is the floating remainder with the sign of the dividend (std::fmod).
/// The AST is stored in a flat node array so that Expr is a cheap value type.
class Expr {
public:
    enum class Kind { Number, Var, Neg, Add, Sub, Mul, Div, Mod, Sin, Floor };

    struct Node {
        Kind kind;
        double value = 0.0;  // Number only
        int lhs = -1;        // operand for unary nodes
        int rhs = -1;
    };

    /// Constant zero.
    Expr();

    static Expr parse(std::string_view text);
    static Expr constant(double value);

    double operator()(double t) const;

    /// Canonical text: minimal parentheses, shortest round-trip literals.
    std::string to_string() const;

    bool is_constant_zero() const;

    friend bool operator==(const Expr& a, const Expr& b);

private:
    friend class ExprParser;

    double eval(int idx, double t) const;
    void print(int idx, std::string& out) const;
    bool equal_subtree(int a, const Expr& other, int b) const;

    std::vector<Node> nodes_;
    int root_ = -1;
};

}  // namespace lbsim
