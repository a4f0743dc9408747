#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace fpt {

/// A compiled scalar expression in one variable, e.g. "-y/(1+y^2)".
///
/// Grammar: numbers, the variable, constants `pi` and `e`, binary + - * / ^
/// (^ is right-associative), unary +/-, parentheses, and the functions
/// sin cos tan exp log sqrt abs sgn tanh sinh cosh atan erf.
/// Parsing errors throw InputError naming the offending position.
class Expression {
public:
    Expression(std::string_view source, std::string variable = "y");

    double operator()(double value) const;
    const std::string& source() const { return source_; }
    const std::string& variable() const { return variable_; }

    struct Node;

private:
    std::string source_;
    std::string variable_;
    std::shared_ptr<const Node> root_;
};

}  // namespace fpt
