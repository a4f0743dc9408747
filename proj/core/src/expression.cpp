#include "fpt/expression.hpp"

#include "fpt/error.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <vector>

namespace fpt {

struct Expression::Node {
    enum class Kind { kConst, kVar, kNeg, kAdd, kSub, kMul, kDiv, kPow, kCall };
    Kind kind = Kind::kConst;
    double value = 0.0;
    double (*fn)(double) = nullptr;
    std::vector<std::shared_ptr<const Node>> args;

    double eval(double x) const {
        switch (kind) {
            case Kind::kConst: return value;
            case Kind::kVar: return x;
            case Kind::kNeg: return -args[0]->eval(x);
            case Kind::kAdd: return args[0]->eval(x) + args[1]->eval(x);
            case Kind::kSub: return args[0]->eval(x) - args[1]->eval(x);
            case Kind::kMul: return args[0]->eval(x) * args[1]->eval(x);
            case Kind::kDiv: return args[0]->eval(x) / args[1]->eval(x);
            case Kind::kPow: return std::pow(args[0]->eval(x), args[1]->eval(x));
            case Kind::kCall: return fn(args[0]->eval(x));
        }
        return 0.0;
    }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Kind = Expression::Node::Kind;

double sgn(double x) { return static_cast<double>((x > 0.0) - (x < 0.0)); }

struct Function {
    const char* name;
    double (*fn)(double);
};

const Function kFunctions[] = {
    {"sin", [](double x) { return std::sin(x); }},   {"cos", [](double x) { return std::cos(x); }},
    {"tan", [](double x) { return std::tan(x); }},   {"exp", [](double x) { return std::exp(x); }},
    {"log", [](double x) { return std::log(x); }},   {"sqrt", [](double x) { return std::sqrt(x); }},
    {"abs", [](double x) { return std::abs(x); }},   {"sgn", sgn},
    {"sign", sgn},                                   {"tanh", [](double x) { return std::tanh(x); }},
    {"sinh", [](double x) { return std::sinh(x); }}, {"cosh", [](double x) { return std::cosh(x); }},
    {"atan", [](double x) { return std::atan(x); }}, {"erf", [](double x) { return std::erf(x); }},
};

NodePtr make_const(double v) {
    auto n = std::make_shared<Expression::Node>();
    n->kind = Kind::kConst;
    n->value = v;
    return n;
}

NodePtr make_op(Kind k, std::vector<NodePtr> args, double (*fn)(double) = nullptr) {
    auto n = std::make_shared<Expression::Node>();
    n->kind = k;
    n->args = std::move(args);
    n->fn = fn;
    return n;
}

class Parser {
public:
    Parser(std::string_view src, std::string_view var) : src_(src), var_(var) {}

    NodePtr parse() {
        auto n = expr();
        skip_ws();
        if (pos_ != src_.size()) fail("unexpected character");
        return n;
    }

private:
    [[noreturn]] void fail(const char* what) const {
        std::ostringstream os;
        os << "expression '" << src_ << "': " << what << " at position " << pos_;
        throw InputError(os.str());
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr expr() {
        auto lhs = term();
        for (;;) {
            if (accept('+')) lhs = make_op(Kind::kAdd, {lhs, term()});
            else if (accept('-')) lhs = make_op(Kind::kSub, {lhs, term()});
            else return lhs;
        }
    }

    NodePtr term() {
        auto lhs = unary();
        for (;;) {
            if (accept('*')) lhs = make_op(Kind::kMul, {lhs, unary()});
            else if (accept('/')) lhs = make_op(Kind::kDiv, {lhs, unary()});
            else return lhs;
        }
    }

    NodePtr unary() {
        if (accept('-')) return make_op(Kind::kNeg, {unary()});
        if (accept('+')) return unary();
        return power();
    }

    NodePtr power() {
        auto base = primary();
        if (accept('^')) return make_op(Kind::kPow, {base, unary()});
        return base;
    }

    NodePtr primary() {
        skip_ws();
        if (pos_ >= src_.size()) fail("unexpected end of input");
        if (accept('(')) {
            auto n = expr();
            if (!accept(')')) fail("expected ')'");
            return n;
        }
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        fail("unexpected character");
    }

    NodePtr number() {
        const std::string tail(src_.substr(pos_));
        char* end = nullptr;
        const double v = std::strtod(tail.c_str(), &end);
        if (end == tail.c_str()) fail("malformed number");
        pos_ += static_cast<std::size_t>(end - tail.c_str());
        return make_const(v);
    }

    NodePtr identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
            ++pos_;
        }
        const std::string_view name = src_.substr(start, pos_ - start);
        if (name == var_) return make_op(Kind::kVar, {});
        if (name == "pi") return make_const(std::numbers::pi);
        if (name == "e") return make_const(std::numbers::e);
        for (const auto& f : kFunctions) {
            if (name == f.name) {
                if (!accept('(')) fail("expected '(' after function name");
                auto arg = expr();
                if (!accept(')')) fail("expected ')'");
                return make_op(Kind::kCall, {arg}, f.fn);
            }
        }
        pos_ = start;
        fail("unknown identifier");
    }

    std::string_view src_;
    std::string_view var_;
    std::size_t pos_ = 0;
};

}  // namespace

Expression::Expression(std::string_view source, std::string variable)
    : source_(source), variable_(std::move(variable)) {
    root_ = Parser(source_, variable_).parse();
}

double Expression::operator()(double value) const { return root_->eval(value); }

}  // namespace fpt
