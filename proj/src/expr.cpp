#include "isodirac/expr.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <utility>

namespace isodirac::expr {

namespace {

constexpr std::array<std::pair<std::string_view, Func>, 7> kFunctions{{
    {"tanh", Func::tanh},
    {"cosh", Func::cosh},
    {"sinh", Func::sinh},
    {"sech", Func::sech},
    {"exp", Func::exp},
    {"sqrt", Func::sqrt},
    {"abs", Func::abs},
}};

std::string_view func_name(Func f) {
    for (const auto& [name, func] : kFunctions)
        if (func == f) return name;
    return "?";
}

NodePtr make(auto&& payload) { return std::make_shared<const Node>(Node{std::forward<decltype(payload)>(payload)}); }

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    NodePtr parse_all() {
        NodePtr root = sum();
        skip_space();
        if (pos_ < src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "', expected operator or end of input");
        return root;
    }

private:
    static constexpr int kMaxDepth = 200;

    std::string_view src_;
    std::size_t pos_ = 0;
    int depth_ = 0;

    [[noreturn]] void fail(const std::string& message) const { throw ParseError(pos_, message); }

    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    NodePtr sum() {
        NodePtr lhs = product();
        for (;;) {
            if (accept('+')) lhs = make(Binary{'+', lhs, product()});
            else if (accept('-')) lhs = make(Binary{'-', lhs, product()});
            else return lhs;
        }
    }

    NodePtr product() {
        NodePtr lhs = unary();
        for (;;) {
            if (accept('*')) lhs = make(Binary{'*', lhs, unary()});
            else if (accept('/')) lhs = make(Binary{'/', lhs, unary()});
            else return lhs;
        }
    }

    // Every recursive path passes through here, so this bounds the nesting depth.
    NodePtr unary() {
        if (++depth_ > kMaxDepth) fail("expression nested too deeply");
        NodePtr node = accept('-') ? make(Negate{unary()}) : power();
        --depth_;
        return node;
    }

    NodePtr power() {
        NodePtr base = primary();
        if (accept('^')) return make(Binary{'^', base, unary()});
        return base;
    }

    NodePtr primary() {
        skip_space();
        if (pos_ >= src_.size()) fail("expected expression");
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr inner = sum();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        fail("expected expression");
    }

    NodePtr number() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t look = pos_ + 1;
            if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
            if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
                pos_ = look;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            }
        }
        const std::string text(src_.substr(start, pos_ - start));
        if (text == ".") {
            pos_ = start;
            fail("malformed number");
        }
        // strtod handles every form the scanner accepts ("1.", ".5", "2e-3").
        char* end = nullptr;
        const double value = std::strtod(text.c_str(), &end);
        if (end != text.c_str() + text.size()) {
            pos_ = start;
            fail("malformed number");
        }
        if (!std::isfinite(value)) {
            pos_ = start;
            fail("numeric literal is not finite");
        }
        return make(Number{value});
    }

    NodePtr identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        const std::string_view name = src_.substr(start, pos_ - start);
        if (name == "x") return make(Variable{});
        for (const auto& [fname, func] : kFunctions) {
            if (name == fname) {
                expect('(');
                NodePtr arg = sum();
                expect(')');
                return make(Call{func, arg});
            }
        }
        pos_ = start;
        fail("unknown identifier '" + std::string(name) + "'");
    }
};

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void print(const Node& node, std::string& out) {
    std::visit(
        [&out](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Number>) {
                out += format_number(n.value);
            } else if constexpr (std::is_same_v<T, Variable>) {
                out += 'x';
            } else if constexpr (std::is_same_v<T, Negate>) {
                out += "(-";
                print(*n.operand, out);
                out += ')';
            } else if constexpr (std::is_same_v<T, Binary>) {
                out += '(';
                print(*n.lhs, out);
                out += ' ';
                out += n.op;
                out += ' ';
                print(*n.rhs, out);
                out += ')';
            } else {
                out += func_name(n.func);
                out += '(';
                print(*n.arg, out);
                out += ')';
            }
        },
        node.data);
}

std::string render(const Node& node) {
    std::string s;
    print(node, s);
    return s;
}

double apply(Func f, double v) {
    switch (f) {
        case Func::tanh: return std::tanh(v);
        case Func::cosh: return std::cosh(v);
        case Func::sinh: return std::sinh(v);
        case Func::sech: return 1.0 / std::cosh(v);
        case Func::exp: return std::exp(v);
        case Func::sqrt: return std::sqrt(v);
        case Func::abs: return std::abs(v);
    }
    return std::nan("");
}

double evaluate(const Node& node, double x) {
    const double v = std::visit(
        [x](const auto& n) -> double {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Number>) {
                return n.value;
            } else if constexpr (std::is_same_v<T, Variable>) {
                return x;
            } else if constexpr (std::is_same_v<T, Negate>) {
                return -evaluate(*n.operand, x);
            } else if constexpr (std::is_same_v<T, Binary>) {
                const double a = evaluate(*n.lhs, x);
                const double b = evaluate(*n.rhs, x);
                switch (n.op) {
                    case '+': return a + b;
                    case '-': return a - b;
                    case '*': return a * b;
                    case '/': return a / b;
                    default: return std::pow(a, b);
                }
            } else {
                return apply(n.func, evaluate(*n.arg, x));
            }
        },
        node.data);
    if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "non-finite value in '" << render(node) << "' at x = " << x;
        throw EvalError(os.str());
    }
    return v;
}

bool same(const Node& a, const Node& b) {
    if (a.data.index() != b.data.index()) return false;
    return std::visit(
        [&b](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            const T& m = std::get<T>(b.data);
            if constexpr (std::is_same_v<T, Number>) {
                return n.value == m.value;
            } else if constexpr (std::is_same_v<T, Variable>) {
                return true;
            } else if constexpr (std::is_same_v<T, Negate>) {
                return same(*n.operand, *m.operand);
            } else if constexpr (std::is_same_v<T, Binary>) {
                return n.op == m.op && same(*n.lhs, *m.lhs) && same(*n.rhs, *m.rhs);
            } else {
                return n.func == m.func && same(*n.arg, *m.arg);
            }
        },
        a.data);
}

}  // namespace

ParseError::ParseError(std::size_t offset, const std::string& message)
    : std::runtime_error("syntax error at offset " + std::to_string(offset) + ": " + message), offset_(offset) {}

Expr parse(std::string_view source) { return Expr(Parser(source).parse_all()); }

double eval(const Expr& expr, double x) { return evaluate(expr.root(), x); }

std::string to_string(const Expr& expr) { return render(expr.root()); }

bool operator==(const Expr& a, const Expr& b) { return same(a.root(), b.root()); }

SampledFunction sample(const Expr& expr, const Grid& grid) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        try {
            v[i] = eval(expr, grid.x(i));
        } catch (const EvalError& e) {
            throw EvalError(std::string(e.what()) + " (grid index " + std::to_string(i) + ")");
        }
    }
    return SampledFunction(grid, std::move(v));
}

}  // namespace isodirac::expr
