#include "am/expr.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <vector>

namespace am {

struct Expr::Node {
    enum Kind { kConst, kVar, kAdd, kSub, kMul, kDiv, kNeg, kPow, kFunc } kind;
    double value = 0.0;                 // kConst
    int var = 0;                        // kVar
    int exponent = 0;                   // kPow
    std::string func;                   // kFunc
    std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;
using Node = Expr::Node;

NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

class Parser {
public:
    Parser(const std::string& src, int nvars) : src_(src), nvars_(nvars) {}

    NodePtr run() {
        NodePtr e = sum();
        skip_ws();
        if (pos_ != src_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ExprError("expression error at offset " + std::to_string(pos_) + " in '" + src_ +
                        "': " + what);
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    NodePtr sum() {
        NodePtr e = term();
        while (true) {
            if (eat('+'))
                e = make({Node::kAdd, 0, 0, 0, "", e, term()});
            else if (eat('-'))
                e = make({Node::kSub, 0, 0, 0, "", e, term()});
            else
                return e;
        }
    }

    NodePtr term() {
        NodePtr e = unary();
        while (true) {
            if (eat('*'))
                e = make({Node::kMul, 0, 0, 0, "", e, unary()});
            else if (eat('/'))
                e = make({Node::kDiv, 0, 0, 0, "", e, unary()});
            else
                return e;
        }
    }

    NodePtr unary() {
        if (eat('-')) return make({Node::kNeg, 0, 0, 0, "", unary(), nullptr});
        return power();
    }

    NodePtr power() {
        NodePtr base = atom();
        if (!eat('^')) return base;
        skip_ws();
        bool neg = eat('-');
        size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected integer exponent after '^'");
        if (neg) fail("negative exponents are not supported; use division");
        int e = std::stoi(src_.substr(start, pos_ - start));
        return make({Node::kPow, 0, 0, e, "", base, nullptr});
    }

    NodePtr atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            eat('(');
            NodePtr e = sum();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return ident();
        fail("expected a number, name, or '('");
    }

    NodePtr number() {
        size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.' ||
                src_[pos_] == 'e' || src_[pos_] == 'E' ||
                ((src_[pos_] == '+' || src_[pos_] == '-') &&
                 (src_[pos_ - 1] == 'e' || src_[pos_ - 1] == 'E'))))
            ++pos_;
        try {
            return make({Node::kConst, std::stod(src_.substr(start, pos_ - start)), 0, 0, "",
                         nullptr, nullptr});
        } catch (const std::exception&) {
            pos_ = start;
            fail("malformed number");
        }
    }

    NodePtr var(int index) {
        if (index < 0 || index >= nvars_)
            fail("coordinate index " + std::to_string(index) + " out of range for dimension " +
                 std::to_string(nvars_));
        return make({Node::kVar, 0, index, 0, "", nullptr, nullptr});
    }

    NodePtr ident() {
        size_t start = pos_;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                      src_[pos_] == '_'))
            ++pos_;
        std::string name = src_.substr(start, pos_ - start);
        if (name == "pi")
            return make({Node::kConst, std::numbers::pi, 0, 0, "", nullptr, nullptr});
        if (name.size() == 2 && name[0] == 'x' && std::isdigit(static_cast<unsigned char>(name[1])))
            return var(name[1] - '0');
        if (name == "x" || name == "theta") return var(0);
        if (name == "y" || name == "phi") return var(1);
        if (name == "z") return var(2);
        if (name == "t") return var(3);
        if (name == "sin" || name == "cos" || name == "exp" || name == "log" || name == "sqrt") {
            if (!eat('(')) fail("expected '(' after function name '" + name + "'");
            NodePtr arg = sum();
            if (!eat(')')) fail("expected ')'");
            return make({Node::kFunc, 0, 0, 0, name, arg, nullptr});
        }
        pos_ = start;
        fail("unknown name '" + name + "'");
    }

    const std::string& src_;
    int nvars_;
    size_t pos_ = 0;
};

Jet eval_node(const Node& n, const JetVec& x) {
    const int nv = x.empty() ? 0 : x[0].nvars();
    switch (n.kind) {
        case Node::kConst:
            return Jet::constant(nv, n.value);
        case Node::kVar:
            return x[n.var];
        case Node::kAdd:
            return eval_node(*n.lhs, x) + eval_node(*n.rhs, x);
        case Node::kSub:
            return eval_node(*n.lhs, x) - eval_node(*n.rhs, x);
        case Node::kMul:
            return eval_node(*n.lhs, x) * eval_node(*n.rhs, x);
        case Node::kDiv:
            return eval_node(*n.lhs, x) / eval_node(*n.rhs, x);
        case Node::kNeg:
            return -1.0 * eval_node(*n.lhs, x);
        case Node::kPow:
            return pow(eval_node(*n.lhs, x), n.exponent);
        case Node::kFunc: {
            Jet a = eval_node(*n.lhs, x);
            if (n.func == "sin") return sin(a);
            if (n.func == "cos") return cos(a);
            if (n.func == "exp") return exp(a);
            if (n.func == "log") return log(a);
            return sqrt(a);
        }
    }
    throw ExprError("corrupt expression tree");
}

}  // namespace

Expr Expr::parse(const std::string& src, int nvars) {
    Expr e;
    e.root_ = Parser(src, nvars).run();
    e.src_ = src;
    return e;
}

Jet Expr::eval(const JetVec& x) const {
    if (!root_) throw ExprError("evaluating an empty expression");
    return eval_node(*root_, x);
}

}  // namespace am
