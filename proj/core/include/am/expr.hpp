#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include "am/jet.hpp"

namespace am {

struct ExprError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Polynomial/trigonometric expression over chart coordinates, evaluated in jet
// arithmetic.  Grammar: + - * / ^int, parentheses, unary minus, numbers, pi,
// sin cos exp log sqrt, variables x0..x9 (aliases x y z t and theta phi for the
// first coordinates).
class Expr {
public:
    static Expr parse(const std::string& src, int nvars);

    Jet eval(const JetVec& x) const;
    const std::string& source() const { return src_; }

    struct Node;

private:
    std::shared_ptr<const Node> root_;
    std::string src_;
};

}  // namespace am
