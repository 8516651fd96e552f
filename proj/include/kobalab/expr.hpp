#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "kobalab/complexvec.hpp"

namespace kobalab {

struct ExprError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parsed real-valued expression over the real coordinates of a point in C^d.
// Variables: x1..xd (real parts), y1..yd (imaginary parts).
// Operators: + - * / ^, unary minus. Functions: exp, log, sqrt, abs,
// min(a,b), max(a,b). Numbers in the usual floating formats.
//
// This is the "polynomial plus exponential" grammar used for custom
// sublevel-set domains, e.g. the unit disk is "x1^2 + y1^2 - 1".
class Expr {
  public:
    static Expr parse(const std::string& text, int dim);

    double eval(const CVec& z) const;
    int dim() const { return dim_; }
    const std::string& text() const { return text_; }

    struct Node;

  private:
    std::shared_ptr<const Node> root_;
    int dim_ = 0;
    std::string text_;
};

}  // namespace kobalab
