// Copyright 2026 The Spreadhedge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spreadhedge/payoff_expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <string>

#include <fmt/core.h>

#include "spreadhedge/errors.hpp"

namespace spreadhedge {

class PayoffParser {
 public:
  PayoffParser(std::string_view text, PayoffExpression& out) : text_(text), out_(out) {}

  int ParseAll() {
    const int root = Expr();
    SkipSpace();
    if (pos_ != text_.size()) Fail("unexpected trailing input");
    return root;
  }

 private:
  using Op = PayoffExpression::Op;

  [[noreturn]] void Fail(const std::string& what) const {
    throw Error(ErrorCode::kParseError,
                fmt::format("payoff expression '{}' at offset {}: {}", text_, pos_, what));
  }

  void SkipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool Accept(char c) {
    SkipSpace();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void Expect(char c) {
    if (!Accept(c)) Fail(fmt::format("expected '{}'", c));
  }

  int Add(Op op, double value = 0.0, int lhs = -1, int rhs = -1) {
    out_.nodes_.push_back({op, value, lhs, rhs});
    return static_cast<int>(out_.nodes_.size()) - 1;
  }

  int Expr() {
    int lhs = Term();
    while (true) {
      if (Accept('+')) {
        lhs = Add(Op::kAdd, 0.0, lhs, Term());
      } else if (Accept('-')) {
        lhs = Add(Op::kSub, 0.0, lhs, Term());
      } else {
        return lhs;
      }
    }
  }

  int Term() {
    int lhs = Unary();
    while (Accept('*')) lhs = Add(Op::kMul, 0.0, lhs, Unary());
    return lhs;
  }

  int Unary() {
    if (Accept('-')) return Add(Op::kNeg, 0.0, Unary());
    return Primary();
  }

  int Primary() {
    SkipSpace();
    if (pos_ >= text_.size()) Fail("unexpected end of input");
    if (Accept('(')) {
      const int inner = Expr();
      Expect(')');
      return inner;
    }
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double value = 0.0;
      const char* begin = text_.data() + pos_;
      const auto [ptr, ec] = std::from_chars(begin, text_.data() + text_.size(), value);
      if (ec != std::errc()) Fail("bad number");
      pos_ += static_cast<std::size_t>(ptr - begin);
      return Add(Op::kConst, value);
    }
    if (c == 'S') {
      ++pos_;
      return Add(Op::kPrice);
    }
    for (const auto& [name, op] : {std::pair{"max", Op::kMax}, std::pair{"min", Op::kMin}}) {
      if (text_.substr(pos_, 3) == name) {
        pos_ += 3;
        Expect('(');
        const int a = Expr();
        Expect(',');
        const int b = Expr();
        Expect(')');
        return Add(op, 0.0, a, b);
      }
    }
    Fail(fmt::format("unexpected character '{}'", c));
  }

  std::string_view text_;
  PayoffExpression& out_;
  std::size_t pos_ = 0;
};

PayoffExpression PayoffExpression::Parse(std::string_view text) {
  PayoffExpression expr;
  expr.root_ = PayoffParser(text, expr).ParseAll();
  return expr;
}

double PayoffExpression::Evaluate(double price) const { return Eval(root_, price); }

double PayoffExpression::Eval(int index, double price) const {
  const Node& n = nodes_[index];
  switch (n.op) {
    case Op::kConst: return n.value;
    case Op::kPrice: return price;
    case Op::kNeg: return -Eval(n.lhs, price);
    case Op::kAdd: return Eval(n.lhs, price) + Eval(n.rhs, price);
    case Op::kSub: return Eval(n.lhs, price) - Eval(n.rhs, price);
    case Op::kMul: return Eval(n.lhs, price) * Eval(n.rhs, price);
    case Op::kMax: return std::max(Eval(n.lhs, price), Eval(n.rhs, price));
    case Op::kMin: return std::min(Eval(n.lhs, price), Eval(n.rhs, price));
  }
  return 0.0;
}

}  // namespace spreadhedge
