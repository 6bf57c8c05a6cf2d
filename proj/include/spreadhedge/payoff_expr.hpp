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

#ifndef SPREADHEDGE_PAYOFF_EXPR_HPP_
#define SPREADHEDGE_PAYOFF_EXPR_HPP_

#include <string_view>
#include <vector>

namespace spreadhedge {

// Payoffs written as expressions in the terminal price S, e.g.
// "max(S-100,0)" or "2*min(S,120) - 50". Grammar:
//
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := '-' unary | primary
//   primary := number | 'S' | ('max' | 'min') '(' expr ',' expr ')' | '(' expr ')'
class PayoffExpression {
 public:
  // Throws Error(kParseError) with the offending position.
  static PayoffExpression Parse(std::string_view text);

  double Evaluate(double price) const;

 private:
  enum class Op { kConst, kPrice, kNeg, kAdd, kSub, kMul, kMax, kMin };
  struct Node {
    Op op;
    double value = 0.0;
    int lhs = -1;
    int rhs = -1;
  };
  friend class PayoffParser;

  double Eval(int index, double price) const;

  std::vector<Node> nodes_;
  int root_ = -1;
};

}  // namespace spreadhedge

#endif  // SPREADHEDGE_PAYOFF_EXPR_HPP_
