// Copyright 2026 The fsmguard Authors
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

#include "fsmguard/rtl/parser.h"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace fsmguard {
namespace {

bool IsAnnotation(std::string_view comment) {
  return comment.find("@protected") != std::string_view::npos;
}

// Extracts the names following "@protected" in a comment. Accepts a comma or
// whitespace separated list.
std::vector<std::string> AnnotationNames(std::string_view comment) {
  std::vector<std::string> names;
  size_t at = comment.find("@protected");
  if (at == std::string_view::npos) return names;
  size_t i = at + std::string_view("@protected").size();
  while (i < comment.size()) {
    while (i < comment.size() &&
           (std::isspace(static_cast<unsigned char>(comment[i])) || comment[i] == ',')) {
      ++i;
    }
    size_t start = i;
    while (i < comment.size() &&
           (std::isalnum(static_cast<unsigned char>(comment[i])) || comment[i] == '_' ||
            comment[i] == '$')) {
      ++i;
    }
    if (i == start) break;
    if (std::isdigit(static_cast<unsigned char>(comment[start]))) break;
    names.emplace_back(comment.substr(start, i - start));
  }
  return names;
}

struct PendingComment {
  std::string text;
  int line;
};

class Parser {
 public:
  explicit Parser(const std::vector<Token>& tokens) : tokens_(tokens) {}

  ParseResult Run() {
    ParseResult result;
    PrePass();
    if (!failed_) ParseTopLevel();
    if (!failed_) CheckSemantics();
    result.diagnostics = std::move(diagnostics_);
    if (!HasErrors(result.diagnostics)) result.ast = std::move(ast_);
    return result;
  }

 private:
  // ---- token access -------------------------------------------------------

  const Token& Peek() {
    while (tokens_[pos_].IsTrivia()) {
      const Token& t = tokens_[pos_];
      if (t.kind == TokenKind::kComment && !IsAnnotation(t.text)) {
        pending_.push_back(PendingComment{t.text, t.line});
      }
      ++pos_;
    }
    return tokens_[pos_];
  }

  // Non-trivia token `ahead` positions past the current one.
  const Token& PeekAhead(size_t ahead) {
    Peek();
    size_t i = pos_;
    while (true) {
      if (tokens_[i].kind == TokenKind::kEndOfFile) return tokens_[i];
      if (!tokens_[i].IsTrivia()) {
        if (ahead == 0) return tokens_[i];
        --ahead;
      }
      ++i;
    }
  }

  const Token& Next() {
    const Token& t = Peek();
    if (t.kind != TokenKind::kEndOfFile) ++pos_;
    last_line_ = t.line;
    return t;
  }

  bool AcceptOp(const char* op) {
    if (Peek().IsOperator(op)) {
      Next();
      return true;
    }
    return false;
  }

  bool AcceptKeyword(const char* kw) {
    if (Peek().IsKeyword(kw)) {
      Next();
      return true;
    }
    return false;
  }

  bool ExpectOp(const char* op, const char* context) {
    if (AcceptOp(op)) return true;
    return SyntaxError(absl::StrCat("expected '", op, "' ", context));
  }

  bool ExpectKeyword(const char* kw, const char* context) {
    if (AcceptKeyword(kw)) return true;
    return SyntaxError(absl::StrCat("expected '", kw, "' ", context));
  }

  bool ExpectIdentifier(std::string* out, const char* context) {
    const Token& t = Peek();
    if (t.kind != TokenKind::kIdentifier) {
      return SyntaxError(absl::StrCat("expected identifier ", context));
    }
    *out = Next().text;
    return true;
  }

  std::string Describe(const Token& t) {
    if (t.kind == TokenKind::kEndOfFile) return "end of file";
    return absl::StrCat("'", t.text, "'");
  }

  bool SyntaxError(const std::string& message) {
    const Token& t = Peek();
    int line = t.kind == TokenKind::kEndOfFile ? last_line_ : t.line;
    return Fail(kErrSyntax, absl::StrCat(message, ", found ", Describe(t)), line);
  }

  bool Fail(std::string_view code, std::string message, int line) {
    Error(code, std::move(message), Span{line, line});
    failed_ = true;
    return false;
  }

  void Error(std::string_view code, std::string message, Span span) {
    diagnostics_.push_back(
        Diagnostic{Severity::kError, std::string(code), std::move(message), span});
  }

  std::vector<std::string> TakeLeading() {
    Peek();
    std::vector<std::string> out;
    for (PendingComment& c : pending_) out.push_back(std::move(c.text));
    pending_.clear();
    return out;
  }

  // A comment that starts on `line` right after a node ends belongs to it.
  std::string TakeTrailing(int line) {
    if (pending_.empty()) {
      const Token& t = tokens_[pos_];
      if (t.kind == TokenKind::kComment && t.line == line && !IsAnnotation(t.text)) {
        ++pos_;
        return t.text;
      }
      return "";
    }
    if (pending_.front().line == line) {
      std::string text = std::move(pending_.front().text);
      pending_.pop_front();
      return text;
    }
    return "";
  }

  // ---- parsing ------------------------------------------------------------

  void PrePass() {
    for (const Token& t : tokens_) {
      if (t.kind == TokenKind::kComment) {
        for (std::string& name : AnnotationNames(t.text)) {
          if (std::find(ast_.protected_annotations.begin(), ast_.protected_annotations.end(),
                        name) == ast_.protected_annotations.end()) {
            ast_.protected_annotations.push_back(std::move(name));
          }
        }
      } else if (t.kind == TokenKind::kKeyword && IsSystemVerilogOnlyKeyword(t.text)) {
        Error(kErrSystemVerilog,
              absl::StrCat("SystemVerilog keyword '", t.text,
                           "' is not allowed in a Verilog design"),
              Span{t.line, t.line});
        failed_ = true;
      } else if (t.IsKeyword("casex") || t.IsKeyword("casez")) {
        Error(kErrUnsupported, absl::StrCat("'", t.text, "' is not supported"),
              Span{t.line, t.line});
        failed_ = true;
      }
    }
  }

  void ParseTopLevel() {
    ast_.comments.leading = TakeLeading();
    if (!Peek().IsKeyword("module")) {
      if (Peek().kind == TokenKind::kEndOfFile) {
        Fail(kErrNoStateMachine, "no state machine found", Peek().line);
      } else {
        SyntaxError("expected 'module'");
      }
      return;
    }
    int first_line = Next().line;
    if (!ExpectIdentifier(&ast_.module_name, "after 'module'")) return;
    if (Peek().IsOperator("#")) {
      Fail(kErrUnsupported, "module parameter ports are not supported", Peek().line);
      return;
    }
    if (AcceptOp("(")) {
      if (!ParsePortList()) return;
    }
    if (!ExpectOp(";", "after module header")) return;
    ast_.comments.trailing = TakeTrailing(last_line_);

    while (!failed_) {
      const Token& t = Peek();
      if (t.kind == TokenKind::kEndOfFile) {
        SyntaxError("expected 'endmodule'");
        return;
      }
      if (t.IsKeyword("endmodule")) break;
      if (!ParseModuleItem()) return;
    }
    ast_.closing_comments = TakeLeading();
    Next();  // endmodule
    ast_.span = Span{first_line, last_line_};
    if (Peek().kind != TokenKind::kEndOfFile) {
      Fail(kErrUnsupported, "only one module per design is supported", Peek().line);
    }
  }

  bool ParseRange(int* width) {
    int first = Peek().line;
    if (!ExpectOp("[", "to open range")) return false;
    const Token& msb = Next();
    if (!ExpectOp(":", "in range")) return false;
    const Token& lsb = Next();
    if (msb.kind != TokenKind::kNumber || lsb.kind != TokenKind::kNumber) {
      return Fail(kErrUnsupported, "ranges must use integer bounds", first);
    }
    if (!ExpectOp("]", "to close range")) return false;
    long hi = std::stol(msb.text);
    long lo = std::stol(lsb.text);
    long w = (hi > lo ? hi - lo : lo - hi) + 1;
    if (w > Encoding::kMaxWidth) return Fail(kErrUnsupported, "range too wide", first);
    *width = static_cast<int>(w);
    return true;
  }

  static bool DirectionOf(const Token& t, PortDirection* direction) {
    if (t.IsKeyword("input")) *direction = PortDirection::kInput;
    else if (t.IsKeyword("output")) *direction = PortDirection::kOutput;
    else if (t.IsKeyword("inout")) *direction = PortDirection::kInout;
    else return false;
    return true;
  }

  // Reads `wire`/`reg` qualifiers. Reports both when they conflict.
  bool ParseNetKinds(NetKind* kind, bool* conflict) {
    *conflict = false;
    while (Peek().IsKeyword("wire") || Peek().IsKeyword("reg") || Peek().IsKeyword("signed")) {
      const Token& t = Next();
      if (t.text == "signed") continue;
      NetKind k = t.text == "wire" ? NetKind::kWire : NetKind::kReg;
      if (*kind != NetKind::kImplicit && *kind != k) *conflict = true;
      *kind = k;
    }
    return true;
  }

  bool ParsePortList() {
    if (AcceptOp(")")) return true;
    PortDirection direction;
    ast_.port_style = DirectionOf(Peek(), &direction) ? PortStyle::kAnsi : PortStyle::kNonAnsi;
    bool have_direction = false;
    NetKind kind = NetKind::kImplicit;
    int width = 1;
    while (true) {
      Port port;
      port.comments.leading = TakeLeading();
      int first_line = Peek().line;
      if (ast_.port_style == PortStyle::kAnsi) {
        if (DirectionOf(Peek(), &direction)) {
          Next();
          have_direction = true;
          kind = NetKind::kImplicit;
          width = 1;
          bool conflict = false;
          ParseNetKinds(&kind, &conflict);
          if (Peek().IsOperator("[") && !ParseRange(&width)) return false;
          if (!ExpectIdentifier(&port.name, "in port list")) return false;
          if (conflict) {
            return Fail(kErrNetKindConflict,
                        absl::StrCat("conflicting net kinds for ", port.name), first_line);
          }
        } else {
          if (!have_direction) return SyntaxError("expected port direction");
          if (!ExpectIdentifier(&port.name, "in port list")) return false;
        }
        port.direction = direction;
        port.kind = kind;
        port.width = width;
      } else {
        if (!ExpectIdentifier(&port.name, "in port list")) return false;
        ports_without_direction_.insert(port.name);
      }
      port.span = Span{first_line, last_line_};
      for (const Port& existing : ast_.ports) {
        if (existing.name == port.name) {
          return Fail(kErrSemantic, absl::StrCat("duplicate port ", port.name), first_line);
        }
      }
      ast_.ports.push_back(std::move(port));
      if (AcceptOp(",")) {
        ast_.ports.back().comments.trailing = TakeTrailing(last_line_);
        continue;
      }
      if (!ExpectOp(")", "to close port list")) return false;
      return true;
    }
  }

  bool ParseModuleItem() {
    const Token& t = Peek();
    PortDirection direction;
    if (DirectionOf(t, &direction)) return ParsePortDeclaration(direction);
    if (t.IsKeyword("reg") || t.IsKeyword("wire")) return ParseNetDeclaration();
    if (t.IsKeyword("parameter") || t.IsKeyword("localparam")) return ParseParameters();
    if (t.IsKeyword("always")) return ParseAlways();
    if (t.IsKeyword("assign")) return ParseContinuousAssign();
    if (t.kind == TokenKind::kKeyword) {
      return Fail(kErrUnsupported, absl::StrCat("'", t.text, "' is not supported"), t.line);
    }
    return SyntaxError("expected a module item");
  }

  Port* FindPort(const std::string& name) {
    for (Port& p : ast_.ports) {
      if (p.name == name) return &p;
    }
    return nullptr;
  }

  bool ParsePortDeclaration(PortDirection direction) {
    std::vector<std::string> leading = TakeLeading();
    int first_line = Next().line;
    NetKind kind = NetKind::kImplicit;
    bool conflict = false;
    ParseNetKinds(&kind, &conflict);
    int width = 1;
    if (Peek().IsOperator("[") && !ParseRange(&width)) return false;
    std::vector<Port*> declared;
    while (true) {
      std::string name;
      if (!ExpectIdentifier(&name, "in port declaration")) return false;
      if (conflict) {
        return Fail(kErrNetKindConflict, absl::StrCat("conflicting net kinds for ", name),
                    first_line);
      }
      Port* port = FindPort(name);
      if (port == nullptr) {
        return Fail(kErrSemantic, absl::StrCat(name, " is not in the port list"), first_line);
      }
      if (ast_.port_style == PortStyle::kAnsi || !ports_without_direction_.count(name)) {
        return Fail(kErrSemantic, absl::StrCat("port ", name, " is declared twice"),
                    first_line);
      }
      ports_without_direction_.erase(name);
      port->direction = direction;
      port->kind = kind;
      port->width = width;
      declared.push_back(port);
      if (!AcceptOp(",")) break;
    }
    if (!ExpectOp(";", "after port declaration")) return false;
    for (Port* port : declared) port->span = Span{first_line, last_line_};
    declared.front()->comments.leading = std::move(leading);
    declared.back()->comments.trailing = TakeTrailing(last_line_);
    return true;
  }

  bool ParseNetDeclaration() {
    std::vector<std::string> leading = TakeLeading();
    const Token& kw = Next();
    int first_line = kw.line;
    NetKind kind = kw.text == "reg" ? NetKind::kReg : NetKind::kWire;
    while (AcceptKeyword("signed")) {
    }
    int width = 1;
    if (Peek().IsOperator("[") && !ParseRange(&width)) return false;
    size_t first_new = ast_.nets.size();
    while (true) {
      std::string name;
      if (!ExpectIdentifier(&name, "in declaration")) return false;
      if (Port* port = FindPort(name)) {
        if (port->kind != NetKind::kImplicit && port->kind != kind) {
          return Fail(kErrNetKindConflict, absl::StrCat("conflicting net kinds for ", name),
                      first_line);
        }
        port->kind = kind;
        if (width != 1) port->width = width;
      } else {
        for (const NetDecl& n : ast_.nets) {
          if (n.name == name) {
            return Fail(kErrSemantic, absl::StrCat(name, " is declared twice"), first_line);
          }
        }
        NetDecl net;
        net.name = name;
        net.kind = kind;
        net.width = width;
        ast_.nets.push_back(std::move(net));
      }
      if (!AcceptOp(",")) break;
    }
    if (!ExpectOp(";", "after declaration")) return false;
    std::string trailing = TakeTrailing(last_line_);
    for (size_t i = first_new; i < ast_.nets.size(); ++i) {
      ast_.nets[i].span = Span{first_line, last_line_};
    }
    if (first_new < ast_.nets.size()) {
      ast_.nets[first_new].comments.leading = std::move(leading);
      ast_.nets.back().comments.trailing = std::move(trailing);
    }
    return true;
  }

  bool ParseParameters() {
    std::vector<std::string> leading = TakeLeading();
    const Token& kw = Next();
    bool local = kw.text == "localparam";
    if (local) {
      ast_.notes.push_back(
          absl::StrCat("line ", kw.line, ": localparam normalized to parameter"));
    }
    int range_width = 0;
    if (Peek().IsOperator("[") && !ParseRange(&range_width)) return false;
    size_t first_new = ast_.parameters.size();
    while (true) {
      Parameter param;
      param.from_localparam = local;
      if (first_new != ast_.parameters.size()) param.comments.leading = TakeLeading();
      if (!ExpectIdentifier(&param.name, "in parameter declaration")) return false;
      int first_line = last_line_;
      if (!ExpectOp("=", "in parameter declaration")) return false;
      const Token& value = Next();
      if (value.kind == TokenKind::kNumber) {
        return Fail(kErrUnsizedLiteral,
                    absl::StrCat("unsized state literal for ", param.name,
                                 "; use a sized binary literal such as 3'b000"),
                    value.line);
      }
      if (value.kind != TokenKind::kSizedLiteral) {
        return Fail(kErrUnsupported,
                    absl::StrCat("parameter ", param.name,
                                 " must be a sized binary state literal"),
                    value.line);
      }
      auto encoding = Encoding::FromLiteral(value.text);
      if (!encoding.ok()) {
        return Fail(kErrUnsupported, std::string(encoding.status().message()), value.line);
      }
      if (range_width != 0 && range_width != encoding->width()) {
        return Fail(kErrSemantic,
                    absl::StrCat("parameter ", param.name, " literal width ",
                                 encoding->width(), " does not match range width ",
                                 range_width),
                    value.line);
      }
      if (ast_.FindParameter(param.name) != nullptr) {
        return Fail(kErrSemantic, absl::StrCat("parameter ", param.name, " declared twice"),
                    first_line);
      }
      param.value = *encoding;
      param.span = Span{first_line, last_line_};
      ast_.parameters.push_back(std::move(param));
      if (AcceptOp(",")) {
        ast_.parameters.back().comments.trailing = TakeTrailing(last_line_);
        continue;
      }
      break;
    }
    if (!ExpectOp(";", "after parameter declaration")) return false;
    ast_.parameters.back().span.last_line = last_line_;
    ast_.parameters[first_new].comments.leading.insert(
        ast_.parameters[first_new].comments.leading.begin(), leading.begin(), leading.end());
    ast_.parameters.back().comments.trailing = TakeTrailing(last_line_);
    return true;
  }

  bool ParseContinuousAssign() {
    ContinuousAssign assign;
    assign.comments.leading = TakeLeading();
    int first_line = Next().line;
    if (!ExpectIdentifier(&assign.target, "after 'assign'")) return false;
    if (!ExpectOp("=", "in continuous assignment")) return false;
    if (!ParseExprUntilSemicolon(&assign.value)) return false;
    assign.span = Span{first_line, last_line_};
    assign.comments.trailing = TakeTrailing(last_line_);
    ast_.assigns.push_back(std::move(assign));
    return true;
  }

  // Collects tokens until the ')' matching an already-consumed '('.
  bool ParseParenthesizedExpr(Expr* out) {
    int depth = 0;
    while (true) {
      const Token& t = Peek();
      if (t.kind == TokenKind::kEndOfFile || t.IsOperator(";") ||
          t.kind == TokenKind::kKeyword) {
        return SyntaxError("unterminated parenthesized expression");
      }
      if (t.IsOperator("(")) ++depth;
      if (t.IsOperator(")")) {
        if (depth == 0) {
          Next();
          break;
        }
        --depth;
      }
      out->tokens.push_back(Next().text);
    }
    if (out->tokens.empty()) return SyntaxError("empty expression");
    return true;
  }

  bool ParseExprUntilSemicolon(Expr* out) {
    int depth = 0;
    while (true) {
      const Token& t = Peek();
      if (t.kind == TokenKind::kEndOfFile || t.kind == TokenKind::kKeyword) {
        return SyntaxError("expected ';' after expression");
      }
      if (depth == 0 && t.IsOperator(";")) {
        Next();
        break;
      }
      if (t.IsOperator("(")) ++depth;
      if (t.IsOperator(")")) --depth;
      out->tokens.push_back(Next().text);
    }
    if (out->tokens.empty()) return SyntaxError("empty expression");
    return true;
  }

  bool ParseAlways() {
    std::vector<std::string> leading = TakeLeading();
    int first_line = Next().line;
    if (!ExpectOp("@", "after 'always'")) return false;
    bool star = false;
    std::vector<EdgeEvent> events;
    std::vector<std::string> levels;
    if (AcceptOp("*")) {
      star = true;
    } else {
      if (!ExpectOp("(", "to open sensitivity list")) return false;
      if (AcceptOp("*")) {
        star = true;
      } else {
        while (true) {
          if (Peek().IsKeyword("posedge") || Peek().IsKeyword("negedge")) {
            EdgeEvent event;
            event.edge = Next().text == "posedge" ? Edge::kPosedge : Edge::kNegedge;
            if (!ExpectIdentifier(&event.signal, "after edge keyword")) return false;
            events.push_back(std::move(event));
          } else {
            std::string name;
            if (!ExpectIdentifier(&name, "in sensitivity list")) return false;
            levels.push_back(std::move(name));
          }
          if (AcceptOp(",") || AcceptKeyword("or")) continue;
          break;
        }
      }
      if (!ExpectOp(")", "to close sensitivity list")) return false;
    }
    if (!events.empty()) {
      if (!levels.empty()) {
        return Fail(kErrUnsupported, "mixed edge and level sensitivity", first_line);
      }
      if (have_sequential_) {
        return Fail(kErrDuplicateBlock, "two sequential blocks; expected exactly one",
                    first_line);
      }
      have_sequential_ = true;
      ast_.sequential.events = std::move(events);
      ast_.sequential.comments.leading = std::move(leading);
      if (!ParseSequentialBody()) return false;
      ast_.sequential.span = Span{first_line, last_line_};
      ast_.sequential.comments.trailing = TakeTrailing(last_line_);
      return true;
    }
    if (have_combinational_) {
      return Fail(kErrDuplicateBlock, "two combinational blocks; expected exactly one",
                  first_line);
    }
    have_combinational_ = true;
    CombinationalBlock& comb = ast_.combinational;
    comb.star_sensitivity = star;
    comb.sensitivity = std::move(levels);
    comb.comments.leading = std::move(leading);
    if (!ParseCombinationalBody()) return false;
    comb.span = Span{first_line, last_line_};
    comb.comments.trailing = TakeTrailing(last_line_);
    return true;
  }

  // `cur <= VALUE;` optionally wrapped in begin/end.
  bool ParseRegisterUpdate(std::string* target, std::string* value) {
    bool block = AcceptKeyword("begin");
    if (!ExpectIdentifier(target, "in sequential block")) return false;
    if (!AcceptOp("<=") && !AcceptOp("=")) {
      return SyntaxError("expected '<=' in sequential block");
    }
    Expr rhs;
    if (!ParseExprUntilSemicolon(&rhs)) return false;
    if (rhs.tokens.size() != 1 || rhs.Identifiers().size() != 1) {
      return Fail(kErrUnsupported, "state register updates must assign a single name",
                  last_line_);
    }
    *value = rhs.tokens[0];
    if (block) {
      if (!ExpectKeyword("end", "after register update")) return false;
      if (Peek().IsOperator(";")) {
        Next();
        ast_.lint_facts.push_back(LintFact{LintFact::Kind::kSemicolonAfterEnd,
                                           Span{last_line_, last_line_}});
      }
    }
    return true;
  }

  bool ParseSequentialBody() {
    SequentialBlock& seq = ast_.sequential;
    bool block = AcceptKeyword("begin");
    if (!Peek().IsKeyword("if")) {
      return Fail(kErrUnsupported, "sequential block must start with a reset 'if'",
                  Peek().line);
    }
    Next();
    if (!ExpectOp("(", "after 'if'")) return false;
    if (!ParseParenthesizedExpr(&seq.reset_condition)) return false;
    std::string reset_reg;
    if (!ParseRegisterUpdate(&reset_reg, &seq.reset_target)) return false;
    if (!ExpectKeyword("else", "in sequential block")) return false;
    std::string next_reg_target;
    if (!ParseRegisterUpdate(&next_reg_target, &seq.next_reg)) return false;
    if (reset_reg != next_reg_target) {
      return Fail(kErrUnsupported, "reset and update branches assign different registers",
                  last_line_);
    }
    seq.current_reg = reset_reg;
    if (block && !ExpectKeyword("end", "to close sequential block")) return false;
    return true;
  }

  bool ParseCombinationalBody() {
    CombinationalBlock& comb = ast_.combinational;
    bool block = AcceptKeyword("begin");
    while (!Peek().IsKeyword("case")) {
      const Token& t = Peek();
      if (!block || t.IsKeyword("end") || t.kind == TokenKind::kEndOfFile) {
        return Fail(kErrMissingCase, "missing case statement in combinational block",
                    t.line);
      }
      if (t.kind != TokenKind::kIdentifier) {
        return Fail(kErrUnsupported,
                    "only assignments may precede the case statement", t.line);
      }
      if (!ParseStatement(&comb.leading)) return false;
    }
    int case_line = Next().line;
    if (!ExpectOp("(", "after 'case'")) return false;
    if (!ExpectIdentifier(&comb.case_subject, "as case subject")) return false;
    if (!ExpectOp(")", "after case subject")) return false;
    while (!Peek().IsKeyword("endcase")) {
      if (Peek().kind == TokenKind::kEndOfFile) return SyntaxError("expected 'endcase'");
      if (!ParseCaseArm()) return false;
    }
    comb.case_closing_comments = TakeLeading();
    Next();  // endcase
    comb.case_span = Span{case_line, last_line_};
    if (block) {
      if (!Peek().IsKeyword("end")) {
        return Fail(kErrUnsupported, "statements after the case statement are not supported",
                    Peek().line);
      }
      Next();
    }
    return true;
  }

  bool ParseCaseArm() {
    CaseArm arm;
    arm.comments.leading = TakeLeading();
    int first_line = Peek().line;
    if (AcceptKeyword("default")) {
      AcceptOp(":");
    } else {
      while (true) {
        const Token& t = Peek();
        if (t.kind != TokenKind::kIdentifier) {
          return Fail(kErrUnsupported, "case labels must be state parameters", t.line);
        }
        arm.labels.push_back(Next().text);
        if (!AcceptOp(",")) break;
      }
      if (!ExpectOp(":", "after case label")) return false;
    }
    int label_line = last_line_;
    if (Peek().IsKeyword("begin")) {
      Next();
      std::string after_begin = TakeTrailing(last_line_);
      if (!after_begin.empty()) arm.comments.trailing = std::move(after_begin);
      while (!Peek().IsKeyword("end")) {
        if (Peek().kind == TokenKind::kEndOfFile) return SyntaxError("expected 'end'");
        if (!ParseStatement(&arm.body)) return false;
      }
      arm.closing_comments = TakeLeading();
      Next();
      if (Peek().IsOperator(";")) {
        Next();
        ast_.lint_facts.push_back(
            LintFact{LintFact::Kind::kSemicolonAfterEnd, Span{last_line_, last_line_}});
      }
      std::string trailing = TakeTrailing(last_line_);
      if (!trailing.empty()) arm.closing_comments.push_back(std::move(trailing));
    } else {
      if (!ParseStatement(&arm.body)) return false;
    }
    (void)label_line;
    arm.span = Span{first_line, last_line_};
    ast_.combinational.arms.push_back(std::move(arm));
    return true;
  }

  // Parses one statement and appends it (or the contents of a begin/end
  // block) to `out`.
  bool ParseStatement(StatementList* out) {
    const Token& t = Peek();
    if (t.IsKeyword("begin")) {
      Next();
      while (!Peek().IsKeyword("end")) {
        if (Peek().kind == TokenKind::kEndOfFile) return SyntaxError("expected 'end'");
        if (!ParseStatement(out)) return false;
      }
      Next();
      if (Peek().IsOperator(";") && !PeekAhead(1).IsKeyword("else")) {
        Next();
        ast_.lint_facts.push_back(
            LintFact{LintFact::Kind::kSemicolonAfterEnd, Span{last_line_, last_line_}});
      }
      return true;
    }
    if (t.IsOperator(";")) {
      Next();
      return true;
    }
    Statement statement;
    statement.comments.leading = TakeLeading();
    int first_line = Peek().line;
    if (t.IsKeyword("if")) {
      Next();
      IfStatement branch;
      if (!ExpectOp("(", "after 'if'")) return false;
      if (!ParseParenthesizedExpr(&branch.condition)) return false;
      statement.comments.trailing = TakeTrailing(last_line_);
      if (!ParseStatement(&branch.then_branch)) return false;
      if (AcceptKeyword("else")) {
        branch.has_else = true;
        if (!ParseStatement(&branch.else_branch)) return false;
      }
      statement.node = std::move(branch);
    } else if (t.kind == TokenKind::kIdentifier) {
      Assignment assignment;
      assignment.target = Next().text;
      if (Peek().IsOperator("[")) {
        return Fail(kErrUnsupported, "bit-select assignments are not supported", t.line);
      }
      if (AcceptOp("<=")) {
        assignment.nonblocking = true;
      } else if (!ExpectOp("=", "in assignment")) {
        return false;
      }
      if (!ParseExprUntilSemicolon(&assignment.value)) return false;
      statement.node = std::move(assignment);
      statement.comments.trailing = TakeTrailing(last_line_);
    } else if (t.IsKeyword("case")) {
      return Fail(kErrUnsupported, "nested case statements are not supported", t.line);
    } else {
      return SyntaxError("expected a statement");
    }
    statement.span = Span{first_line, last_line_};
    out->push_back(std::move(statement));
    return true;
  }

  // ---- semantic checks ----------------------------------------------------

  int RegisterWidth(const std::string& name, bool* found) {
    *found = true;
    for (const NetDecl& n : ast_.nets) {
      if (n.name == name) return n.width;
    }
    if (const Port* p = ast_.FindPort(name)) return p->width;
    *found = false;
    return 0;
  }

  bool IsDeclaredSignal(const std::string& name) {
    for (const NetDecl& n : ast_.nets) {
      if (n.name == name) return true;
    }
    return ast_.FindPort(name) != nullptr;
  }

  void CheckNextStateAssignments(const StatementList& list) {
    ForEachStatement(list, [&](const Statement& s) {
      if (!s.is_assignment()) return;
      const Assignment& a = s.assignment();
      if (a.target == ast_.state_regs.current) {
        Error(kErrSemantic,
              absl::StrCat("current-state register ", a.target,
                           " is assigned in the combinational block"),
              s.span);
        return;
      }
      if (!IsDeclaredSignal(a.target)) {
        Error(kErrSemantic, absl::StrCat("assignment to undeclared signal ", a.target),
              s.span);
        return;
      }
      if (a.target != ast_.state_regs.next) return;
      bool ok = a.value.tokens.size() == 1 &&
                (ast_.FindParameter(a.value.tokens[0]) != nullptr ||
                 a.value.tokens[0] == ast_.state_regs.current);
      if (!ok) {
        Error(kErrSemantic,
              absl::StrCat("next-state assignment must name a state parameter, found '",
                           a.value.Text(), "'"),
              s.span);
      }
    });
  }

  void CheckSemantics() {
    for (const std::string& name : ports_without_direction_) {
      Error(kErrSemantic, absl::StrCat("port ", name, " has no direction declaration"),
            ast_.span);
    }
    if (!have_sequential_ && !have_combinational_) {
      Error(kErrNoStateMachine, "no state machine found", ast_.span);
      return;
    }
    if (!have_combinational_) {
      Error(kErrMissingCase, "missing case statement: no combinational next-state block",
            ast_.span);
      return;
    }
    if (!have_sequential_) {
      Error(kErrNoStateMachine, "no state machine found: no sequential state register block",
            ast_.span);
      return;
    }
    const SequentialBlock& seq = ast_.sequential;
    CombinationalBlock& comb = ast_.combinational;
    if (comb.case_subject != seq.current_reg) {
      Error(kErrSemantic,
            absl::StrCat("case subject ", comb.case_subject,
                         " is not the state register ", seq.current_reg),
            comb.case_span);
      return;
    }
    ast_.state_regs.current = seq.current_reg;
    ast_.state_regs.next = seq.next_reg;
    bool found = false;
    int current_width = RegisterWidth(seq.current_reg, &found);
    if (!found) {
      Error(kErrSemantic, absl::StrCat("state register ", seq.current_reg, " is not declared"),
            seq.span);
      return;
    }
    int next_width = RegisterWidth(seq.next_reg, &found);
    if (!found) {
      Error(kErrSemantic, absl::StrCat("next-state register ", seq.next_reg, " is not declared"),
            seq.span);
      return;
    }
    if (current_width != next_width) {
      Error(kErrSemantic, "current and next state registers differ in width", seq.span);
      return;
    }
    ast_.state_regs.width = current_width;
    if (ast_.parameters.empty()) {
      Error(kErrNoStateMachine, "no state machine found: no state parameters", ast_.span);
      return;
    }
    for (const Parameter& p : ast_.parameters) {
      if (p.value.width() != current_width) {
        Error(kErrSemantic,
              absl::StrCat("state ", p.name, " is encoded with ", p.value.width(),
                           " bits but the state register has ", current_width),
              p.span);
      }
    }
    if (ast_.FindParameter(seq.reset_target) == nullptr) {
      Error(kErrSemantic, absl::StrCat("reset target ", seq.reset_target, " is not a state"),
            seq.span);
    }
    std::set<std::string> seen;
    bool have_default = false;
    for (const CaseArm& arm : comb.arms) {
      if (arm.is_default()) {
        if (have_default) Error(kErrSemantic, "duplicate default arm", arm.span);
        have_default = true;
      }
      for (const std::string& label : arm.labels) {
        if (ast_.FindParameter(label) == nullptr) {
          Error(kErrSemantic, absl::StrCat("case arm on undeclared state ", label), arm.span);
        } else if (!seen.insert(label).second) {
          Error(kErrSemantic, absl::StrCat("duplicate case label ", label), arm.span);
        }
      }
      CheckNextStateAssignments(arm.body);
    }
    CheckNextStateAssignments(comb.leading);
    ForEachStatement(comb.leading, [&](const Statement& s) {
      if (s.is_if()) Error(kErrUnsupported, "only assignments may precede the case", s.span);
    });
  }

  const std::vector<Token>& tokens_;
  size_t pos_ = 0;
  int last_line_ = 1;
  bool failed_ = false;
  bool have_sequential_ = false;
  bool have_combinational_ = false;
  std::set<std::string> ports_without_direction_;
  std::deque<PendingComment> pending_;
  std::vector<Diagnostic> diagnostics_;
  FsmAst ast_;
};

}  // namespace

ParseResult ParseModule(const std::vector<Token>& tokens) {
  if (tokens.empty() || tokens.back().kind != TokenKind::kEndOfFile) {
    ParseResult result;
    result.diagnostics.push_back(
        Diagnostic{Severity::kError, std::string(kErrSyntax), "token stream is not terminated",
                   Span{}});
    return result;
  }
  return Parser(tokens).Run();
}

ParseResult ParseSource(const SourceText& source) {
  LexResult lexed = Tokenize(source);
  if (!lexed.ok()) {
    ParseResult result;
    result.diagnostics = std::move(lexed.diagnostics);
    return result;
  }
  ParseResult result = ParseModule(lexed.tokens);
  result.diagnostics.insert(result.diagnostics.begin(), lexed.diagnostics.begin(),
                            lexed.diagnostics.end());
  return result;
}

}  // namespace fsmguard
