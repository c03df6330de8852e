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

#include "fsmguard/corpus/sanitize.h"

#include <algorithm>
#include <cctype>
#include <set>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "fsmguard/rtl/emitter.h"
#include "fsmguard/rtl/lexer.h"
#include "fsmguard/rtl/parser.h"
#include "fsmguard/util/seeds.h"
#include "fsmguard/util/text.h"

namespace fsmguard {
namespace {

bool IsWordChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

// Renames identifiers inside a comment and drops other words that contain a
// keyword. Returns an empty string when nothing but the markers is left.
std::string SanitizeComment(const std::string& comment,
                            const std::map<std::string, std::string>& rename,
                            const std::vector<std::string>& keywords) {
  bool block = comment.rfind("/*", 0) == 0;
  size_t body_begin = 2;
  size_t body_end = block && comment.size() >= 4 ? comment.size() - 2 : comment.size();
  std::string body = comment.substr(body_begin, body_end - body_begin);
  std::string out;
  bool changed = false;
  for (size_t i = 0; i < body.size();) {
    if (!IsWordChar(body[i])) {
      out.push_back(body[i++]);
      continue;
    }
    size_t end = i;
    while (end < body.size() && IsWordChar(body[end])) ++end;
    std::string word = body.substr(i, end - i);
    if (auto it = rename.find(word); it != rename.end()) {
      out += it->second;
      changed = true;
    } else if (ContainsKeyword(word, keywords)) {
      changed = true;
      // Take attached punctuation and one separating space with the word.
      while (end < body.size() && std::ispunct(static_cast<unsigned char>(body[end])) &&
             body[end] != '@') {
        ++end;
      }
      if (!out.empty() && out.back() == ' ' && end < body.size() && body[end] == ' ') ++end;
    } else {
      out += word;
    }
    i = end;
  }
  if (!changed) return comment;
  if (!out.empty() && out.front() != ' ' && body.front() == ' ') out.insert(out.begin(), ' ');
  if (TrimAscii(out).empty()) return "";
  return block ? absl::StrCat("/*", out, "*/") : absl::StrCat("//", out);
}

// Drops comments emptied by sanitization, together with their line when
// nothing else is on it.
std::string RewriteTokens(const std::string& text, const std::vector<Token>& tokens,
                          const std::map<std::string, std::string>& rename,
                          const std::vector<std::string>& keywords) {
  std::string out;
  size_t cursor = 0;
  for (const Token& token : tokens) {
    if (token.kind == TokenKind::kEndOfFile) break;
    out.append(text, cursor, token.offset - cursor);
    cursor = token.offset + token.length;
    if (token.kind == TokenKind::kIdentifier) {
      auto it = rename.find(token.text);
      out += it == rename.end() ? token.text : it->second;
    } else if (token.kind == TokenKind::kComment) {
      std::string replaced = SanitizeComment(token.text, rename, keywords);
      if (!replaced.empty()) {
        out += replaced;
        continue;
      }
      while (!out.empty() && (out.back() == ' ' || out.back() == '\t')) out.pop_back();
      bool own_line = out.empty() || out.back() == '\n';
      if (own_line && cursor < text.size() && text[cursor] == '\n') ++cursor;
    } else {
      out += token.text;
    }
  }
  out.append(text, cursor, std::string::npos);
  return out;
}

}  // namespace

bool ContainsKeyword(std::string_view text, const std::vector<std::string>& keywords) {
  std::string lower = absl::AsciiStrToLower(std::string(text));
  for (const std::string& keyword : keywords) {
    if (!keyword.empty() && lower.find(absl::AsciiStrToLower(keyword)) != std::string::npos) {
      return true;
    }
  }
  return false;
}

absl::StatusOr<SanitizeResult> SanitizeIdentifiers(const FsmAst& ast,
                                                   const SanitizeOptions& options) {
  if (options.keywords.empty()) return absl::InvalidArgumentError("keyword list is empty");
  for (const std::string& keyword : options.keywords) {
    if (keyword.empty()) return absl::InvalidArgumentError("empty keyword");
  }
  SourceText emitted = EmitVerilog(ast, ast.module_name);
  LexResult lexed = Tokenize(emitted);
  if (!lexed.ok()) return absl::InternalError("emitted design does not tokenize");

  std::set<std::string> taken;
  for (const Token& token : lexed.tokens) {
    if (token.kind == TokenKind::kIdentifier) taken.insert(token.text);
  }
  // Sorted candidate lists keep the shuffle independent of declaration order.
  std::set<std::string> modules, states, signals;
  for (const std::string& name : taken) {
    if (!ContainsKeyword(name, options.keywords)) continue;
    if (name == ast.module_name) {
      modules.insert(name);
    } else if (ast.FindParameter(name) != nullptr) {
      states.insert(name);
    } else {
      signals.insert(name);
    }
  }

  SeededPicker picker(options.seed);
  std::map<std::string, std::string> rename;
  auto assign = [&](const std::set<std::string>& names, std::string_view prefix) {
    std::vector<std::string> order(names.begin(), names.end());
    for (size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[picker.Pick(i)]);
    for (size_t k = 0; k < order.size(); ++k) {
      std::string base = absl::StrCat(std::string(prefix), k);
      std::string name = base;
      for (int suffix = 1; taken.count(name) || IsVerilogKeyword(name); ++suffix) {
        name = absl::StrCat(base, "_", suffix);
      }
      taken.insert(name);
      rename[order[k]] = name;
    }
  };
  assign(modules, "u");
  assign(states, "st");
  assign(signals, "sig");

  std::string rewritten =
      RewriteTokens(emitted.content, lexed.tokens, rename, options.keywords);
  ParseResult parsed = ParseSource(SourceText{rewritten, emitted.origin});
  if (!parsed.ok()) return absl::InternalError("sanitized design does not parse");
  SanitizeResult result;
  result.ast = *std::move(parsed.ast);
  result.text = EmitVerilog(result.ast, result.ast.module_name);
  result.rename = std::move(rename);
  if (ContainsKeyword(result.text.content, options.keywords)) {
    return absl::FailedPreconditionError(
        "a keyword occurs outside identifiers and comments (reserved word or literal)");
  }
  return result;
}

absl::StatusOr<SanitizeResult> SanitizeSource(const SourceText& source,
                                              const SanitizeOptions& options) {
  ParseResult parsed = ParseSource(source);
  if (!parsed.ok()) {
    return absl::InvalidArgumentError(absl::StrCat(source.origin, ": design does not parse"));
  }
  return SanitizeIdentifiers(*parsed.ast, options);
}

OrderedJson RenameMapToJson(const std::map<std::string, std::string>& rename) {
  OrderedJson out;
  out["schema_version"] = 1;
  OrderedJson map = OrderedJson::object();
  for (const auto& [from, to] : rename) map[from] = to;
  out["rename"] = map;
  return out;
}

}  // namespace fsmguard
