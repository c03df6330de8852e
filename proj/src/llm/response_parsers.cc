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

#include "fsmguard/llm/response_parsers.h"

#include <algorithm>
#include <regex>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"
#include "fsmguard/util/text.h"

namespace fsmguard {
namespace {

std::string Trim(std::string_view text) { return TrimAscii(text); }

char PartnerOf(std::string_view close) {
  if (close == "]") return '[';
  if (close == ")") return '(';
  if (close == "}") return '{';
  return '\0';
}

// Position of the close matching an open that ends at `from`.
std::optional<size_t> MatchingClose(std::string_view text, size_t from, std::string_view open,
                                    std::string_view close) {
  char partner = PartnerOf(close);
  int depth = 1;
  size_t i = from;
  while (i < text.size()) {
    if (open != close && text.substr(i, open.size()) == open) {
      ++depth;
      i += open.size();
    } else if (text.substr(i, close.size()) == close) {
      if (--depth == 0) return i;
      i += close.size();
    } else {
      if (partner != '\0' && text[i] == partner) ++depth;
      ++i;
    }
  }
  return std::nullopt;
}

const std::string kArrow = R"((?:->|→|\\rightarrow|=>))";
const std::string kStateCode = R"(([A-Za-z_][A-Za-z0-9_]*)\s*\(\s*(?:encoding\s*=\s*)?([01]+)\s*\))";

}  // namespace

absl::StatusOr<std::string> ExtractDelimited(std::string_view response, std::string_view open,
                                             std::string_view close) {
  if (open.empty() || close.empty()) return absl::InvalidArgumentError("empty marker");
  std::string_view text = response;
  size_t start = text.find(open);
  if (start == std::string_view::npos) {
    return absl::NotFoundError(absl::StrCat("no '", std::string(open), "' marker in response"));
  }
  while (true) {
    size_t body = start + open.size();
    auto end = MatchingClose(text, body, open, close);
    if (!end.has_value()) {
      return absl::InvalidArgumentError(
          absl::StrCat("unbalanced '", std::string(open), "' / '", std::string(close), "'"));
    }
    std::string_view content = text.substr(body, *end - body);
    size_t nested = open == close ? std::string_view::npos : content.find(open);
    if (nested == std::string_view::npos) return Trim(content);
    text = content;
    start = nested;
  }
}

absl::StatusOr<std::string> ParseDelimitedCode(std::string_view response, std::string_view open,
                                               std::string_view close) {
  auto content = ExtractDelimited(response, open, close);
  if (!content.ok()) return content.status();
  std::string code = *std::move(content);
  if (code.size() >= 2 && code.front() == '<' && code.back() == '>') {
    code = Trim(std::string_view(code).substr(1, code.size() - 2));
  }
  return code;
}

absl::StatusOr<std::vector<PolicyVerdict>> ParsePolicyVerdicts(std::string_view response,
                                                               int policy_count) {
  static const std::regex kHeader(R"(^\s*[-*]?\s*\**Policy\s+(\d+)\**\s*:\s*(.*)$)",
                                  std::regex::icase);
  static const std::regex kStatus(R"(^(not\s+violated|violated)\b[\s,.;:]*(.*)$)",
                                  std::regex::icase);
  static const std::regex kExplanation(R"(^explanation\s*:\s*)", std::regex::icase);
  static const std::regex kLine(R"(,?\s*line\s*(?:no|number)\.?\s*:\s*(\d+)[^\n]*$)",
                                std::regex::icase);

  struct Block {
    int policy;
    std::string text;
  };
  std::vector<Block> blocks;
  for (const std::string& line : SplitLines(response)) {
    std::smatch m;
    if (std::regex_match(line, m, kHeader)) {
      blocks.push_back({std::stoi(m[1].str()), m[2].str()});
    } else if (!blocks.empty()) {
      absl::StrAppend(&blocks.back().text, "\n", line);
    }
  }
  if (blocks.empty()) return absl::InvalidArgumentError("no \"Policy N:\" verdicts in response");

  std::vector<PolicyVerdict> verdicts;
  for (const Block& block : blocks) {
    std::string text = Trim(block.text);
    std::smatch m;
    if (!std::regex_match(text, m, kStatus)) {
      return absl::InvalidArgumentError(
          absl::StrCat("policy ", block.policy, ": verdict is neither violated nor not violated"));
    }
    PolicyVerdict v;
    v.policy = block.policy;
    v.violated = absl::AsciiStrToLower(m[1].str()).rfind("not", 0) != 0;
    std::string rest = m[2].str();
    std::smatch line;
    if (std::regex_search(rest, line, kLine)) {
      v.line = std::stoi(line[1].str());
      rest = rest.substr(0, line.position(0));
    }
    v.explanation = Trim(std::regex_replace(Trim(rest), kExplanation, ""));
    verdicts.push_back(std::move(v));
  }
  std::sort(verdicts.begin(), verdicts.end(),
            [](const PolicyVerdict& a, const PolicyVerdict& b) { return a.policy < b.policy; });
  if (static_cast<int>(verdicts.size()) != policy_count) {
    return absl::InvalidArgumentError(absl::StrCat("expected ", policy_count, " verdicts, found ",
                                                   verdicts.size()));
  }
  for (int i = 0; i < policy_count; ++i) {
    if (verdicts[i].policy != i + 1) {
      return absl::InvalidArgumentError(
          absl::StrCat("verdicts must cover policies 1..", policy_count));
    }
  }
  return verdicts;
}

absl::StatusOr<LlmTransitionList> ParseTransitionList(std::string_view response) {
  static const std::regex kTransition("state\\s+transition\\s+\\d+\\s*:\\s*" + kStateCode +
                                          "\\s*" + kArrow + "\\s*" + kStateCode,
                                      std::regex::icase);
  static const std::regex kProtected("protected_state\\s*:\\s*" + kStateCode, std::regex::icase);
  LlmTransitionList out;
  for (const std::string& line : SplitLines(response)) {
    std::smatch m;
    if (std::regex_search(line, m, kTransition)) {
      out.transitions.push_back({m[1].str(), m[2].str(), m[3].str(), m[4].str()});
    } else if (std::regex_search(line, m, kProtected)) {
      out.protected_state = m[1].str();
      out.protected_code = m[2].str();
    }
  }
  if (out.transitions.empty()) return absl::InvalidArgumentError("no state transitions in response");
  return out;
}

absl::StatusOr<std::vector<LlmFifRow>> ParseFifResults(std::string_view response) {
  static const std::regex kHeader("^\\s*state\\s+transition\\s+\\d+\\s*:\\s*" + kStateCode +
                                      "\\s*" + kArrow + "\\s*" + kStateCode,
                                  std::regex::icase);
  static const std::regex kRow(R"(^\s*\|?\s*Calculated\s+FIF_?i\s*\|?(.*)$)", std::regex::icase);
  static const std::regex kDigit(R"([01])");
  static const std::regex kOverall(R"(=\s*([01])\s*$)");

  std::vector<LlmFifRow> rows;
  bool in_overall = false;
  for (const std::string& line : SplitLines(response)) {
    std::smatch m;
    if (std::regex_search(line, m, kHeader)) {
      rows.push_back({{m[1].str(), m[2].str(), m[3].str(), m[4].str()}, {}, -1});
      in_overall = false;
      continue;
    }
    if (rows.empty()) continue;
    LlmFifRow& row = rows.back();
    if (std::regex_match(line, m, kRow)) {
      std::string cells = m[1].str();
      row.per_bit.clear();
      for (auto it = std::sregex_iterator(cells.begin(), cells.end(), kDigit);
           it != std::sregex_iterator(); ++it) {
        row.per_bit.push_back(it->str() == "1" ? 1 : 0);
      }
      continue;
    }
    if (absl::StrContains(absl::AsciiStrToLower(line), "overall fif")) in_overall = true;
    if (in_overall && std::regex_search(line, m, kOverall)) row.overall = m[1].str() == "1";
  }
  if (rows.empty()) return absl::InvalidArgumentError("no state transition blocks in response");
  for (const LlmFifRow& row : rows) {
    if (row.overall < 0 || row.per_bit.empty()) {
      return absl::InvalidArgumentError(absl::StrCat("incomplete FIF block for ", row.transition.from,
                                                     " -> ", row.transition.to));
    }
  }
  return rows;
}

}  // namespace fsmguard
