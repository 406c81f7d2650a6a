// Copyright 2026 The collcert Authors
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

#include "collcert/lp/lp_format.h"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "collcert/errors.h"

namespace collcert::lp {
namespace {

constexpr std::size_t kMaxLineLength = 240;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string FormatNumber(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string Sanitize(std::string_view name, std::string_view fallback) {
  std::string out;
  for (char c : name) {
    out.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '_' ? c
                                                                         : '_');
  }
  if (out.empty()) out = fallback;
  if (std::isdigit(static_cast<unsigned char>(out[0])) || out[0] == 'e' ||
      out[0] == 'E') {
    out = "v_" + out;
  }
  return out;
}

// Assigns sanitized, unique names.
class NameTable {
 public:
  explicit NameTable(std::unordered_set<std::string> reserved)
      : used_(std::move(reserved)) {}

  std::string Claim(std::string_view raw, std::string_view fallback) {
    std::string name = Sanitize(raw, fallback);
    if (used_.insert(name).second) return name;
    for (int suffix = 1;; ++suffix) {
      std::string candidate = name + "_" + std::to_string(suffix);
      if (used_.insert(candidate).second) return candidate;
    }
  }

 private:
  std::unordered_set<std::string> used_;
};

// Accumulates tokens into lines no longer than kMaxLineLength.
class LineWriter {
 public:
  explicit LineWriter(std::ostringstream& out) : out_(out) {}

  void Begin(const std::string& head) {
    line_ = " " + head;
  }
  void Add(const std::string& token) {
    if (line_.size() + token.size() + 1 > kMaxLineLength) {
      out_ << line_ << "\n";
      line_ = "   ";
    }
    line_ += " " + token;
  }
  void End() {
    out_ << line_ << "\n";
    line_.clear();
  }

 private:
  std::ostringstream& out_;
  std::string line_;
};

void WriteTerm(LineWriter& writer, double coef, const std::string& name,
               bool first) {
  if (coef < 0) {
    writer.Add("-");
  } else if (!first) {
    writer.Add("+");
  }
  writer.Add(FormatNumber(std::abs(coef)) + " " + name);
}

std::string_view ComparatorText(Comparator cmp) {
  switch (cmp) {
    case Comparator::kLessEq:
      return "<=";
    case Comparator::kGreaterEq:
      return ">=";
    case Comparator::kEqual:
      break;
  }
  return "=";
}

}  // namespace

std::string ToLpFormat(const LinearProblem& problem) {
  NameTable var_names({kObjectiveConstantName});
  std::vector<std::string> names;
  names.reserve(problem.num_variables());
  for (int j = 0; j < problem.num_variables(); ++j) {
    names.push_back(
        var_names.Claim(problem.variable(j).name, "x" + std::to_string(j)));
  }
  const bool need_constant =
      problem.objective_offset() != 0.0 || problem.num_variables() == 0;

  std::ostringstream out;
  LineWriter writer(out);
  out << "\\ collcert linear problem\n";
  out << "Minimize\n";
  writer.Begin("obj:");
  bool first = true;
  for (int j = 0; j < problem.num_variables(); ++j) {
    const double c = problem.objective()[j];
    if (c == 0.0) continue;
    WriteTerm(writer, c, names[j], first);
    first = false;
  }
  if (need_constant) {
    WriteTerm(writer, problem.objective_offset(), kObjectiveConstantName,
              first);
    first = false;
  }
  if (first && problem.num_variables() > 0) writer.Add("0 " + names[0]);
  writer.End();

  out << "Subject To\n";
  NameTable row_names({});
  for (int i = 0; i < problem.num_constraints(); ++i) {
    const Constraint& c = problem.constraint(i);
    writer.Begin(row_names.Claim(c.name, "c" + std::to_string(i)) + ":");
    bool first_term = true;
    for (const Term& t : c.terms) {
      WriteTerm(writer, t.coef, names[t.var], first_term);
      first_term = false;
    }
    if (first_term) {
      writer.Add("0 " + (names.empty() ? std::string(kObjectiveConstantName)
                                       : names[0]));
    }
    writer.Add(std::string(ComparatorText(c.cmp)));
    writer.Add(FormatNumber(c.rhs));
    writer.End();
  }

  out << "Bounds\n";
  for (int j = 0; j < problem.num_variables(); ++j) {
    const Variable& v = problem.variable(j);
    if (v.lower == v.upper) {
      out << " " << names[j] << " = " << FormatNumber(v.lower) << "\n";
    } else {
      out << " " << FormatNumber(v.lower) << " <= " << names[j]
          << " <= " << FormatNumber(v.upper) << "\n";
    }
  }
  if (need_constant) out << " " << kObjectiveConstantName << " = 1\n";

  for (VarKind kind : {VarKind::kBinary, VarKind::kInteger}) {
    bool any = false;
    for (int j = 0; j < problem.num_variables(); ++j) {
      if (problem.variable(j).kind != kind) continue;
      if (!any) {
        out << (kind == VarKind::kBinary ? "Binaries\n" : "Generals\n");
        writer.Begin("");
        any = true;
      }
      writer.Add(names[j]);
    }
    if (any) writer.End();
  }
  out << "End\n";
  return out.str();
}

void ExportLp(const LinearProblem& problem,
              const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw InputError("cannot write " + path.string());
  file << ToLpFormat(problem);
  if (!file) throw InputError("write failed for " + path.string());
}

// --- Parser ---

namespace {

enum class Section { kNone, kObjective, kConstraints, kBounds, kBinaries,
                     kGenerals, kEnd };

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(c));
  return out;
}

std::optional<Section> SectionKeyword(const std::string& line) {
  const std::string key = Lower(line);
  if (key == "minimize" || key == "minimum" || key == "min") {
    return Section::kObjective;
  }
  if (key == "maximize" || key == "maximum" || key == "max") {
    throw InputError("LP parser: only minimization is supported");
  }
  if (key == "subject to" || key == "such that" || key == "st" ||
      key == "s.t.") {
    return Section::kConstraints;
  }
  if (key == "bounds" || key == "bound") return Section::kBounds;
  if (key == "binaries" || key == "binary" || key == "bin") {
    return Section::kBinaries;
  }
  if (key == "generals" || key == "general" || key == "gen") {
    return Section::kGenerals;
  }
  if (key == "end") return Section::kEnd;
  return std::nullopt;
}

struct Token {
  enum Kind { kNumber, kName, kSign, kComparator, kColon } kind;
  std::string text;
  double number = 0.0;
};

std::vector<Token> Tokenize(const std::string& text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '+' || c == '-') {
      tokens.push_back({Token::kSign, std::string(1, c)});
      ++i;
    } else if (c == '<' || c == '>' || c == '=') {
      std::string op(1, c);
      ++i;
      if (i < text.size() && (text[i] == '=' || text[i] == '<' ||
                              text[i] == '>')) {
        op.push_back(text[i++]);
      }
      if (op == "=<") op = "<=";
      if (op == "=>") op = ">=";
      if (op == "<") op = "<=";
      if (op == ">") op = ">=";
      tokens.push_back({Token::kComparator, op});
    } else if (c == ':') {
      tokens.push_back({Token::kColon, ":"});
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t used = 0;
      const double value = std::stod(text.substr(i), &used);
      tokens.push_back({Token::kNumber, text.substr(i, used), value});
      i += used;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) ||
              text[j] == '_' || text[j] == '.')) {
        ++j;
      }
      std::string word = text.substr(i, j - i);
      const std::string lowered = Lower(word);
      if (lowered == "inf" || lowered == "infinity") {
        tokens.push_back({Token::kNumber, word, kInf});
      } else {
        tokens.push_back({Token::kName, word});
      }
      i = j;
    } else {
      throw InputError(std::string("LP parser: unexpected character '") + c +
                       "'");
    }
  }
  return tokens;
}

class ProblemBuilder {
 public:
  int Var(const std::string& name) {
    auto [it, inserted] = index_.emplace(name, static_cast<int>(order_.size()));
    if (inserted) order_.push_back(name);
    return it->second;
  }

  // Parses `[label:] expr` and returns the label and terms; stops at the
  // first comparator, leaving `pos` on it.
  std::vector<std::pair<int, double>> ParseExpression(
      const std::vector<Token>& tokens, std::size_t& pos, std::string* label) {
    if (pos + 1 < tokens.size() && tokens[pos].kind == Token::kName &&
        tokens[pos + 1].kind == Token::kColon) {
      if (label) *label = tokens[pos].text;
      pos += 2;
    }
    std::vector<std::pair<int, double>> terms;
    while (pos < tokens.size() && tokens[pos].kind != Token::kComparator) {
      double sign = 1.0;
      while (pos < tokens.size() && tokens[pos].kind == Token::kSign) {
        if (tokens[pos].text == "-") sign = -sign;
        ++pos;
      }
      double coef = 1.0;
      if (pos < tokens.size() && tokens[pos].kind == Token::kNumber) {
        coef = tokens[pos].number;
        ++pos;
      }
      if (pos >= tokens.size() || tokens[pos].kind != Token::kName) {
        throw InputError("LP parser: expected a variable name");
      }
      terms.emplace_back(Var(tokens[pos].text), sign * coef);
      ++pos;
    }
    return terms;
  }

  std::vector<std::string> order_;
  std::unordered_map<std::string, int> index_;
};

double ParseSignedNumber(const std::vector<Token>& tokens, std::size_t& pos) {
  double sign = 1.0;
  while (pos < tokens.size() && tokens[pos].kind == Token::kSign) {
    if (tokens[pos].text == "-") sign = -sign;
    ++pos;
  }
  if (pos >= tokens.size() || tokens[pos].kind != Token::kNumber) {
    throw InputError("LP parser: expected a number");
  }
  return sign * tokens[pos++].number;
}

}  // namespace

LinearProblem ParseLpFormat(const std::string& text) {
  // Split into sections, dropping comments.
  std::vector<std::pair<Section, std::string>> blocks;
  Section current = Section::kNone;
  std::istringstream lines(text);
  std::string line;
  bool saw_end = false;
  while (std::getline(lines, line)) {
    if (const auto cut = line.find('\\'); cut != std::string::npos) {
      line.erase(cut);
    }
    std::string trimmed = line;
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(
                                   trimmed.back()))) {
      trimmed.pop_back();
    }
    std::size_t lead = 0;
    while (lead < trimmed.size() &&
           std::isspace(static_cast<unsigned char>(trimmed[lead]))) {
      ++lead;
    }
    trimmed.erase(0, lead);
    if (trimmed.empty()) continue;
    const bool indented = lead > 0;
    if (auto section = indented ? std::nullopt : SectionKeyword(trimmed)) {
      current = *section;
      if (current == Section::kEnd) {
        saw_end = true;
        break;
      }
      blocks.emplace_back(current, "");
      continue;
    }
    if (blocks.empty()) throw InputError("LP parser: content before a section");
    blocks.back().second += trimmed + "\n";
  }
  if (!saw_end) throw InputError("LP parser: missing End");

  ProblemBuilder builder;
  std::vector<std::pair<int, double>> objective;
  struct Row {
    std::string name;
    std::vector<std::pair<int, double>> terms;
    Comparator cmp;
    double rhs;
  };
  std::vector<Row> rows;
  std::unordered_map<int, std::pair<double, double>> bounds;
  std::vector<int> bound_order;
  std::unordered_set<int> binaries;
  std::unordered_set<int> generals;

  for (const auto& [section, body] : blocks) {
    switch (section) {
      case Section::kObjective: {
        const std::vector<Token> tokens = Tokenize(body);
        std::size_t pos = 0;
        objective = builder.ParseExpression(tokens, pos, nullptr);
        if (pos != tokens.size()) {
          throw InputError("LP parser: comparator in objective");
        }
        break;
      }
      case Section::kConstraints: {
        const std::vector<Token> tokens = Tokenize(body);
        std::size_t pos = 0;
        while (pos < tokens.size()) {
          Row row;
          row.terms = builder.ParseExpression(tokens, pos, &row.name);
          if (pos >= tokens.size()) {
            throw InputError("LP parser: constraint without comparator");
          }
          const std::string op = tokens[pos++].text;
          row.cmp = op == "<=" ? Comparator::kLessEq
                    : op == ">=" ? Comparator::kGreaterEq
                                 : Comparator::kEqual;
          row.rhs = ParseSignedNumber(tokens, pos);
          rows.push_back(std::move(row));
        }
        break;
      }
      case Section::kBounds: {
        std::istringstream bound_lines(body);
        std::string bound_line;
        while (std::getline(bound_lines, bound_line)) {
          const std::vector<Token> tokens = Tokenize(bound_line);
          if (tokens.empty()) continue;
          std::size_t pos = 0;
          auto record = [&](int var) {
            if (!bounds.count(var)) {
              bounds[var] = {0.0, kInf};
              bound_order.push_back(var);
            }
            return &bounds[var];
          };
          if (tokens[0].kind == Token::kName) {
            const int var = builder.Var(tokens[0].text);
            auto* b = record(var);
            if (tokens.size() == 2 && Lower(tokens[1].text) == "free") {
              *b = {-kInf, kInf};
              continue;
            }
            pos = 1;
            if (pos >= tokens.size() || tokens[pos].kind != Token::kComparator) {
              throw InputError("LP parser: malformed bound: " + bound_line);
            }
            const std::string op = tokens[pos++].text;
            const double value = ParseSignedNumber(tokens, pos);
            if (op == "=") {
              *b = {value, value};
            } else if (op == "<=") {
              b->second = value;
            } else {
              b->first = value;
            }
          } else {
            const double lo = ParseSignedNumber(tokens, pos);
            if (pos >= tokens.size() || tokens[pos].text != "<=") {
              throw InputError("LP parser: malformed bound: " + bound_line);
            }
            ++pos;
            if (pos >= tokens.size() || tokens[pos].kind != Token::kName) {
              throw InputError("LP parser: malformed bound: " + bound_line);
            }
            const int var = builder.Var(tokens[pos++].text);
            auto* b = record(var);
            b->first = lo;
            if (pos < tokens.size()) {
              if (tokens[pos].text != "<=") {
                throw InputError("LP parser: malformed bound: " + bound_line);
              }
              ++pos;
              b->second = ParseSignedNumber(tokens, pos);
            }
          }
        }
        break;
      }
      case Section::kBinaries:
      case Section::kGenerals: {
        for (const Token& t : Tokenize(body)) {
          if (t.kind != Token::kName) {
            throw InputError("LP parser: expected names in integer section");
          }
          const int var = builder.Var(t.text);
          (section == Section::kBinaries ? binaries : generals).insert(var);
        }
        break;
      }
      default:
        break;
    }
  }

  // Declaration order: Bounds section first, then first appearance.
  std::vector<int> order = bound_order;
  std::unordered_set<int> placed(order.begin(), order.end());
  for (int v = 0; v < static_cast<int>(builder.order_.size()); ++v) {
    if (placed.insert(v).second) order.push_back(v);
  }

  const auto constant_it = builder.index_.find(kObjectiveConstantName);
  std::optional<int> constant;
  if (constant_it != builder.index_.end()) {
    const auto b = bounds.find(constant_it->second);
    if (b != bounds.end() && b->second.first == 1.0 &&
        b->second.second == 1.0) {
      constant = constant_it->second;
    }
  }

  LinearProblem problem;
  std::vector<int> remap(builder.order_.size(), -1);
  for (int v : order) {
    if (constant && v == *constant) continue;
    const bool is_binary = binaries.count(v) > 0;
    const VarKind kind = is_binary                ? VarKind::kBinary
                         : generals.count(v) > 0 ? VarKind::kInteger
                                                  : VarKind::kContinuous;
    std::pair<double, double> b =
        is_binary ? std::pair<double, double>{0.0, 1.0}
                  : std::pair<double, double>{0.0, kInf};
    if (auto it = bounds.find(v); it != bounds.end()) b = it->second;
    if (!std::isfinite(b.first) || !std::isfinite(b.second)) {
      throw InputError("LP parser: variable " + builder.order_[v] +
                       " is unbounded");
    }
    remap[v] = problem.AddVariable(builder.order_[v], kind, b.first, b.second);
  }
  double offset = 0.0;
  for (const auto& [var, coef] : objective) {
    if (constant && var == *constant) {
      offset += coef;
    } else {
      problem.AddObjectiveCoefficient(remap[var], coef);
    }
  }
  problem.SetObjectiveOffset(offset);
  for (Row& row : rows) {
    std::vector<Term> terms;
    for (const auto& [var, coef] : row.terms) {
      if (constant && var == *constant) {
        if (coef != 0.0) {
          throw InputError("LP parser: objective constant used in a row");
        }
        continue;
      }
      terms.push_back({remap[var], coef});
    }
    problem.AddConstraint(std::move(terms), row.cmp, row.rhs,
                          std::move(row.name));
  }
  return problem;
}

LinearProblem LoadLp(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return ParseLpFormat(buffer.str());
}

}  // namespace collcert::lp
