#include <sstream>

#include "tvb/rewrite.hpp"

namespace tvb {

VerificationReport verify_derivation(const DerivationScript& script, const RuleSet& rules) {
  VerificationReport rep;
  rep.finalWord = script.start;
  if (script.start.degree != rules.degree() || script.expectedEnd.degree != rules.degree()) {
    rep.message = "script degree does not match rule set degree";
    return rep;
  }
  BraidWord cur = script.start;
  for (size_t k = 0; k < script.steps.size(); ++k) {
    const auto& step = script.steps[k];
    const RewriteRule* rule = rules.find(step.rule);
    if (!rule) {
      rep.failedStep = k + 1;
      rep.message = "step " + std::to_string(k + 1) + ": unknown rule '" + step.rule + "'";
      rep.finalWord = cur;
      return rep;
    }
    if (!rule_matches(cur, step.pos, *rule)) {
      std::string got = "(end of word)";
      if (step.pos >= 1 && static_cast<size_t>(step.pos - 1) < cur.letters.size()) {
        got.clear();
        size_t at = static_cast<size_t>(step.pos - 1);
        for (size_t t = at; t < cur.letters.size() && t < at + rule->lhs.size(); ++t) {
          if (!got.empty()) got += ' ';
          got += format_letter(cur.letters[t]);
        }
      }
      rep.failedStep = k + 1;
      rep.message = "step " + std::to_string(k + 1) + ": rule '" + step.rule +
                    "' does not match at position " + std::to_string(step.pos) + " (found '" +
                    got + "')";
      rep.finalWord = cur;
      return rep;
    }
    cur = apply_rule(cur, step.pos, *rule);
  }
  rep.finalWord = cur;
  if (cur == script.expectedEnd) {
    rep.accepted = true;
  } else {
    rep.failedStep = script.steps.size() + 1;
    rep.message = "final word '" + format_word(cur) + "' differs from expected '" +
                  format_word(script.expectedEnd) + "'";
  }
  return rep;
}

DerivationScript parse_script(std::string_view text) {
  DerivationScript script;
  std::istringstream in{std::string(text)};
  std::string line;
  bool haveStart = false, haveEnd = false;
  size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    std::string_view body = std::string_view(line).substr(first);
    if (body.starts_with('#')) continue;
    if (!haveStart) {
      script.start = parse_word(body);
      haveStart = true;
      continue;
    }
    if (body.starts_with("=>")) {
      script.expectedEnd = parse_word(body.substr(2));
      haveEnd = true;
      continue;
    }
    if (haveEnd) throw ParseError("line " + std::to_string(lineNo) + ": content after '=>' line");
    if (!body.starts_with('@'))
      throw ParseError("line " + std::to_string(lineNo) + ": expected '@<pos> <ruleName>'");
    std::istringstream ls{std::string(body.substr(1))};
    int pos = 0;
    std::string rule;
    if (!(ls >> pos >> rule) || pos < 1)
      throw ParseError("line " + std::to_string(lineNo) + ": malformed step");
    std::string extra;
    if (ls >> extra)
      throw ParseError("line " + std::to_string(lineNo) + ": trailing content after rule name");
    script.steps.push_back({pos, std::move(rule)});
  }
  if (!haveStart) throw ParseError("script missing start word");
  if (!haveEnd) throw ParseError("script missing '=> <expected word>' line");
  return script;
}

std::string format_script(const DerivationScript& script) {
  std::string out = format_word(script.start) + "\n";
  for (const auto& step : script.steps)
    out += "@" + std::to_string(step.pos) + " " + step.rule + "\n";
  out += "=> " + format_word(script.expectedEnd) + "\n";
  return out;
}

}  // namespace tvb
