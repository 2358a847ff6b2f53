#include "tvb/word.hpp"

#include <cctype>
#include <sstream>

namespace tvb {

void validate_word(const BraidWord& w) {
  if (w.degree < 1) throw std::invalid_argument("word degree must be positive");
  for (const Generator& g : w.letters) {
    if (!valid_at_degree(g, w.degree)) {
      throw std::invalid_argument("letter " + format_letter(g) +
                                  " out of range for degree " + std::to_string(w.degree));
    }
  }
}

BraidWord make_word(int degree, std::vector<Generator> letters) {
  BraidWord w{degree, std::move(letters)};
  validate_word(w);
  return w;
}

std::string format_letter(Generator g) {
  char c = 0;
  switch (g.kind) {
    case Kind::Sigma: c = 's'; break;
    case Kind::SigmaInv: c = 'S'; break;
    case Kind::V: c = 'v'; break;
    case Kind::Gamma: c = 't'; break;
  }
  return c + std::to_string(g.index);
}

BraidWord parse_word(std::string_view text) {
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto read_int = [&](const char* what) {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) throw ParseError(std::string("expected ") + what);
    return std::stoi(std::string(text.substr(start, pos - start)));
  };

  skip_ws();
  if (text.substr(pos, 1) != "n") throw ParseError("missing 'n=<degree>;' header");
  ++pos;
  skip_ws();
  if (pos >= text.size() || text[pos] != '=') throw ParseError("missing '=' in header");
  ++pos;
  int degree = read_int("degree");
  skip_ws();
  if (pos >= text.size() || text[pos] != ';') throw ParseError("missing ';' after degree");
  ++pos;
  if (degree < 1) throw ParseError("degree must be positive");

  std::vector<Generator> letters;
  for (;;) {
    skip_ws();
    if (pos >= text.size()) break;
    char c = text[pos];
    Kind kind;
    switch (c) {
      case 's': kind = Kind::Sigma; break;
      case 'S': kind = Kind::SigmaInv; break;
      case 'v': kind = Kind::V; break;
      case 't': kind = Kind::Gamma; break;
      default:
        throw ParseError(std::string("bad token starting with '") + c + "'");
    }
    ++pos;
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      throw ParseError("token missing index");
    Generator g{kind, read_int("index")};
    if (!valid_at_degree(g, degree))
      throw ParseError("index out of range in token " + format_letter(g) +
                       " for degree " + std::to_string(degree));
    letters.push_back(g);
  }
  return BraidWord{degree, std::move(letters)};
}

std::string format_word(const BraidWord& w) {
  std::string out = "n=" + std::to_string(w.degree) + ";";
  for (const Generator& g : w.letters) {
    out += ' ';
    out += format_letter(g);
  }
  return out;
}

BraidWord compose(const BraidWord& a, const BraidWord& b) {
  if (a.degree != b.degree)
    throw std::invalid_argument("compose: degree mismatch (" + std::to_string(a.degree) +
                                " vs " + std::to_string(b.degree) + ")");
  BraidWord out = a;
  out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
  return out;
}

BraidWord invert(const BraidWord& w) {
  BraidWord out{w.degree, {}};
  out.letters.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    out.letters.push_back(inverse(*it));
  return out;
}

namespace {
bool cancels(Generator a, Generator b) {
  if (a.index != b.index) return false;
  switch (a.kind) {
    case Kind::Sigma: return b.kind == Kind::SigmaInv;
    case Kind::SigmaInv: return b.kind == Kind::Sigma;
    case Kind::V: return b.kind == Kind::V;
    case Kind::Gamma: return b.kind == Kind::Gamma;
  }
  return false;
}
}  // namespace

BraidWord free_reduce(const BraidWord& w) {
  BraidWord out{w.degree, {}};
  out.letters.reserve(w.letters.size());
  for (Generator g : w.letters) {
    if (!out.letters.empty() && cancels(out.letters.back(), g)) {
      out.letters.pop_back();
    } else {
      out.letters.push_back(g);
    }
  }
  return out;
}

bool is_free_reduced(const BraidWord& w) {
  for (size_t i = 0; i + 1 < w.letters.size(); ++i)
    if (cancels(w.letters[i], w.letters[i + 1])) return false;
  return true;
}

BraidWord embed(const BraidWord& w, int s, int t) {
  if (s < 0 || t < 0) throw std::invalid_argument("embed: strand counts must be non-negative");
  BraidWord out{w.degree + s + t, {}};
  out.letters.reserve(w.letters.size());
  for (Generator g : w.letters) out.letters.push_back({g.kind, g.index + s});
  return out;
}

}  // namespace tvb
