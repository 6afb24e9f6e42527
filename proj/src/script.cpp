#include "tetrus/cli/script.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace tetrus::cli {

std::string Diagnostic::str() const {
  std::string out = std::to_string(span.line) + ":" + std::to_string(span.column) + ": " + message;
  if (!token.empty()) out += " (at '" + token + "')";
  return out;
}

namespace {

enum class Tok { ident, integer, arrow, colon, lbrace, rbrace, comma, equals, langle, rangle, caret, minus };

struct Token {
  Tok kind;
  std::string text;
  int column;
};

// One statement's text with its position in the file.
struct Chunk {
  int line;
  int column;  // column of text[0]
  std::string text;
};

struct Failure {
  Diagnostic diag;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Chunk> split_statements(std::string_view text) {
  std::vector<Chunk> out;
  int line = 1;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view row = text.substr(pos, eol - pos);
    if (auto hash = row.find('#'); hash != std::string_view::npos) row = row.substr(0, hash);
    std::size_t start = 0;
    while (start <= row.size()) {
      std::size_t semi = row.find(';', start);
      if (semi == std::string_view::npos) semi = row.size();
      std::string piece(row.substr(start, semi - start));
      if (piece.find_first_not_of(" \t\r") != std::string::npos) {
        out.push_back({line, static_cast<int>(start) + 1, std::move(piece)});
      }
      start = semi + 1;
    }
    ++line;
    pos = eol + 1;
  }
  return out;
}

class Parser {
 public:
  Parser(const Chunk& chunk, std::map<std::string, std::string>& kinds, std::map<std::string, GroupDecl>& groups,
         std::string& current_group)
      : chunk_(chunk), kinds_(kinds), groups_(groups), current_group_(current_group) {}

  Statement parse() {
    lex(chunk_.text.size());
    Statement st{{chunk_.line, chunk_.column + first_column() - 1}, BuildSurface{}};
    const Token head = expect(Tok::ident, "a statement keyword");
    if (head.text == "group") {
      st.body = parse_group();
    } else if (head.text == "hom") {
      st.body = parse_hom();
    } else if (head.text == "sub") {
      st.body = parse_sub();
    } else if (head.text == "diamond") {
      st.body = parse_diamond();
    } else if (head.text == "analyze") {
      const Token sub = expect(Tok::ident, "a subgroup name");
      require_kind(sub, "sub");
      st.body = Analyze{sub.text};
    } else if (head.text == "surface") {
      const Token what = expect(Tok::ident, "'build-tetrus'");
      if (what.text != "build-tetrus") fail(what, "unknown surface command");
      st.body = BuildSurface{};
    } else if (head.text == "verify") {
      const Token what = expect(Tok::ident, "'theorem1'");
      if (what.text != "theorem1") fail(what, "unknown verification target");
      st.body = VerifyTheorem{};
    } else {
      fail(head, "unknown statement");
    }
    if (at_ < tokens_.size()) fail(tokens_[at_], "unexpected trailing token");
    return st;
  }

 private:
  int first_column() const {
    const auto p = chunk_.text.find_first_not_of(" \t\r");
    return static_cast<int>(p) + 1;
  }

  [[noreturn]] void fail_at(int column, std::string token, std::string message) const {
    throw Failure{{{chunk_.line, chunk_.column + column - 1}, std::move(token), std::move(message)}};
  }
  [[noreturn]] void fail(const Token& t, std::string message) const { fail_at(t.column, t.text, std::move(message)); }

  void lex(std::size_t limit) {
    const std::string& s = chunk_.text;
    std::size_t i = 0;
    while (i < limit) {
      const char c = s[i];
      const int col = static_cast<int>(i) + 1;
      if (c == ' ' || c == '\t' || c == '\r') {
        ++i;
      } else if (ident_start(c)) {
        std::size_t j = i + 1;
        for (;;) {
          while (j < limit && ident_char(s[j])) ++j;
          // Hyphenated names such as build-tetrus; "->" is never part of a name.
          if (j + 1 < limit && s[j] == '-' && ident_start(s[j + 1])) {
            ++j;
            continue;
          }
          break;
        }
        tokens_.push_back({Tok::ident, s.substr(i, j - i), col});
        i = j;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        while (j < limit && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        tokens_.push_back({Tok::integer, s.substr(i, j - i), col});
        i = j;
      } else if (c == '-' && i + 1 < limit && s[i + 1] == '>') {
        tokens_.push_back({Tok::arrow, "->", col});
        i += 2;
      } else if (c == '<') {
        // Word lists keep their raw text; the closing '>' ends them.
        const std::size_t close = s.find('>', i + 1);
        if (close == std::string::npos || close >= limit) fail_at(col, "<", "unterminated word list");
        tokens_.push_back({Tok::langle, "<", col});
        raw_lists_.push_back({tokens_.size() - 1, i + 1, close});
        i = close;
      } else {
        static const std::map<char, Tok> single{{':', Tok::colon},  {'{', Tok::lbrace}, {'}', Tok::rbrace},
                                                {',', Tok::comma},  {'=', Tok::equals}, {'>', Tok::rangle},
                                                {'^', Tok::caret},  {'-', Tok::minus}};
        auto it = single.find(c);
        if (it == single.end()) fail_at(col, std::string(1, c), "unexpected character");
        tokens_.push_back({it->second, std::string(1, c), col});
        ++i;
      }
    }
  }

  std::optional<Token> peek() const {
    if (at_ < tokens_.size()) return tokens_[at_];
    return std::nullopt;
  }

  Token expect(Tok kind, const std::string& what) {
    if (at_ >= tokens_.size()) {
      fail_at(static_cast<int>(chunk_.text.find_last_not_of(" \t\r")) + 2, "", "expected " + what);
    }
    const Token t = tokens_[at_];
    if (t.kind != kind) fail(t, "expected " + what);
    ++at_;
    return t;
  }

  void declare(const Token& id, const std::string& kind) {
    if (kinds_.count(id.text)) fail(id, "'" + id.text + "' is already declared");
    kinds_[id.text] = kind;
  }

  void require_kind(const Token& id, const std::string& kind) const {
    auto it = kinds_.find(id.text);
    if (it == kinds_.end()) fail(id, "undeclared identifier");
    if (it->second != kind) fail(id, "'" + id.text + "' is a " + it->second + ", expected a " + kind);
  }

  GroupDecl parse_group() {
    const Token id = expect(Tok::ident, "a group name");
    const Token kw = expect(Tok::ident, "'free'");
    if (kw.text != "free") fail(kw, "expected 'free'");
    GroupDecl g{id.text, {}};
    std::vector<Token> gens{expect(Tok::ident, "a generator name")};
    // Generators may be separated by commas or by whitespace alone.
    while (peek()) {
      if (peek()->kind == Tok::comma) ++at_;
      gens.push_back(expect(Tok::ident, "a generator name"));
    }
    if (gens.size() != 2) fail(gens.back(), "only free groups of rank 2 are supported");
    if (gens[0].text == gens[1].text) fail(gens[1], "repeated generator");
    for (const auto& t : gens) {
      if (t.text.find('-') != std::string::npos) fail(t, "generator names cannot contain '-'");
      g.generators.push_back(t.text);
    }
    declare(id, "group");
    groups_[id.text] = g;
    current_group_ = id.text;
    return g;
  }

  HomDecl parse_hom() {
    const Token id = expect(Tok::ident, "a homomorphism name");
    expect(Tok::colon, "':'");
    const Token group = expect(Tok::ident, "a group name");
    require_kind(group, "group");
    expect(Tok::arrow, "'->'");
    const Token target = expect(Tok::ident, "a target Z<n>");
    long long modulus = 0;
    {
      const std::string& t = target.text;
      const bool digits = t.size() >= 2 && t[0] == 'Z' &&
                          t.find_first_not_of("0123456789", 1) == std::string::npos;
      if (!digits) fail(target, "target must be Z<n>");
      auto [p, ec] = std::from_chars(t.data() + 1, t.data() + t.size(), modulus);
      if (ec != std::errc() || modulus < 1 || modulus > 1000000) fail(target, "modulus must be between 1 and 1000000");
    }
    expect(Tok::lbrace, "'{'");
    const GroupDecl& g = groups_.at(group.text);
    HomDecl h{id.text, group.text, modulus, {}};
    std::set<std::string> assigned;
    while (true) {
      const Token gen = expect(Tok::ident, "a generator");
      if (gen.text != g.generators[0] && gen.text != g.generators[1]) {
        fail(gen, "not a generator of " + group.text);
      }
      if (!assigned.insert(gen.text).second) fail(gen, "generator assigned twice");
      expect(Tok::arrow, "'->'");
      bool negative = false;
      if (peek() && peek()->kind == Tok::minus) {
        negative = true;
        ++at_;
      }
      const Token value = expect(Tok::integer, "a residue");
      long long r = 0;
      auto [p, ec] = std::from_chars(value.text.data(), value.text.data() + value.text.size(), r);
      if (ec != std::errc()) fail(value, "residue out of range");
      h.images.emplace_back(gen.text, mod_floor(negative ? -r : r, modulus));
      if (at_ >= tokens_.size()) expect(Tok::rbrace, "',' or '}'");
      const Token sep = tokens_[at_++];
      if (sep.kind == Tok::rbrace) break;
      if (sep.kind != Tok::comma) fail(sep, "expected ',' or '}'");
    }
    if (assigned.size() != 2) fail(id, "every generator of " + group.text + " needs an image");
    // Store images in generator order so equal homomorphisms print alike.
    if (h.images[0].first != g.generators[0]) std::swap(h.images[0], h.images[1]);
    declare(id, "hom");
    return h;
  }

  StatementBody parse_sub() {
    const Token id = expect(Tok::ident, "a subgroup name");
    expect(Tok::equals, "'='");
    const auto next = peek();
    if (!next) expect(Tok::ident, "'kernel' or a word list");
    if (next->kind == Tok::ident && next->text == "kernel") {
      ++at_;
      const Token hom = expect(Tok::ident, "a homomorphism name");
      require_kind(hom, "hom");
      declare(id, "sub");
      return KernelSub{id.text, hom.text};
    }
    if (next->kind != Tok::langle) fail(*next, "expected 'kernel' or a word list");
    const auto list = raw_lists_.front();
    ++at_;
    expect(Tok::rangle, "'>'");
    GeneratedSub sub{id.text, current_group_, {}};
    std::string x = "x", h = "h";
    if (!current_group_.empty()) {
      x = groups_.at(current_group_).generators[0];
      h = groups_.at(current_group_).generators[1];
    }
    const std::string& s = chunk_.text;
    std::size_t start = list.begin;
    while (true) {
      std::size_t comma = s.find(',', start);
      if (comma == std::string::npos || comma > list.end) comma = list.end;
      const std::string piece = s.substr(start, comma - start);
      const auto first = piece.find_first_not_of(" \t\r");
      if (first == std::string::npos) {
        if (comma == list.end && start == list.begin) break;  // "< >"
        fail_at(static_cast<int>(start) + 1, ",", "empty word in list");
      }
      const auto last = piece.find_last_not_of(" \t\r");
      if (piece.substr(first, last - first + 1) == "1") {
        sub.words.emplace_back();
        if (comma == list.end) break;
        start = comma + 1;
        continue;
      }
      try {
        sub.words.push_back(parse_word(piece, x, h));
      } catch (const WordSyntaxError& e) {
        const int col = static_cast<int>(start + e.column());
        fail_at(col, piece.substr(first, last - first + 1), e.what());
      } catch (const Error& e) {
        fail_at(static_cast<int>(start + first) + 1, piece.substr(first, last - first + 1), e.what());
      }
      if (comma == list.end) break;
      start = comma + 1;
    }
    declare(id, "sub");
    return sub;
  }

  DiamondDecl parse_diamond() {
    const Token id = expect(Tok::ident, "a subgroup name");
    expect(Tok::equals, "'='");
    const Token left = expect(Tok::ident, "a subgroup name");
    require_kind(left, "sub");
    expect(Tok::caret, "'^'");
    const Token right = expect(Tok::ident, "a subgroup name");
    require_kind(right, "sub");
    declare(id, "sub");
    return DiamondDecl{id.text, left.text, right.text};
  }

  struct RawList {
    std::size_t token;
    std::size_t begin;  // first character after '<'
    std::size_t end;    // position of '>'
  };

  const Chunk& chunk_;
  std::map<std::string, std::string>& kinds_;
  std::map<std::string, GroupDecl>& groups_;
  std::string& current_group_;
  std::vector<Token> tokens_;
  std::vector<RawList> raw_lists_;
  std::size_t at_ = 0;
};

}  // namespace

ParseResult parse_script(std::string_view text) {
  ParseResult out;
  std::map<std::string, std::string> kinds;
  std::map<std::string, GroupDecl> groups;
  std::string current_group;
  for (const auto& chunk : split_statements(text)) {
    try {
      Parser parser(chunk, kinds, groups, current_group);
      out.script.statements.push_back(parser.parse());
    } catch (const Failure& f) {
      out.diagnostics.push_back(f.diag);
    } catch (const std::exception& e) {
      out.diagnostics.push_back({{chunk.line, chunk.column}, "", std::string("internal error: ") + e.what()});
    }
  }
  return out;
}

std::string print_script(const Script& s) {
  std::ostringstream os;
  std::map<std::string, GroupDecl> groups;
  for (const auto& st : s.statements) {
    std::visit(
        [&](const auto& b) {
          using T = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<T, GroupDecl>) {
            groups[b.id] = b;
            os << "group " << b.id << " free " << b.generators[0] << ", " << b.generators[1];
          } else if constexpr (std::is_same_v<T, HomDecl>) {
            os << "hom " << b.id << " : " << b.group << " -> Z" << b.modulus << " { ";
            for (std::size_t i = 0; i < b.images.size(); ++i) {
              if (i) os << ", ";
              os << b.images[i].first << " -> " << b.images[i].second;
            }
            os << " }";
          } else if constexpr (std::is_same_v<T, KernelSub>) {
            os << "sub " << b.id << " = kernel " << b.hom;
          } else if constexpr (std::is_same_v<T, GeneratedSub>) {
            std::string x = "x", h = "h";
            if (auto it = groups.find(b.group); it != groups.end()) {
              x = it->second.generators[0];
              h = it->second.generators[1];
            }
            os << "sub " << b.id << " = < ";
            for (std::size_t i = 0; i < b.words.size(); ++i) {
              if (i) os << ", ";
              os << b.words[i].str(x, h);
            }
            os << (b.words.empty() ? ">" : " >");
          } else if constexpr (std::is_same_v<T, DiamondDecl>) {
            os << "diamond " << b.id << " = " << b.left << " ^ " << b.right;
          } else if constexpr (std::is_same_v<T, Analyze>) {
            os << "analyze " << b.sub;
          } else if constexpr (std::is_same_v<T, BuildSurface>) {
            os << "surface build-tetrus";
          } else {
            os << "verify theorem1";
          }
        },
        st.body);
    os << '\n';
  }
  return os.str();
}

}  // namespace tetrus::cli
