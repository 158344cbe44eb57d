#include "gottcalc/space_expr.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <climits>
#include <ostream>
#include <sstream>

#include "gottcalc/error.hpp"

namespace gottcalc {

struct SpaceExpr::Node {
  SpaceKind kind;
  std::string name;
  int count = 0;
  int circles = 0;
  // Wedge/Product: summands. Susp: {inner}. Map: {source, target}. Loop/BouquetSpace: {target}.
  std::vector<SpaceExpr> children;
};

namespace {

void require_positive(int n, const char* what) {
  if (n < 1) throw DomainError(std::string(what) + " must be at least 1, got " + std::to_string(n));
}

constexpr std::array<std::string_view, 6> kKeywords = {"wedge", "prod", "susp", "map", "loop", "bloop"};

bool is_numbered_form(std::string_view s) {
  if (s.size() < 2 || (s[0] != 'S' && s[0] != 'T' && s[0] != 'B')) return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

}  // namespace

SpaceExpr SpaceExpr::atom(std::string name) {
  if (!is_identifier(name)) throw DomainError("'" + name + "' is not a valid identifier");
  if (is_reserved_name(name)) throw DomainError("'" + name + "' is reserved and cannot name an atom");
  return SpaceExpr(std::make_shared<const Node>(Node{SpaceKind::Atom, std::move(name), 0, 0, {}}));
}

SpaceExpr SpaceExpr::sphere(int dim) {
  require_positive(dim, "sphere dimension");
  return SpaceExpr(std::make_shared<const Node>(Node{SpaceKind::Sphere, {}, dim, 0, {}}));
}

SpaceExpr SpaceExpr::point() {
  static const SpaceExpr pt(std::make_shared<const Node>(Node{SpaceKind::Point, {}, 0, 0, {}}));
  return pt;
}

SpaceExpr SpaceExpr::wedge(std::vector<SpaceExpr> parts) {
  if (parts.empty()) throw DomainError("wedge needs at least one summand");
  return SpaceExpr(std::make_shared<const Node>(Node{SpaceKind::Wedge, {}, 0, 0, std::move(parts)}));
}

SpaceExpr SpaceExpr::product(std::vector<SpaceExpr> factors) {
  if (factors.empty()) throw DomainError("product needs at least one factor");
  return SpaceExpr(std::make_shared<const Node>(Node{SpaceKind::Product, {}, 0, 0, std::move(factors)}));
}

SpaceExpr SpaceExpr::susp(SpaceExpr inner, int count) {
  require_positive(count, "suspension count");
  return SpaceExpr(std::make_shared<const Node>(Node{SpaceKind::Susp, {}, count, 0, {std::move(inner)}}));
}

SpaceExpr SpaceExpr::map(SpaceExpr source, SpaceExpr target) {
  return SpaceExpr(
      std::make_shared<const Node>(Node{SpaceKind::Map, {}, 0, 0, {std::move(source), std::move(target)}}));
}

SpaceExpr SpaceExpr::torus(int n) {
  require_positive(n, "torus rank");
  return SpaceExpr(std::make_shared<const Node>(Node{SpaceKind::Torus, {}, n, 0, {}}));
}

SpaceExpr SpaceExpr::bouquet(int circles) {
  require_positive(circles, "bouquet circle count");
  return SpaceExpr(std::make_shared<const Node>(Node{SpaceKind::Bouquet, {}, circles, 0, {}}));
}

SpaceExpr SpaceExpr::loop(SpaceExpr target, int iterations) {
  require_positive(iterations, "loop iteration count");
  return SpaceExpr(std::make_shared<const Node>(Node{SpaceKind::Loop, {}, iterations, 0, {std::move(target)}}));
}

SpaceExpr SpaceExpr::bouquet_space(SpaceExpr target, int circles, int iterations) {
  require_positive(circles, "bouquet circle count");
  require_positive(iterations, "bouquet iteration count");
  return SpaceExpr(std::make_shared<const Node>(
      Node{SpaceKind::BouquetSpace, {}, iterations, circles, {std::move(target)}}));
}

SpaceKind SpaceExpr::kind() const noexcept { return node_->kind; }

bool SpaceExpr::is_sugar() const noexcept {
  switch (kind()) {
    case SpaceKind::Torus:
    case SpaceKind::Bouquet:
    case SpaceKind::Loop:
    case SpaceKind::BouquetSpace:
      return true;
    default:
      return false;
  }
}

const std::string& SpaceExpr::name() const {
  if (kind() != SpaceKind::Atom) throw std::logic_error("name() on a non-atom");
  return node_->name;
}

int SpaceExpr::count() const { return node_->count; }
int SpaceExpr::circles() const { return node_->circles; }

std::span<const SpaceExpr> SpaceExpr::children() const {
  if (kind() != SpaceKind::Wedge && kind() != SpaceKind::Product) throw std::logic_error("children() on a non-list node");
  return node_->children;
}

const SpaceExpr& SpaceExpr::inner() const {
  if (kind() != SpaceKind::Susp) throw std::logic_error("inner() on a non-suspension");
  return node_->children[0];
}

const SpaceExpr& SpaceExpr::source() const {
  if (kind() != SpaceKind::Map) throw std::logic_error("source() on a non-map");
  return node_->children[0];
}

const SpaceExpr& SpaceExpr::target() const {
  switch (kind()) {
    case SpaceKind::Map:
      return node_->children[1];
    case SpaceKind::Loop:
    case SpaceKind::BouquetSpace:
      return node_->children[0];
    default:
      throw std::logic_error("target() on a node without a target");
  }
}

bool operator==(const SpaceExpr& a, const SpaceExpr& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.name == y.name && x.count == y.count && x.circles == y.circles &&
         x.children == y.children;
}

bool is_identifier(std::string_view s) noexcept {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin() + 1, s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

bool is_reserved_name(std::string_view s) noexcept {
  if (s == "pt" || is_numbered_form(s)) return true;
  return std::find(kKeywords.begin(), kKeywords.end(), s) != kKeywords.end();
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  SpaceExpr parse_all() {
    SpaceExpr e = parse_space();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input after expression", {"end of input"});
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what, std::vector<std::string> expected) const {
    fail_at(pos_, what, std::move(expected));
  }

  [[noreturn]] static void fail_at(std::size_t at, const std::string& what, std::vector<std::string> expected) {
    std::string msg = "parse error at offset " + std::to_string(at) + ": " + what;
    if (!expected.empty()) {
      msg += " (expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i > 0) msg += i + 1 == expected.size() ? " or " : ", ";
        msg += expected[i];
      }
      msg += ")";
    }
    throw ParseError(msg, at, std::move(expected));
  }

  static std::vector<std::string> space_starts() {
    return {"identifier", "S<n>", "pt", "T<n>", "B<n>", "wedge(", "prod(", "susp(", "map(", "loop(", "bloop("};
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(pos_ == text_.size() ? "unexpected end of input" : "unexpected character",
                       {std::string("'") + c + "'"});
    ++pos_;
  }

  static int to_nat(std::string_view digits, std::size_t at) {
    long long value = 0;
    for (char c : digits) {
      value = value * 10 + (c - '0');
      if (value > INT_MAX) fail_at(at, "number out of range", {"natural number <= " + std::to_string(INT_MAX)});
    }
    if (value < 1) fail_at(at, "natural numbers start at 1", {"natural number >= 1"});
    return static_cast<int>(value);
  }

  int parse_nat() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a natural number", {"natural number"});
    return to_nat(text_.substr(start, pos_ - start), start);
  }

  std::vector<SpaceExpr> parse_list() {
    std::vector<SpaceExpr> items;
    items.push_back(parse_space());
    while (peek(',')) {
      ++pos_;
      items.push_back(parse_space());
    }
    expect(')');
    return items;
  }

  SpaceExpr parse_space() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ == text_.size() || !std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      fail(pos_ == text_.size() ? "unexpected end of input" : "unexpected character", space_starts());
    }
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    std::string_view word = text_.substr(start, pos_ - start);

    if (word == "pt") return SpaceExpr::point();
    if (is_numbered_form(word)) {
      int n = to_nat(word.substr(1), start + 1);
      switch (word[0]) {
        case 'S':
          return SpaceExpr::sphere(n);
        case 'T':
          return SpaceExpr::torus(n);
        default:
          return SpaceExpr::bouquet(n);
      }
    }
    if (std::find(kKeywords.begin(), kKeywords.end(), word) == kKeywords.end()) {
      return SpaceExpr::atom(std::string(word));
    }

    if (!peek('(')) fail("reserved name '" + std::string(word) + "' must be followed by an argument list", {"'('"});
    ++pos_;
    if (word == "wedge") return SpaceExpr::wedge(parse_list());
    if (word == "prod") return SpaceExpr::product(parse_list());

    SpaceExpr first = parse_space();
    if (word == "map") {
      expect(',');
      SpaceExpr second = parse_space();
      expect(')');
      return SpaceExpr::map(std::move(first), std::move(second));
    }
    if (word == "susp" || word == "loop") {
      int k = 1;
      if (peek(',')) {
        ++pos_;
        k = parse_nat();
      } else if (!peek(')')) {
        fail("unexpected input", {"','", "')'"});
      }
      expect(')');
      return word == "susp" ? SpaceExpr::susp(std::move(first), k) : SpaceExpr::loop(std::move(first), k);
    }
    // bloop(Y, m[, N])
    expect(',');
    int m = parse_nat();
    int n = 1;
    if (peek(',')) {
      ++pos_;
      n = parse_nat();
    } else if (!peek(')')) {
      fail("unexpected input", {"','", "')'"});
    }
    expect(')');
    return SpaceExpr::bouquet_space(std::move(first), m, n);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void print(std::ostream& os, const SpaceExpr& e) {
  auto list = [&](const char* head) {
    os << head << '(';
    bool first = true;
    for (const auto& c : e.children()) {
      if (!first) os << ", ";
      first = false;
      print(os, c);
    }
    os << ')';
  };
  switch (e.kind()) {
    case SpaceKind::Atom:
      os << e.name();
      break;
    case SpaceKind::Sphere:
      os << 'S' << e.count();
      break;
    case SpaceKind::Point:
      os << "pt";
      break;
    case SpaceKind::Wedge:
      list("wedge");
      break;
    case SpaceKind::Product:
      list("prod");
      break;
    case SpaceKind::Susp:
      os << "susp(";
      print(os, e.inner());
      if (e.count() != 1) os << ", " << e.count();
      os << ')';
      break;
    case SpaceKind::Map:
      os << "map(";
      print(os, e.source());
      os << ", ";
      print(os, e.target());
      os << ')';
      break;
    case SpaceKind::Torus:
      os << 'T' << e.count();
      break;
    case SpaceKind::Bouquet:
      os << 'B' << e.count();
      break;
    case SpaceKind::Loop:
      os << "loop(";
      print(os, e.target());
      if (e.count() != 1) os << ", " << e.count();
      os << ')';
      break;
    case SpaceKind::BouquetSpace:
      os << "bloop(";
      print(os, e.target());
      os << ", " << e.circles();
      if (e.count() != 1) os << ", " << e.count();
      os << ')';
      break;
  }
}

std::vector<SpaceExpr> circles(int m) { return std::vector<SpaceExpr>(static_cast<std::size_t>(m), SpaceExpr::sphere(1)); }

}  // namespace

SpaceExpr parse(std::string_view text) { return Parser(text).parse_all(); }

std::string to_string(const SpaceExpr& e) {
  std::ostringstream os;
  print(os, e);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const SpaceExpr& e) {
  print(os, e);
  return os;
}

SpaceExpr desugar(const SpaceExpr& e) {
  auto map_children = [](std::span<const SpaceExpr> xs) {
    std::vector<SpaceExpr> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back(desugar(x));
    return out;
  };
  switch (e.kind()) {
    case SpaceKind::Atom:
    case SpaceKind::Sphere:
    case SpaceKind::Point:
      return e;
    case SpaceKind::Wedge:
      return SpaceExpr::wedge(map_children(e.children()));
    case SpaceKind::Product:
      return SpaceExpr::product(map_children(e.children()));
    case SpaceKind::Susp: {
      SpaceExpr inner = desugar(e.inner());
      if (inner.is(SpaceKind::Susp)) {
        if (inner.count() > INT_MAX - e.count()) throw DomainError("suspension count overflow");
        return SpaceExpr::susp(inner.inner(), inner.count() + e.count());
      }
      return SpaceExpr::susp(std::move(inner), e.count());
    }
    case SpaceKind::Map:
      return SpaceExpr::map(desugar(e.source()), desugar(e.target()));
    case SpaceKind::Torus:
      return SpaceExpr::product(circles(e.count()));
    case SpaceKind::Bouquet:
      return SpaceExpr::wedge(circles(e.count()));
    case SpaceKind::Loop: {
      SpaceExpr out = desugar(e.target());
      SpaceExpr circle = SpaceExpr::sphere(1);
      for (int i = 0; i < e.count(); ++i) out = SpaceExpr::map(circle, std::move(out));
      return out;
    }
    case SpaceKind::BouquetSpace: {
      SpaceExpr out = desugar(e.target());
      SpaceExpr bouquet = SpaceExpr::wedge(circles(e.circles()));
      for (int i = 0; i < e.count(); ++i) out = SpaceExpr::map(bouquet, std::move(out));
      return out;
    }
  }
  return e;
}

}  // namespace gottcalc
